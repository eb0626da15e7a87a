#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fibrep/fibrep.hpp"

using namespace fibrep;

TEST_CASE("eigenvalues of trivial matrices") {
    auto e1 = hermitian_eigs(to_float(ExactMat::identity(4)));
    REQUIRE(e1.size() == 4);
    for (double v : e1) REQUIRE(v == Catch::Approx(1.0).margin(1e-12));

    FloatMat d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 5.0;
    auto e2 = hermitian_eigs(d);
    REQUIRE(e2[0] == Catch::Approx(2.0).margin(1e-12));
    REQUIRE(e2[1] == Catch::Approx(5.0).margin(1e-12));
}

TEST_CASE("tridiagonal Gram of the pair family has the Toeplitz spectrum") {
    // {e_n + e_{n+1}} for n = 1..4 in R^5: Gram is tridiagonal with diagonal 2
    // and off-diagonal 1; the smallest eigenvalue is 2 - 2 cos(pi/5).
    SequenceWindow onb = canonical("onb", 5, 5);
    onb.tail = TailPolicy::UnknownTail;
    SequenceWindow m = derive(onb, DerivedSpec{Scalar(1), Scalar(1), +1});
    REQUIRE(m.size() == 4);
    FloatMat g = gram_matrix(m);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double expect = i == j ? 2.0 : (i + 1 == j || j + 1 == i ? 1.0 : 0.0);
            REQUIRE(g(i, j).real() == Catch::Approx(expect).margin(1e-12));
        }
    auto eigs = hermitian_eigs(g);
    REQUIRE(eigs.front() == Catch::Approx(2.0 - 2.0 * std::cos(M_PI / 5.0)).margin(1e-9));
}

TEST_CASE("operator norm") {
    REQUIRE(operator_norm(to_float(ExactMat::identity(3))) == Catch::Approx(1.0).margin(1e-12));

    FloatMat d(2, 2);
    d(0, 0) = -7.0;
    d(1, 1) = 3.0;
    REQUIRE(operator_norm(d) == Catch::Approx(7.0).margin(1e-9));

    FloatMat n(2, 2);
    n(0, 1) = 1.0; // nilpotent shift: t*t = diag(0,1)
    REQUIRE(operator_norm(n) == Catch::Approx(1.0).margin(1e-12));

    REQUIRE(operator_norm(FloatMat(0, 0)) == 0.0);
}

TEST_CASE("trace and eigenvector residuals on random Hermitian matrices") {
    std::mt19937_64 rng(2024);
    auto unit = [&] { return (static_cast<double>(rng() % 2000) - 1000.0) / 500.0; };
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng() % 15;
        FloatMat a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, i) = unit();
            for (std::size_t j = i + 1; j < n; ++j) {
                Cplx z(unit(), unit());
                a(i, j) = z;
                a(j, i) = std::conj(z);
            }
        }
        auto dec = hermitian_eigs_full(a);
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += a(i, i).real();
        for (double v : dec.values) sum += v;
        REQUIRE(sum == Catch::Approx(trace).margin(1e-9));
        for (std::size_t j = 0; j < n; ++j) {
            FloatVec v = dec.vectors.col(j);
            FloatVec av = mat_vec(a, v);
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i) resid += std::norm(av[i] - dec.values[j] * v[i]);
            REQUIRE(std::sqrt(resid) <= 1e-9);
        }
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    FloatMat a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 0.5;
    REQUIRE_THROWS_AS(hermitian_eigs(a), NonHermitian);
    FloatMat r(2, 3);
    REQUIRE_THROWS_AS(hermitian_eigs(r), DimMismatch);
}

TEST_CASE("frame bounds of canonical windows") {
    SpectralSummary onb = frame_bounds(canonical("onb", 4, 4));
    REQUIRE(onb.lambda_min == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(onb.lambda_max == Catch::Approx(1.0).margin(1e-12));

    // {e1, e1, e2} in R^2: frame operator diag(2, 1).
    SequenceWindow w;
    w.dim = 2;
    w.vectors = {basis_vec(2, 0), basis_vec(2, 0), basis_vec(2, 1)};
    SpectralSummary b = frame_bounds(w);
    REQUIRE(b.lambda_min == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(b.lambda_max == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(b.lambda_min == Catch::Approx(b.sigma_min * b.sigma_min).margin(1e-9));
}

TEST_CASE("bounds restrict to the span when the window is not complete") {
    // {e1, e1} in R^3 spans one line; the two zero eigenvalues of FF* belong
    // to the complement and must be excluded.
    SequenceWindow w;
    w.dim = 3;
    w.vectors = {basis_vec(3, 0), basis_vec(3, 0)};
    SpectralSummary b = frame_bounds(w);
    REQUIRE(b.lambda_min == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(b.lambda_max == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("frame_bounds rejects empty windows") {
    SequenceWindow w;
    w.dim = 2;
    REQUIRE_THROWS_AS(frame_bounds(w), EmptyWindow);
}
