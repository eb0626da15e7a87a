#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fibrep/errors.hpp"
#include "fibrep/linalg.hpp"

namespace fibrep {

struct EigenDecomposition {
    std::vector<double> values; // ascending
    FloatMat vectors;           // columns, same order as values
};

namespace detail {

inline double off_diagonal_norm(const FloatMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline double frobenius_norm(const FloatMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation annihilates one off-diagonal pair (p,q). For a complex
/// Hermitian pivot a_pq = |a_pq| e^{i phi}, the phase is absorbed into the
/// rotation so the 2x2 block reduces to the real symmetric case, then the
/// classic angle choice tan(2 theta) = 2|a_pq| / (a_pp - a_qq) applies.
/// Sweeps run in fixed (p,q) order until the off-diagonal norm drops below
/// 1e-13 relative to the Frobenius norm, so the result is deterministic.
///
/// Throws NonHermitian when the asymmetry max|a_ij - conj(a_ji)| exceeds
/// 1e-9; smaller asymmetry is symmetrized away before solving.
inline EigenDecomposition hermitian_eigs_full(FloatMat a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimMismatch("hermitian_eigs: matrix not square");

    double max_abs = 0.0;
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            max_abs = std::max(max_abs, std::abs(a(i, j)));
            asym = std::max(asym, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    if (asym > 1e-9 * std::max(1.0, max_abs))
        throw NonHermitian("hermitian_eigs: asymmetry " + std::to_string(asym));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Cplx sym = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = sym;
            a(j, i) = std::conj(sym);
        }
        a(i, i) = Cplx(a(i, i).real(), 0.0);
    }

    FloatMat v = FloatMat::identity(n);
    const double scale = std::max(1.0, detail::frobenius_norm(a));
    const double target = 1e-13 * scale;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const Cplx phase = a(p, q) / apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                // Real Jacobi angle on the phase-stripped block.
                const double tau = (aqq - app) / (2.0 * apq);
                double t;
                if (tau >= 0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // R differs from I only in the (p,q) block:
                //   R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase), R(q,q)=c.
                // Apply A <- R^H A R and accumulate V <- V R.
                for (std::size_t k = 0; k < n; ++k) {
                    Cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c - akq * s * std::conj(phase);
                    a(k, q) = akp * s * phase + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = apk * c - aqk * s * phase;
                    a(q, k) = apk * s * std::conj(phase) + aqk * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c - vkq * s * std::conj(phase);
                    v(k, q) = vkp * s * phase + vkq * c;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = Cplx(a(p, p).real(), 0.0);
                a(q, q) = Cplx(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = FloatMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_eigs(const FloatMat& a) {
    return hermitian_eigs_full(a).values;
}

} // namespace fibrep
