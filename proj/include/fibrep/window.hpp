#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fibrep/errors.hpp"
#include "fibrep/linalg.hpp"

namespace fibrep {

/// How a finite window stands in for an infinite sequence.
///
/// ZeroTail: f_n = 0 for every n > N. Infinite sums truncate exactly, so
/// identities quantifying over all n can be checked with equality.
/// UnknownTail: nothing is known past the window; operations may only touch
/// indices the window justifies (derived windows drop their last vector).
enum class TailPolicy { ZeroTail, UnknownTail };

inline std::string to_string(TailPolicy t) {
    return t == TailPolicy::ZeroTail ? "zero" : "unknown";
}

/// A finite prefix f_1..f_N of a sequence of vectors in dimension d.
struct SequenceWindow {
    std::size_t dim = 0;
    std::vector<ExactVec> vectors; // each of length dim
    TailPolicy tail = TailPolicy::ZeroTail;
    std::string label;

    std::size_t size() const { return vectors.size(); }

    /// d x N matrix with f_n as columns.
    ExactMat synthesis() const {
        ExactMat m(dim, vectors.size());
        for (std::size_t j = 0; j < vectors.size(); ++j) m.set_col(j, vectors[j]);
        return m;
    }
};

/// Parameters of the derived sequences {alpha f_n +/- beta f_{n+1}}.
struct DerivedSpec {
    Scalar alpha = Scalar(1);
    Scalar beta = Scalar(1);
    int sign = +1; // +1 or -1

    /// mu = max{|alpha|^2, |beta|^2}.
    Rational mu() const {
        Rational a = alpha.norm2(), b = beta.norm2();
        return a > b ? a : b;
    }
};

inline ExactVec basis_vec(std::size_t dim, std::size_t index) {
    ExactVec v(dim);
    v[index] = Scalar(1);
    return v;
}

/// The named window families used throughout: an orthonormal basis prefix
/// and the four explicit sequences built from one.
///   onb        e1, e2, e3, ...
///   ex_e1e1    e1, e1, e2, e3, ...
///   ex_e123e1  e1, e2, e3, e1, e4, e5, ...
///   ex_norep   e1, e2, e1, e3, e4, ...
///   ex_e2e2    e1, e2, e3, e2, e2, e4, e5, e6, ...
inline SequenceWindow canonical(const std::string& name, std::size_t n, std::size_t d) {
    if (n < 1) throw OutOfRange("canonical: N must be >= 1");
    auto need = [&](std::size_t min_d) {
        if (d < min_d)
            throw DimTooSmall("canonical: " + name + " with N=" + std::to_string(n) +
                              " needs dim >= " + std::to_string(min_d));
    };
    SequenceWindow w;
    w.dim = d;
    w.tail = TailPolicy::ZeroTail;
    w.label = name;
    auto e = [&](std::size_t i) { return basis_vec(d, i - 1); }; // 1-based
    if (name == "onb") {
        need(n);
        for (std::size_t i = 1; i <= n; ++i) w.vectors.push_back(e(i));
    } else if (name == "ex_e1e1") {
        need(n >= 2 ? n - 1 : 1);
        w.vectors.push_back(e(1));
        for (std::size_t i = 2; i <= n; ++i) w.vectors.push_back(e(i - 1));
    } else if (name == "ex_e123e1") {
        need(std::max<std::size_t>(std::min<std::size_t>(n, 3), n >= 5 ? n - 1 : 1));
        for (std::size_t i = 1; i <= n; ++i) {
            if (i <= 3) w.vectors.push_back(e(i));
            else if (i == 4) w.vectors.push_back(e(1));
            else w.vectors.push_back(e(i - 1));
        }
    } else if (name == "ex_norep") {
        need(std::max<std::size_t>(std::min<std::size_t>(n, 2), n >= 4 ? n - 1 : 1));
        for (std::size_t i = 1; i <= n; ++i) {
            if (i == 1) w.vectors.push_back(e(1));
            else if (i == 2) w.vectors.push_back(e(2));
            else if (i == 3) w.vectors.push_back(e(1));
            else w.vectors.push_back(e(i - 1));
        }
    } else if (name == "ex_e2e2") {
        need(std::max<std::size_t>(std::min<std::size_t>(n, 3), n >= 6 ? n - 2 : 1));
        for (std::size_t i = 1; i <= n; ++i) {
            if (i <= 3) w.vectors.push_back(e(i));
            else if (i == 4 || i == 5) w.vectors.push_back(e(2));
            else w.vectors.push_back(e(i - 2));
        }
    } else {
        throw UnknownName("canonical: unknown window name '" + name + "'");
    }
    return w;
}

/// The derived window {alpha f_n + sign * beta f_{n+1}}. A ZeroTail input
/// keeps all N positions (f_{N+1} = 0); an UnknownTail input yields N-1
/// vectors, since the last sum is not justified by the window.
inline SequenceWindow derive(const SequenceWindow& w, const DerivedSpec& spec) {
    if (w.vectors.empty()) throw EmptyWindow("derive: empty window");
    SequenceWindow out;
    out.dim = w.dim;
    out.tail = w.tail;
    Scalar sb = spec.sign >= 0 ? spec.beta : -spec.beta;
    std::size_t count = w.tail == TailPolicy::ZeroTail ? w.size() : w.size() - 1;
    for (std::size_t i = 0; i < count; ++i) {
        ExactVec next = i + 1 < w.size() ? w.vectors[i + 1] : ExactVec(w.dim);
        out.vectors.push_back(vec_add(vec_scale(spec.alpha, w.vectors[i]), vec_scale(sb, next)));
    }
    out.label = w.label + (spec.sign >= 0 ? " +derived" : " -derived");
    return out;
}

/// Window {f_{k+1}, ..., f_N}; tail policy preserved.
inline SequenceWindow shift(const SequenceWindow& w, std::size_t k) {
    if (k >= w.size()) throw OutOfRange("shift: k out of range");
    SequenceWindow out;
    out.dim = w.dim;
    out.tail = w.tail;
    out.label = w.label + " shift" + std::to_string(k);
    out.vectors.assign(w.vectors.begin() + static_cast<std::ptrdiff_t>(k), w.vectors.end());
    return out;
}

/// Applies an exact matrix to every vector of the window ({K f_n}).
inline SequenceWindow map_window(const SequenceWindow& w, const ExactMat& k) {
    if (k.cols() != w.dim) throw DimMismatch("map_window: matrix/window dims");
    SequenceWindow out;
    out.dim = k.rows();
    out.tail = w.tail;
    out.label = w.label + " mapped";
    for (const auto& v : w.vectors) out.vectors.push_back(mat_vec(k, v));
    return out;
}

enum class WindowKind { Independent, Dependent };

namespace detail {

// Engine calls go through these helpers so generated windows are identical
// across platforms (no std::uniform_int_distribution).
inline std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Scalar rand_scalar(std::mt19937_64& rng) {
    std::int64_t num = rand_range(rng, -9, 9);
    std::int64_t den = rand_range(rng, 1, 3);
    return Scalar(Rational(num, den));
}

inline ExactVec rand_vec(std::mt19937_64& rng, std::size_t d) {
    ExactVec v(d);
    for (auto& x : v) x = rand_scalar(rng);
    return v;
}

} // namespace detail

/// Seeded random rational window. Independent kind resamples until the
/// exact rank equals N (requires N <= d); dependent kind plants at least one
/// exact linear relation.
inline SequenceWindow random_window(std::size_t n, std::size_t d, std::uint64_t seed,
                                    WindowKind kind) {
    if (n < 1 || d < 1) throw OutOfRange("random_window: N, d must be >= 1");
    if (kind == WindowKind::Independent && n > d)
        throw OutOfRange("random_window: independent kind requires N <= d");
    std::mt19937_64 rng(seed);
    SequenceWindow w;
    w.dim = d;
    w.tail = TailPolicy::ZeroTail;
    if (kind == WindowKind::Independent) {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            w.vectors.clear();
            for (std::size_t i = 0; i < n; ++i) w.vectors.push_back(detail::rand_vec(rng, d));
            if (rank(w.synthesis()) == n) break;
        }
        w.label = "random independent seed=" + std::to_string(seed);
    } else {
        // N-1 free vectors plus one planted rational combination of them,
        // inserted at a random position.
        std::vector<ExactVec> base;
        for (std::size_t i = 0; i + 1 < n; ++i) base.push_back(detail::rand_vec(rng, d));
        ExactVec planted(d);
        for (const auto& b : base) {
            Scalar c(Rational(detail::rand_range(rng, -3, 3), 1));
            planted = vec_add(planted, vec_scale(c, b));
        }
        std::size_t pos = n == 1 ? 0 : static_cast<std::size_t>(detail::rand_range(rng, 0, static_cast<std::int64_t>(n - 1)));
        w.vectors = base;
        w.vectors.insert(w.vectors.begin() + static_cast<std::ptrdiff_t>(pos), planted);
        w.label = "random dependent seed=" + std::to_string(seed);
    }
    return w;
}

} // namespace fibrep
