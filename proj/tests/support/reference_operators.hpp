#pragma once

// Hand-written closed-form operators for the named window families, used as
// independent cross-checks of the constraint-based construction. Each builds
// the explicit per-basis-vector images of T and assembles the operator via
// operator_from_images, so nothing here shares code with construct().
//
// Edge rule: a window only carries span{f_1..f_N}; any e_i term of a formula
// with i beyond the span's largest basis index refers to a vector the
// zero-tail window sets to zero, so it is dropped. verify() never touches
// those edge columns beyond what the recursion itself needs.

#include "fibrep/fibrep.hpp"

namespace refops {

using namespace fibrep;

namespace detail {

// e_i (1-based) in dimension d, or zero when i is past span_max.
inline ExactVec e_or_zero(std::size_t d, std::size_t i, std::size_t span_max) {
    ExactVec v(d);
    if (i >= 1 && i <= span_max) v[i - 1] = Scalar(1);
    return v;
}

} // namespace detail

/// Window e1, e1, e2, ..., e_{N-1}; span max N-1.
///   T e1 = e2 / 2
///   T e_n = sum_{i=0}^{n-2} (-1)^i e_{n-i+1} + (-1)^{n+1} e2 / 2   (n >= 2)
inline FibOperator ex_e1e1_operator(const SequenceWindow& w) {
    const std::size_t nn = w.size(), d = w.dim, smax = nn - 1;
    auto e = [&](std::size_t i) { return detail::e_or_zero(d, i, smax); };
    auto te = [&](std::size_t n) {
        if (n == 1) return vec_scale(Scalar(1, 2), e(2));
        ExactVec v(d);
        for (std::size_t i = 0; i + 2 <= n; ++i) {
            Scalar sgn = i % 2 == 0 ? Scalar(1) : Scalar(-1);
            v = vec_add(v, vec_scale(sgn, e(n - i + 1)));
        }
        Scalar tail = n % 2 == 0 ? Scalar(-1, 2) : Scalar(1, 2);
        return vec_add(v, vec_scale(tail, e(2)));
    };
    std::vector<ExactVec> images;
    images.push_back(te(1)); // f1 = e1
    for (std::size_t k = 2; k <= nn; ++k) images.push_back(te(k - 1));
    return operator_from_images(w, images);
}

/// Window e1, e2, e3, e1, e4, ..., e_{N-1}; span max N-1.
///   T e1 = (e4 + e3 - e1)/2,  T e2 = (-e4 + e3 + e1)/2,
///   T e3 = (e4 - e3 + e1)/2,  T e4 = e5 - T e1,
///   T e_m = e_{m+1} - T e_{m-1}  (m >= 5).
inline FibOperator ex_e123e1_operator(const SequenceWindow& w) {
    const std::size_t nn = w.size(), d = w.dim, smax = nn - 1;
    auto e = [&](std::size_t i) { return detail::e_or_zero(d, i, smax); };
    Scalar half(1, 2);
    std::vector<ExactVec> te(smax + 1, ExactVec(d)); // te[m] = T e_m
    te[1] = vec_scale(half, vec_sub(vec_add(e(4), e(3)), e(1)));
    te[2] = vec_scale(half, vec_add(vec_sub(e(3), e(4)), e(1)));
    te[3] = vec_scale(half, vec_add(vec_sub(e(4), e(3)), e(1)));
    if (smax >= 4) te[4] = vec_sub(e(5), te[1]);
    for (std::size_t m = 5; m <= smax; ++m) te[m] = vec_sub(e(m + 1), te[m - 1]);
    std::vector<ExactVec> images;
    for (std::size_t k = 1; k <= nn; ++k) {
        std::size_t m = k <= 3 ? k : (k == 4 ? 1 : k - 1); // f_k = e_m
        images.push_back(te[m]);
    }
    return operator_from_images(w, images);
}

/// Orthonormal window e1..eN; span max N. First of the two explicit
/// operators:
///   T e1 = T e2 = e3/2,  T e3 = e4 - e3/2,
///   T e_n = (-1)^n e3/2 - sum_{i=4}^{n+1} (-1)^{n+i} e_i   (n >= 4).
inline FibOperator onb_t_operator(const SequenceWindow& w) {
    const std::size_t nn = w.size(), d = w.dim, smax = nn;
    auto e = [&](std::size_t i) { return detail::e_or_zero(d, i, smax); };
    Scalar half(1, 2);
    auto te = [&](std::size_t n) {
        if (n <= 2) return vec_scale(half, e(3));
        if (n == 3) return vec_sub(e(4), vec_scale(half, e(3)));
        Scalar lead = n % 2 == 0 ? half : -half;
        ExactVec v = vec_scale(lead, e(3));
        for (std::size_t i = 4; i <= n + 1; ++i) {
            Scalar sgn = (n + i) % 2 == 0 ? Scalar(-1) : Scalar(1);
            v = vec_add(v, vec_scale(sgn, e(i)));
        }
        return v;
    };
    std::vector<ExactVec> images;
    for (std::size_t k = 1; k <= nn; ++k) images.push_back(te(k));
    return operator_from_images(w, images);
}

/// Second explicit operator on the orthonormal window:
///   S e1 = 0,  S e2 = e3,  S e3 = e4 - e3,
///   S e_n = (-1)^n e3 - sum_{i=4}^{n+1} (-1)^{n+i} e_i   (n >= 4).
inline FibOperator onb_s_operator(const SequenceWindow& w) {
    const std::size_t nn = w.size(), d = w.dim, smax = nn;
    auto e = [&](std::size_t i) { return detail::e_or_zero(d, i, smax); };
    auto se = [&](std::size_t n) {
        if (n == 1) return ExactVec(d);
        if (n == 2) return e(3);
        if (n == 3) return vec_sub(e(4), e(3));
        Scalar lead = n % 2 == 0 ? Scalar(1) : Scalar(-1);
        ExactVec v = vec_scale(lead, e(3));
        for (std::size_t i = 4; i <= n + 1; ++i) {
            Scalar sgn = (n + i) % 2 == 0 ? Scalar(-1) : Scalar(1);
            v = vec_add(v, vec_scale(sgn, e(i)));
        }
        return v;
    };
    std::vector<ExactVec> images;
    for (std::size_t k = 1; k <= nn; ++k) images.push_back(se(k));
    return operator_from_images(w, images);
}

/// Window e1, e2, e3, e2, e2, e4, ..., e_{N-2}; span max N-2.
///   T e1 = e3 - e4/2,  T e2 = e4/2,  T e3 = e2 - e4/2,
///   T e_n = sum_{i=0}^{n-4} (-1)^i e_{n-i+1} + (-1)^{n-3} e4/2   (n >= 4).
inline FibOperator ex_e2e2_operator(const SequenceWindow& w) {
    const std::size_t nn = w.size(), d = w.dim, smax = nn - 2;
    auto e = [&](std::size_t i) { return detail::e_or_zero(d, i, smax); };
    Scalar half(1, 2);
    auto te = [&](std::size_t n) {
        if (n == 1) return vec_sub(e(3), vec_scale(half, e(4)));
        if (n == 2) return vec_scale(half, e(4));
        if (n == 3) return vec_sub(e(2), vec_scale(half, e(4)));
        ExactVec v(d);
        for (std::size_t i = 0; i + 4 <= n; ++i) {
            Scalar sgn = i % 2 == 0 ? Scalar(1) : Scalar(-1);
            v = vec_add(v, vec_scale(sgn, e(n - i + 1)));
        }
        Scalar tail = (n - 3) % 2 == 0 ? half : -half;
        return vec_add(v, vec_scale(tail, e(4)));
    };
    std::vector<ExactVec> images;
    for (std::size_t k = 1; k <= nn; ++k) {
        std::size_t m = k <= 3 ? k : (k <= 5 ? 2 : k - 2); // f_k = e_m
        images.push_back(te(m));
    }
    return operator_from_images(w, images);
}

} // namespace refops
