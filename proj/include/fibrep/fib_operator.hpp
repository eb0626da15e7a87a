#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibrep/errors.hpp"
#include "fibrep/frames.hpp"
#include "fibrep/linalg.hpp"
#include "fibrep/spectral.hpp"
#include "fibrep/window.hpp"

namespace fibrep {

enum class Method { Constraint, Alternating, HalfF3, Transported };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::Constraint: return "constraint";
        case Method::Alternating: return "alternating";
        case Method::HalfF3: return "half-f3";
        case Method::Transported: return "transported";
    }
    return "?";
}

/// A pair-recursion operator for a window: T maps span{f_n} into itself with
/// f_{n+2} = T(f_n + f_{n+1}) for every in-window constraint. The matrix acts
/// on coordinates over the recorded span basis (RREF-pivot columns of the
/// synthesis matrix), and tf1 records the extension choice T f_1.
struct FibOperator {
    std::vector<std::size_t> span_basis; // pivot column indices into the window
    ExactMat mat;                        // r x r, r = rank of the window
    Method method = Method::Constraint;
    ExactVec tf1;                        // ambient vector T f_1
};

/// How the freedom left by the constraints is resolved.
struct ExtensionPolicy {
    enum class Kind { Zero, HalfF3, Pinned };
    Kind kind = Kind::Zero;
    ExactVec pin; // target T f_1 for Pinned

    static ExtensionPolicy zero() { return {Kind::Zero, {}}; }
    static ExtensionPolicy half_f3() { return {Kind::HalfF3, {}}; }
    static ExtensionPolicy pinned(ExactVec g) { return {Kind::Pinned, std::move(g)}; }
};

inline ExactMat span_basis_matrix(const SequenceWindow& w, const std::vector<std::size_t>& basis) {
    ExactMat b(w.dim, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (basis[j] >= w.size()) throw BasisMismatch("span basis index out of range");
        b.set_col(j, w.vectors[basis[j]]);
    }
    return b;
}

namespace detail {

inline ExactVec coords_of(const ExactMat& basis, const ExactVec& v, const char* who) {
    auto c = solve(basis, v);
    if (!c) throw BasisMismatch(std::string(who) + ": vector outside span basis");
    return *c;
}

// Coordinates of every window vector over the basis, as columns.
inline ExactMat coords_matrix(const SequenceWindow& w, const ExactMat& basis, const char* who) {
    ExactMat u(basis.cols(), w.size());
    for (std::size_t n = 0; n < w.size(); ++n) u.set_col(n, coords_of(basis, w.vectors[n], who));
    return u;
}

inline ExactMat outer(const ExactVec& a, const ExactVec& b) {
    ExactMat m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

} // namespace detail

/// T applied to an ambient vector of span{f_n}.
inline ExactVec apply_op(const SequenceWindow& w, const FibOperator& t, const ExactVec& v) {
    ExactMat b = span_basis_matrix(w, t.span_basis);
    return mat_vec(b, mat_vec(t.mat, detail::coords_of(b, v, "apply_op")));
}

/// Exact check of the defining recursion f_n = T(f_{n-2} + f_{n-1}), n = 3..N.
inline CheckResult verify(const SequenceWindow& w, const FibOperator& t) {
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "verify");
    for (std::size_t n = 3; n <= w.size(); ++n) {
        ExactVec lhs = mat_vec(t.mat, vec_add(u.col(n - 3), u.col(n - 2)));
        ExactVec resid = vec_sub(lhs, u.col(n - 1));
        if (!is_zero_vec(resid))
            return CheckResult::fail(
                Witness{n, {}, mat_vec(b, resid), "recursion fails at this index"}, true);
    }
    return CheckResult::pass_exact("recursion holds at every index");
}

/// Result of construct: either an operator or a canonical non-existence
/// certificate (coefficients c with sum c_n (f_n + f_{n+1}) = 0 but
/// sum c_n f_{n+2} != 0, leading coefficient normalized to 1).
struct ConstructOutcome {
    std::optional<FibOperator> op;
    std::optional<Witness> inconsistent;
    bool ok() const { return op.has_value(); }
};

namespace detail {

// Adjusts a base solution so T f_1 equals g, when the constraints leave that
// freedom: T += h * phi^T with phi vanishing on every constraint vector and
// phi(u_1) = 1, h = g - T0 f_1 in coordinates. Returns false on conflict.
inline bool pin_tf1(const ExactMat& u, std::size_t n_constraints, const ExactVec& g_coords,
                    ExactMat& a) {
    ExactVec h = vec_sub(g_coords, mat_vec(a, u.col(0)));
    if (is_zero_vec(h)) return true;
    std::size_t r = u.rows();
    ExactMat sys(n_constraints + 1, r);
    for (std::size_t n = 0; n < n_constraints; ++n) {
        ExactVec wn = vec_add(u.col(n), u.col(n + 1));
        for (std::size_t j = 0; j < r; ++j) sys(n, j) = wn[j];
    }
    for (std::size_t j = 0; j < r; ++j) sys(n_constraints, j) = u(j, 0);
    ExactVec rhs(n_constraints + 1);
    rhs[n_constraints] = Scalar(1);
    auto phi = solve(sys, rhs);
    if (!phi) return false;
    a = a + outer(h, *phi);
    return true;
}

} // namespace detail

/// Solves the constraints T(f_n + f_{n+1}) = f_{n+2}, n = 1..N-2, over the
/// span basis. The canonical solution acts as zero on the RREF-canonical
/// complement of the constraint vectors; the policy then resolves T f_1.
/// Unsolvable constraints yield a certificate instead of an operator.
inline ConstructOutcome construct(const SequenceWindow& w,
                                  const ExtensionPolicy& policy = ExtensionPolicy::zero()) {
    if (w.size() < 3) throw WindowTooShort("construct: needs N >= 3");
    RrefResult rr = rref(w.synthesis());
    ExactMat b = span_basis_matrix(w, rr.pivots);
    ExactMat u = detail::coords_matrix(w, b, "construct");
    const std::size_t r = rr.pivots.size();
    const std::size_t nc = w.size() - 2;

    ExactMat cons(r, nc), targets(r, nc);
    for (std::size_t n = 0; n < nc; ++n) {
        cons.set_col(n, vec_add(u.col(n), u.col(n + 1)));
        targets.set_col(n, u.col(n + 2));
    }
    auto at = solve_all(transpose(cons), transpose(targets));
    if (!at) {
        // Certificate: a constraint-space kernel vector whose image under the
        // targets is nonzero, leading coefficient scaled to 1.
        for (ExactVec c : kernel_basis(cons)) {
            if (is_zero_vec(mat_vec(targets, c))) continue;
            Scalar lead;
            for (const auto& x : c)
                if (!x.is_zero()) {
                    lead = x;
                    break;
                }
            for (auto& x : c) x /= lead;
            return {std::nullopt,
                    Witness{std::nullopt, std::move(c), {},
                            "sum c_n (f_n + f_{n+1}) = 0 but sum c_n f_{n+2} != 0"}};
        }
        throw Error("construct: inconsistent system without kernel witness");
    }
    ExactMat a = transpose(*at);

    ExactVec tf1;
    switch (policy.kind) {
        case ExtensionPolicy::Kind::Zero:
            break;
        case ExtensionPolicy::Kind::HalfF3: {
            ExactVec g = vec_scale(Scalar(1, 2), w.vectors[2]);
            // When the constraints already pin T f_1 to something else, keep
            // the base solution; the half-f3 target is only a preference.
            detail::pin_tf1(u, nc, detail::coords_of(b, g, "construct"), a);
            break;
        }
        case ExtensionPolicy::Kind::Pinned: {
            auto gc = solve(b, policy.pin);
            if (!gc) throw PinConflict("construct: pin target outside span{f_n}");
            if (!detail::pin_tf1(u, nc, *gc, a))
                throw PinConflict("construct: constraints force a different T f_1");
            break;
        }
    }
    tf1 = mat_vec(b, mat_vec(a, u.col(0)));

    FibOperator op{rr.pivots, std::move(a), Method::Constraint, std::move(tf1)};
    if (policy.kind == ExtensionPolicy::Kind::HalfF3) op.method = Method::HalfF3;
    CheckResult v = verify(w, op);
    if (!v.passed) throw Error("construct: internal verification failed");
    return {std::move(op), std::nullopt};
}

/// The explicit operator T f_n = sum_{i=0}^{n} (-1)^i f_{n+1-i} available on
/// exactly independent windows. The edge column n = N references f_{N+1}:
/// under ZeroTail that vector is 0; under UnknownTail the column is left zero
/// (no vector is invented).
inline FibOperator construct_alternating(const SequenceWindow& w) {
    const std::size_t n = w.size();
    if (rank(w.synthesis()) != n)
        throw NotIndependent("construct_alternating: window not linearly independent");
    ExactMat a(n, n);
    for (std::size_t col = 1; col <= n; ++col) { // col = index n of f_n, 1-based
        std::size_t i0 = col + 1 <= n ? 0 : 1;   // skip the f_{N+1} term
        if (col == n && w.tail == TailPolicy::UnknownTail) continue;
        for (std::size_t i = i0; i <= col; ++i) {
            Scalar sgn = i % 2 == 0 ? Scalar(1) : Scalar(-1);
            a(col - i, col - 1) += sgn; // basis vector f_{col+1-i} has coord index col-i
        }
    }
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < n; ++j) basis[j] = j;
    ExactVec tf1 = n >= 2 ? vec_sub(w.vectors[1], w.vectors[0])
                          : vec_scale(Scalar(-1), w.vectors[0]);
    return FibOperator{std::move(basis), std::move(a), Method::Alternating, std::move(tf1)};
}

/// The range-minimal explicit operator on independent windows:
/// T f_1 = T f_2 = f_3 / 2 and, for n >= 3,
/// T f_n = sum_{i=0}^{n-3} (-1)^i f_{n+1-i} + ((-1)^n / 2) f_3.
/// Its range lies inside span{f_3..f_N}; that containment is checked exactly.
inline FibOperator construct_half_f3(const SequenceWindow& w) {
    const std::size_t n = w.size();
    if (n < 3) throw WindowTooShort("construct_half_f3: needs N >= 3");
    if (rank(w.synthesis()) != n)
        throw NotIndependent("construct_half_f3: window not linearly independent");
    ExactMat a(n, n);
    Scalar half(1, 2);
    a(2, 0) = half;
    a(2, 1) = half;
    for (std::size_t col = 3; col <= n; ++col) {
        std::size_t i0 = col + 1 <= n ? 0 : 1; // f_{N+1} = 0 at the edge
        for (std::size_t i = i0; i <= col - 3; ++i)
            a(col - i, col - 1) += i % 2 == 0 ? Scalar(1) : Scalar(-1);
        a(2, col - 1) += col % 2 == 0 ? half : -half;
    }
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < 2; ++row)
            if (!a(row, col).is_zero())
                throw Error("construct_half_f3: range left span{f_3..f_N}");
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < n; ++j) basis[j] = j;
    ExactVec tf1 = vec_scale(half, w.vectors[2]);
    return FibOperator{std::move(basis), std::move(a), Method::HalfF3, std::move(tf1)};
}

/// Builds the operator from explicit ambient images T f_n (one per window
/// vector). Throws if the images are inconsistent on the span or leave it.
inline FibOperator operator_from_images(const SequenceWindow& w,
                                        const std::vector<ExactVec>& images,
                                        Method method = Method::Constraint) {
    if (images.size() != w.size()) throw DimMismatch("operator_from_images: one image per vector");
    RrefResult rr = rref(w.synthesis());
    ExactMat b = span_basis_matrix(w, rr.pivots);
    ExactMat u = detail::coords_matrix(w, b, "operator_from_images");
    ExactMat v(rr.pivots.size(), w.size());
    for (std::size_t n = 0; n < w.size(); ++n)
        v.set_col(n, detail::coords_of(b, images[n], "operator_from_images"));
    auto at = solve_all(transpose(u), transpose(v));
    if (!at) throw Error("operator_from_images: images not well defined on span");
    return FibOperator{rr.pivots, transpose(*at), method, images[0]};
}

// ---------------------------------------------------------------------------
// Closed-form iterate: f_n as a fixed binomial combination of powers of T
// applied to f_1 and f_2.
// ---------------------------------------------------------------------------

inline Int binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int r = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

/// One term of the closed form: coeff_f2 * T^power_f2 f_2 + coeff_f1 *
/// T^power_f1 f_1, at summation index i.
struct BinomialTerm {
    std::int64_t i = 0;
    Int coeff_f2;
    std::int64_t power_f2 = 0;
    Int coeff_f1;
    std::int64_t power_f1 = 0;
};

/// The full expansion of f_n (n >= 4):
///   a_n = floor((n-1)/2), b_n = n - 2 a_n - 2 in {-1, 0};
///   f_n = sum_{i=a_n}^{2 a_n} [ C(i+b_n, 2i-2a_n+b_n)   T^{i+b_n}   f_2
///                             + C(i+b_n, 2i-2a_n+b_n+1) T^{i+b_n+1} f_1 ]
/// with C(n,k) = 0 outside 0 <= k <= n. All-zero terms are elided.
struct BinomialPlan {
    std::int64_t n = 0;
    std::int64_t a_n = 0;
    std::int64_t b_n = 0;
    std::vector<BinomialTerm> terms;
};

inline BinomialPlan binomial_plan(std::int64_t n) {
    if (n < 4) throw OutOfRange("binomial_plan: needs n >= 4");
    BinomialPlan plan;
    plan.n = n;
    plan.a_n = (n - 1) / 2;
    plan.b_n = n - 2 * plan.a_n - 2;
    for (std::int64_t i = plan.a_n; i <= 2 * plan.a_n; ++i) {
        BinomialTerm term;
        term.i = i;
        term.coeff_f2 = binomial(i + plan.b_n, 2 * i - 2 * plan.a_n + plan.b_n);
        term.power_f2 = i + plan.b_n;
        term.coeff_f1 = binomial(i + plan.b_n, 2 * i - 2 * plan.a_n + plan.b_n + 1);
        term.power_f1 = i + plan.b_n + 1;
        if (term.coeff_f2 == 0 && term.coeff_f1 == 0) continue;
        plan.terms.push_back(std::move(term));
    }
    return plan;
}

/// Evaluates a plan against a concrete matrix and seed vectors. Powers of T
/// are applied to f_1 and f_2 incrementally and reused across terms.
inline ExactVec evaluate_plan(const BinomialPlan& plan, const ExactMat& t, const ExactVec& f1,
                              const ExactVec& f2) {
    if (t.rows() != t.cols() || t.cols() != f1.size() || f1.size() != f2.size())
        throw DimMismatch("evaluate_plan: dimensions");
    std::int64_t max_pow = 0;
    for (const auto& term : plan.terms)
        max_pow = std::max({max_pow, term.power_f1, term.power_f2});
    std::vector<ExactVec> p1{f1}, p2{f2};
    for (std::int64_t k = 1; k <= max_pow; ++k) {
        p1.push_back(mat_vec(t, p1.back()));
        p2.push_back(mat_vec(t, p2.back()));
    }
    ExactVec acc(f1.size());
    for (const auto& term : plan.terms) {
        if (term.coeff_f2 != 0)
            acc = vec_add(acc, vec_scale(Scalar(Rational(term.coeff_f2)),
                                         p2[static_cast<std::size_t>(term.power_f2)]));
        if (term.coeff_f1 != 0)
            acc = vec_add(acc, vec_scale(Scalar(Rational(term.coeff_f1)),
                                         p1[static_cast<std::size_t>(term.power_f1)]));
    }
    return acc;
}

/// f_n from (T, f_1, f_2) alone: the recursion for n <= 3, the binomial
/// closed form for n >= 4.
inline ExactVec closed_form_iterate(const ExactMat& t, const ExactVec& f1, const ExactVec& f2,
                                    std::int64_t n) {
    if (n < 1) throw OutOfRange("closed_form_iterate: needs n >= 1");
    if (t.rows() != t.cols() || t.cols() != f1.size() || f1.size() != f2.size())
        throw DimMismatch("closed_form_iterate: dimensions");
    if (n == 1) return f1;
    if (n == 2) return f2;
    if (n == 3) return mat_vec(t, vec_add(f1, f2));
    return evaluate_plan(binomial_plan(n), t, f1, f2);
}

/// Generates a window from a seed operator: f_{n+2} = T(f_n + f_{n+1}).
/// Every such window has an exact representation by construction.
inline SequenceWindow orbit_window(const ExactMat& t, const ExactVec& f1, const ExactVec& f2,
                                   std::size_t n, const std::string& label = "orbit") {
    if (n < 2) throw OutOfRange("orbit_window: needs N >= 2");
    if (t.rows() != t.cols() || t.cols() != f1.size() || f1.size() != f2.size())
        throw DimMismatch("orbit_window: dimensions");
    SequenceWindow w;
    w.dim = f1.size();
    w.tail = TailPolicy::ZeroTail;
    w.label = label;
    w.vectors = {f1, f2};
    while (w.vectors.size() < n) {
        std::size_t k = w.vectors.size();
        w.vectors.push_back(mat_vec(t, vec_add(w.vectors[k - 2], w.vectors[k - 1])));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Derived checks on a verified operator
// ---------------------------------------------------------------------------

/// The derived plus/minus windows are represented by the same T:
/// T((f_n + f_{n+1}) + (f_{n+1} + f_{n+2})) = f_{n+2} + f_{n+3} and the
/// minus analogue, exactly, for n = 1..N-3.
inline CheckResult check_mn_equivalence(const SequenceWindow& w, const FibOperator& t) {
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "check_mn_equivalence");
    for (std::size_t n = 0; n + 3 < w.size(); ++n) {
        ExactVec plus_arg = vec_add(vec_add(u.col(n), u.col(n + 1)),
                                    vec_add(u.col(n + 1), u.col(n + 2)));
        if (!is_zero_vec(vec_sub(mat_vec(t.mat, plus_arg), vec_add(u.col(n + 2), u.col(n + 3)))))
            return CheckResult::fail(Witness{n + 1, {}, {}, "plus-derived recursion fails"}, true);
        ExactVec minus_arg = vec_sub(u.col(n), u.col(n + 2));
        if (!is_zero_vec(vec_sub(mat_vec(t.mat, minus_arg), vec_sub(u.col(n + 2), u.col(n + 3)))))
            return CheckResult::fail(Witness{n + 1, {}, {}, "minus-derived recursion fails"}, true);
    }
    return CheckResult::pass_exact("derived windows share the operator");
}

/// Two representations with the same T f_1 agree on the subspace the
/// constraints determine: span{f_1, f_n + f_{n+1} (n <= N-2)}. When that
/// subspace is all of span{f_n}, the matrices must be bit-identical.
inline CheckResult uniqueness_check(const SequenceWindow& w, const FibOperator& t,
                                    const FibOperator& s) {
    if (t.span_basis != s.span_basis)
        throw BasisMismatch("uniqueness_check: operators on different bases");
    if (t.tf1 != s.tf1) {
        if (!(t.mat == s.mat)) return CheckResult::pass_exact("distinct T f_1, distinct matrices");
        return CheckResult::fail(Witness{std::nullopt, {}, {}, "equal matrices but distinct tf1"},
                                 true);
    }
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "uniqueness_check");
    ExactMat diff = t.mat - s.mat;
    std::vector<ExactVec> gens{u.col(0)};
    for (std::size_t n = 0; n + 2 < w.size(); ++n) gens.push_back(vec_add(u.col(n), u.col(n + 1)));
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (!is_zero_vec(mat_vec(diff, gens[g])))
            return CheckResult::fail(
                Witness{g, gens[g], {}, "operators differ on a determined vector"}, true);
    if (rank(columns(gens)) == t.mat.cols()) {
        if (t.mat == s.mat) return CheckResult::pass_exact("fully determined; matrices identical");
        return CheckResult::fail(
            Witness{std::nullopt, {}, {}, "determined subspace is full but matrices differ"}, true);
    }
    return CheckResult::pass_exact("agree on the determined subspace; window leaves freedom");
}

/// ran(T) against span{f_3..f_N}: the containment span{f_3..f_N} <= ran(T)
/// always holds (f_{n+2} = T(f_n + f_{n+1})); equality is asserted exactly
/// when T f_1 lies in span{f_3..f_N}, and otherwise only the containment
/// status is reported.
inline CheckResult range_check(const SequenceWindow& w, const FibOperator& t) {
    if (w.size() < 3) throw WindowTooShort("range_check: needs N >= 3");
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "range_check");
    ExactMat tail(t.mat.rows(), w.size() - 2);
    for (std::size_t n = 2; n < w.size(); ++n) tail.set_col(n - 2, u.col(n));
    if (!span_contains(t.mat, tail))
        return CheckResult::fail(
            Witness{std::nullopt, {}, {}, "span{f_3..f_N} not inside ran(T)"}, true);
    bool tf1_in_tail = in_span(tail, mat_vec(t.mat, u.col(0)));
    if (tf1_in_tail) {
        if (span_contains(tail, t.mat))
            return CheckResult::pass_exact("ran(T) = span{f_3..f_N}");
        return CheckResult::fail(
            Witness{std::nullopt, {}, {}, "T f_1 in span{f_3..f_N} but ran(T) larger"}, true);
    }
    return CheckResult::pass_exact("span{f_3..f_N} inside ran(T); T f_1 outside, equality not claimed");
}

/// Containment pattern around a breakpoint m (f_m dependent on its
/// predecessors, f_{m+1} not): T f_i in span{f_3..f_{m+1}} for i <= m and
/// T f_{m+i} in span{f_3..f_{m+i+1}} for m+i <= N-1, all exact.
inline CheckResult containment_check(const SequenceWindow& w, const FibOperator& t, std::size_t m) {
    auto bp = find_breakpoint(w);
    if (!bp || *bp != m) throw NoBreakpoint("containment_check: m is not the breakpoint");
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "containment_check");
    auto prefix_span = [&](std::size_t hi) { // span{f_3..f_hi} in coordinates
        ExactMat p(t.mat.rows(), hi - 2);
        for (std::size_t n = 2; n < hi; ++n) p.set_col(n - 2, u.col(n));
        return p;
    };
    for (std::size_t i = 1; i <= m; ++i)
        if (!in_span(prefix_span(m + 1), mat_vec(t.mat, u.col(i - 1))))
            return CheckResult::fail(Witness{i, {}, {}, "T f_i left span{f_3..f_{m+1}}"}, true);
    for (std::size_t idx = m + 1; idx + 1 <= w.size(); ++idx) {
        if (!in_span(prefix_span(idx + 1), mat_vec(t.mat, u.col(idx - 1))))
            return CheckResult::fail(Witness{idx, {}, {}, "T f_{m+i} left its prefix span"}, true);
    }
    return CheckResult::pass_exact("breakpoint containment pattern holds");
}

/// When the pair family {f_n + f_{n+1}} (n <= N-1) is exactly dependent,
/// returns the smallest l with span{f_1..f_l} containing every window vector
/// and invariant under T; nullopt when the pair family is independent.
struct InvariantSubspace {
    std::size_t l = 0;
    ExactMat basis; // columns f_1..f_l
};

inline std::optional<InvariantSubspace> invariant_subspace_witness(const SequenceWindow& w,
                                                                   const FibOperator& t) {
    std::size_t pairs = w.size() - 1;
    ExactMat sums(w.dim, pairs);
    for (std::size_t n = 0; n < pairs; ++n)
        sums.set_col(n, vec_add(w.vectors[n], w.vectors[n + 1]));
    if (rank(sums) == pairs) return std::nullopt;
    ExactMat b = span_basis_matrix(w, t.span_basis);
    ExactMat u = detail::coords_matrix(w, b, "invariant_subspace_witness");
    for (std::size_t l = 1; l <= w.size(); ++l) {
        ExactMat prefix(w.dim, l);
        for (std::size_t n = 0; n < l; ++n) prefix.set_col(n, w.vectors[n]);
        if (!span_contains(prefix, w.synthesis())) continue;
        bool invariant = true;
        for (std::size_t n = 0; n < l && invariant; ++n)
            invariant = in_span(prefix, mat_vec(b, mat_vec(t.mat, u.col(n))));
        if (invariant) return InvariantSubspace{l, prefix};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Spectral and kernel consequences, at the zero-tail scale
// ---------------------------------------------------------------------------

namespace detail {

// d x N matrix of the shifted family f_3..f_N padded with two zero columns,
// the zero-tail image of {f_{n+2}}_{n=1..N}.
inline ExactMat shift2_extended(const SequenceWindow& w) {
    ExactMat s(w.dim, w.size());
    for (std::size_t n = 2; n < w.size(); ++n) s.set_col(n - 2, w.vectors[n]);
    return s;
}

} // namespace detail

/// Norm bound for the operator the pair family induces: with M the zero-tail
/// plus-derived window, if ker T_M <= ker T_{shift^2 F} (zero-tail extended)
/// the map m_n -> f_{n+2} extends to an operator on H whose norm is at most
/// sqrt(B_F / A_M), B_F = lambda_max(S_F), A_M = lambda_min(S_M). Skipped
/// when M is not complete or the kernel inclusion fails.
inline CheckResult norm_bound_check(const SequenceWindow& w, const FibOperator& t,
                                    double slack = 1e-9) {
    (void)t; // the bound concerns the canonical induced operator
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("norm_bound_check: requires ZeroTail window");
    SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
    ExactMat msyn = m.synthesis();
    if (rank(msyn) < w.dim)
        return CheckResult::skip(Witness{std::nullopt, {}, {}, "derived window not complete"},
                                 "hypothesis fails: M not complete");
    ExactMat s2 = detail::shift2_extended(w);
    auto xt = solve_all(transpose(msyn), transpose(s2));
    if (!xt) {
        for (const auto& c : kernel_basis(msyn))
            if (!is_zero_vec(mat_vec(s2, c)))
                return CheckResult::skip(
                    Witness{std::nullopt, c, {}, "ker T_M not inside ker T_{shift^2 F}"},
                    "hypothesis fails: kernel inclusion");
        throw Error("norm_bound_check: inconsistent without witness");
    }
    double norm = operator_norm(to_float(transpose(*xt)));
    double bf = frame_bounds(w).lambda_max;
    double am = frame_bounds(m).lambda_min;
    double bound = std::sqrt(bf / am);
    if (norm <= bound * (1.0 + slack))
        return CheckResult::pass_float(std::max(0.0, norm - bound), "norm within sqrt(B_F/A_M)");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "norm exceeds sqrt(B_F/A_M)"}, false,
                             norm - bound);
}

/// Injectivity biconditional at the scale where it is a theorem: when the
/// constraint vectors {f_n + f_{n+1}}_{n=1..N-2} span span{f_n}, T is fully
/// determined and
///   T injective  <=>  ker T_{shift^2 F} <= ker T_M
/// with both synthesis maps over the N-2 constraint indices. Skipped when the
/// constraint vectors do not span (T then has policy freedom the infinite
/// statement knows nothing about).
inline CheckResult injectivity_check(const SequenceWindow& w, const FibOperator& t) {
    if (w.size() < 3) throw WindowTooShort("injectivity_check: needs N >= 3");
    std::size_t nc = w.size() - 2;
    ExactMat wmat(w.dim, nc), s2(w.dim, nc);
    for (std::size_t n = 0; n < nc; ++n) {
        wmat.set_col(n, vec_add(w.vectors[n], w.vectors[n + 1]));
        s2.set_col(n, w.vectors[n + 2]);
    }
    if (!span_equal(wmat, w.synthesis()))
        return CheckResult::skip(
            Witness{std::nullopt, {}, {}, "constraint vectors do not span the window"},
            "hypothesis fails: pair span incomplete");
    bool inclusion = true;
    ExactVec incl_witness;
    for (const auto& c : kernel_basis(s2))
        if (!is_zero_vec(mat_vec(wmat, c))) {
            inclusion = false;
            incl_witness = c;
            break;
        }
    bool injective = kernel_basis(t.mat).empty();
    if (injective == inclusion)
        return CheckResult::pass_exact(injective ? "injective; kernel inclusion holds"
                                                 : "not injective; kernel inclusion fails");
    return CheckResult::fail(
        Witness{std::nullopt, incl_witness, {}, "injectivity biconditional violated"}, true);
}

/// Moves a representation along an injective exact map K: the window becomes
/// {K f_n} and the operator K T K^+ has the same matrix over the image of the
/// span basis (K preserves every exact linear relation).
inline FibOperator transport(const SequenceWindow& w, const FibOperator& t, const ExactMat& k) {
    if (k.cols() != w.dim) throw DimMismatch("transport: map/window dims");
    if (rank(k) != k.cols()) throw NotInjective("transport: map not injective");
    return FibOperator{t.span_basis, t.mat, Method::Transported, mat_vec(k, t.tf1)};
}

} // namespace fibrep
