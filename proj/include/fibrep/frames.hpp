#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibrep/errors.hpp"
#include "fibrep/linalg.hpp"
#include "fibrep/spectral.hpp"
#include "fibrep/window.hpp"

namespace fibrep {

/// Exact kernel of a synthesis map: coefficient vectors c with sum c_n f_n = 0.
struct KernelSpace {
    std::size_t ambient_len = 0;
    std::vector<ExactVec> basis; // RREF-canonical
};

inline KernelSpace kernel_space(const ExactMat& synthesis) {
    return KernelSpace{synthesis.cols(), kernel_basis(synthesis)};
}

/// Carrier for whatever certifies a failed or skipped check: an index, a
/// coefficient vector, or a vector of the space.
struct Witness {
    std::optional<std::size_t> index;
    ExactVec coeffs;
    ExactVec vec;
    std::string description;
};

struct CheckResult {
    bool passed = false;
    bool exact = false;     // exact arithmetic end to end; residual is then 0
    bool skipped = false;   // a theorem hypothesis failed; witness explains
    double residual = 0.0;  // float checks: largest violation magnitude
    std::string note;
    std::optional<Witness> witness;

    static CheckResult pass_exact(std::string note = {}) {
        return CheckResult{true, true, false, 0.0, std::move(note), std::nullopt};
    }
    static CheckResult pass_float(double residual, std::string note = {}) {
        return CheckResult{true, false, false, residual, std::move(note), std::nullopt};
    }
    static CheckResult fail(Witness w, bool exact, double residual = 0.0, std::string note = {}) {
        return CheckResult{false, exact, false, residual, std::move(note), std::move(w)};
    }
    static CheckResult skip(Witness w, std::string note) {
        return CheckResult{false, false, true, 0.0, std::move(note), std::move(w)};
    }
};

/// Frame-theoretic profile of a window: exact rank data plus float bounds.
struct FrameReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t rank = 0;
    bool complete = false;             // rank == d
    bool linearly_independent = false; // rank == N
    std::size_t kernel_dim = 0;        // N - rank
    SpectralSummary bounds;
    bool is_frame_for_h = false;
};

inline FrameReport analyze(const SequenceWindow& w, double tolerance = 1e-9) {
    FrameReport r;
    r.n = w.size();
    r.d = w.dim;
    ExactMat syn = w.synthesis();
    r.rank = rank(syn);
    r.complete = r.rank == w.dim;
    r.linearly_independent = r.rank == w.size();
    r.kernel_dim = w.size() - r.rank;
    r.bounds = frame_bounds_of_synthesis(to_float(syn));
    r.is_frame_for_h = r.complete && r.bounds.lambda_min > tolerance;
    return r;
}

inline SpectralSummary frame_bounds(const SequenceWindow& w) {
    if (w.vectors.empty()) throw EmptyWindow("frame_bounds: empty window");
    return frame_bounds_of_synthesis(to_float(w.synthesis()));
}

/// S_F f = sum <f, f_n> f_n, exact.
inline ExactVec frame_operator_apply(const SequenceWindow& w, const ExactVec& f) {
    if (f.size() != w.dim) throw DimMismatch("frame_operator_apply: dim mismatch");
    ExactVec out(w.dim);
    for (const auto& fn : w.vectors) out = vec_add(out, vec_scale(inner(f, fn), fn));
    return out;
}

/// S_F as an exact d x d matrix: sum f_n f_n^*.
inline ExactMat frame_operator_matrix(const SequenceWindow& w) {
    ExactMat s(w.dim, w.dim);
    for (const auto& fn : w.vectors)
        for (std::size_t i = 0; i < w.dim; ++i)
            for (std::size_t j = 0; j < w.dim; ++j) s(i, j) += fn[i] * fn[j].conj();
    return s;
}

/// Gram matrix G_ij = <f_i, f_j> of the window, float.
inline FloatMat gram_matrix(const SequenceWindow& w) {
    FloatMat f = to_float(w.synthesis());
    return conj_transpose(f) * f;
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

/// 4 S_F f = S_M f + S_N f + 2 <f, f_1> f_1, exact on ZeroTail windows
/// with M, N the +/- derived windows at alpha = beta = 1.
inline CheckResult check_sf_identity(const SequenceWindow& w, const ExactVec& f) {
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("check_sf_identity: requires ZeroTail window");
    if (f.size() != w.dim) throw DimMismatch("check_sf_identity: dim mismatch");
    SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
    SequenceWindow n = derive(w, DerivedSpec{Scalar(1), Scalar(1), -1});
    ExactVec lhs = vec_scale(Scalar(4), frame_operator_apply(w, f));
    ExactVec rhs = vec_add(frame_operator_apply(m, f), frame_operator_apply(n, f));
    rhs = vec_add(rhs, vec_scale(Scalar(2) * inner(f, w.vectors[0]), w.vectors[0]));
    ExactVec resid = vec_sub(lhs, rhs);
    if (is_zero_vec(resid)) return CheckResult::pass_exact("4*S_F = S_M + S_N + 2<f,f1>f1");
    return CheckResult::fail(Witness{std::nullopt, {}, resid, "nonzero residual vector"}, true);
}

/// Bessel-bound transfer between F and its derived sequences: with
/// mu = max{|a|^2,|b|^2} and the combined quantity L = lambda_max(S_M + S_N),
///   2|a|^2 B_F <= L <= 4 mu B_F,   B_M <= 4 mu B_F,   B_N <= 4 mu B_F,
/// all with optimal (spectral) bounds and 1e-9 relative slack. ZeroTail only.
inline CheckResult check_bessel_transfer(const SequenceWindow& w, const DerivedSpec& spec,
                                         double slack = 1e-9) {
    if (spec.alpha.is_zero() || spec.beta.is_zero())
        throw ZeroScalar("check_bessel_transfer: alpha and beta must be nonzero");
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("check_bessel_transfer: requires ZeroTail window");
    SequenceWindow m = derive(w, DerivedSpec{spec.alpha, spec.beta, +1});
    SequenceWindow n = derive(w, DerivedSpec{spec.alpha, spec.beta, -1});
    FloatMat sf = to_float(frame_operator_matrix(w));
    FloatMat sm = to_float(frame_operator_matrix(m));
    FloatMat sn = to_float(frame_operator_matrix(n));
    double bf = hermitian_eigs(sf).back();
    double bm = hermitian_eigs(sm).back();
    double bn = hermitian_eigs(sn).back();
    double combined = hermitian_eigs(sm + sn).back();
    double mu = to_double(spec.mu());
    double a2 = to_double(spec.alpha.norm2());

    double viol = 0.0;
    auto le = [&](double lhs, double rhs) {
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        viol = std::max(viol, (lhs - rhs) / scale);
        return lhs <= rhs + slack * scale;
    };
    bool ok = le(combined, 4.0 * mu * bf) & le(2.0 * a2 * bf, combined) &
              le(bm, 4.0 * mu * bf) & le(bn, 4.0 * mu * bf);
    if (ok) return CheckResult::pass_float(std::max(viol, 0.0), "Bessel transfer inequalities");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "Bessel inequality violated"}, false, viol);
}

/// Frame transfer to the union M u N: exact operator identity
///   S_{MuN} = 2|a|^2 S_F + 2|b|^2 S_{shift(F,1)}
/// on ZeroTail windows, plus the spectral envelope
///   |a|^2 lambda_min(S_F) <= lambda_min(S_{MuN}),
///   lambda_max(S_{MuN}) <= 4 mu lambda_max(S_F)
/// with bounds restricted to the (common) span.
inline CheckResult check_union_frame(const SequenceWindow& w, const DerivedSpec& spec,
                                     double slack = 1e-9) {
    if (spec.alpha.is_zero()) throw ZeroScalar("check_union_frame: alpha must be nonzero");
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("check_union_frame: requires ZeroTail window");
    SequenceWindow m = derive(w, DerivedSpec{spec.alpha, spec.beta, +1});
    SequenceWindow n = derive(w, DerivedSpec{spec.alpha, spec.beta, -1});
    SequenceWindow mn = m;
    mn.vectors.insert(mn.vectors.end(), n.vectors.begin(), n.vectors.end());
    mn.label = w.label + " M u N";

    ExactMat s_mn = frame_operator_matrix(mn);
    ExactMat rhs = Scalar(Rational(2) * spec.alpha.norm2()) * frame_operator_matrix(w);
    if (w.size() > 1) {
        ExactMat s_shift = frame_operator_matrix(shift(w, 1));
        rhs = rhs + Scalar(Rational(2) * spec.beta.norm2()) * s_shift;
    }
    if (!(s_mn == rhs))
        return CheckResult::fail(Witness{std::nullopt, {}, {}, "operator identity failed"}, true);

    SpectralSummary bf = frame_bounds(w);
    SpectralSummary bmn = frame_bounds(mn);
    double a2 = to_double(spec.alpha.norm2());
    double mu = to_double(spec.mu());
    double viol = 0.0;
    auto le = [&](double lhs, double rhsv) {
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhsv)});
        viol = std::max(viol, (lhs - rhsv) / scale);
        return lhs <= rhsv + slack * scale;
    };
    bool ok = le(a2 * bf.lambda_min, bmn.lambda_min) & le(bmn.lambda_max, 4.0 * mu * bf.lambda_max);
    if (ok) return CheckResult::pass_float(std::max(viol, 0.0), "union frame identity and envelope");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "spectral envelope violated"}, false, viol);
}

namespace detail {

// Windowed right shift of a coefficient vector: (c_1..c_N) -> (0, c_1..c_{N-1}).
// Under ZeroTail the dropped c_N lands on f_{N+1} = 0, so this is the honest
// finite image of the right-shift operator.
inline ExactVec shifted_coeffs(const ExactVec& c) {
    ExactVec s(c.size());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) s[i + 1] = c[i];
    return s;
}

} // namespace detail

/// ker T_F = ker T_M intersect ker T_N, hypothesis-gated.
///
/// Hypothesis (shift invariance of ker T_F): for every kernel basis vector c,
/// the windowed right shift of c annihilates the synthesis again. If a basis
/// vector breaks it, the theorem's premise fails and the check reports
/// Skipped with that witness instead of a failure.
inline CheckResult check_kernel_identity(const SequenceWindow& w) {
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("check_kernel_identity: requires ZeroTail window");
    ExactMat syn = w.synthesis();
    KernelSpace ker_f = kernel_space(syn);
    for (const auto& c : ker_f.basis) {
        ExactVec s = detail::shifted_coeffs(c);
        if (!is_zero_vec(mat_vec(syn, s)))
            return CheckResult::skip(Witness{std::nullopt, c, {}, "shifted kernel vector leaves ker T_F"},
                                     "shift-invariance hypothesis fails");
    }
    SequenceWindow m = derive(w, DerivedSpec{Scalar(1), Scalar(1), +1});
    SequenceWindow n = derive(w, DerivedSpec{Scalar(1), Scalar(1), -1});
    // ker T_M intersect ker T_N as the kernel of the stacked synthesis.
    ExactMat stacked(2 * w.dim, w.size());
    ExactMat ms = m.synthesis();
    ExactMat ns = n.synthesis();
    for (std::size_t i = 0; i < w.dim; ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
            stacked(i, j) = ms(i, j);
            stacked(w.dim + i, j) = ns(i, j);
        }
    KernelSpace ker_mn = kernel_space(stacked);

    for (const auto& c : ker_f.basis)
        if (!is_zero_vec(mat_vec(stacked, c)))
            return CheckResult::fail(Witness{std::nullopt, c, {}, "ker T_F not inside ker T_M ^ ker T_N"}, true);
    for (const auto& c : ker_mn.basis)
        if (!is_zero_vec(mat_vec(syn, c)))
            return CheckResult::fail(Witness{std::nullopt, c, {}, "ker T_M ^ ker T_N not inside ker T_F"}, true);
    return CheckResult::pass_exact("ker T_F = ker T_M ^ ker T_N");
}

// ---------------------------------------------------------------------------
// Structure searches
// ---------------------------------------------------------------------------

/// Smallest m >= 2 with f_m in span{f_1..f_{m-1}} and f_{m+1} not in
/// span{f_1..f_m}; nullopt when no such m <= N-1 exists.
inline std::optional<std::size_t> find_breakpoint(const SequenceWindow& w) {
    if (w.size() < 3) throw WindowTooShort("find_breakpoint: needs N >= 3");
    if (is_zero_vec(w.vectors[0])) throw ZeroFirstVector("find_breakpoint: f_1 = 0");
    for (std::size_t m = 2; m + 1 <= w.size() - 0 && m <= w.size() - 1; ++m) {
        ExactMat prefix(w.dim, m - 1);
        for (std::size_t j = 0; j + 1 < m; ++j) prefix.set_col(j, w.vectors[j]);
        if (!in_span(prefix, w.vectors[m - 1])) continue;
        ExactMat prefix2(w.dim, m);
        for (std::size_t j = 0; j < m; ++j) prefix2.set_col(j, w.vectors[j]);
        if (!in_span(prefix2, w.vectors[m])) return m;
    }
    return std::nullopt;
}

/// Smallest m >= 0 such that {f_{m+n} + f_{m+n+1}} over the remaining window
/// (UnknownTail convention: N - m - 1 vectors) is exactly independent.
inline std::optional<std::size_t> tail_independence_index(const SequenceWindow& w) {
    if (w.size() < 4) throw WindowTooShort("tail_independence_index: needs N >= 4");
    for (std::size_t m = 0; m + 2 <= w.size(); ++m) {
        std::size_t count = w.size() - m - 1;
        ExactMat sums(w.dim, count);
        for (std::size_t j = 0; j < count; ++j)
            sums.set_col(j, vec_add(w.vectors[m + j], w.vectors[m + j + 1]));
        if (rank(sums) == count) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Telescoping-sum identities for the pair sequence {f_n + f_{n+1}}
// ---------------------------------------------------------------------------

/// f_n = sum_{i=0}^{m-1} (-1)^i (f_{n-i-1} + f_{n-i}) + (-1)^m f_{n-m},
/// exactly, for all 2 <= n <= N and 1 <= m <= n-1.
inline CheckResult check_pair_telescope(const SequenceWindow& w) {
    for (std::size_t n = 2; n <= w.size(); ++n) {
        for (std::size_t m = 1; m <= n - 1; ++m) {
            ExactVec acc(w.dim);
            for (std::size_t i = 0; i < m; ++i) {
                ExactVec pair = vec_add(w.vectors[n - i - 2], w.vectors[n - i - 1]);
                acc = i % 2 == 0 ? vec_add(acc, pair) : vec_sub(acc, pair);
            }
            ExactVec last = w.vectors[n - m - 1];
            acc = m % 2 == 0 ? vec_add(acc, last) : vec_sub(acc, last);
            if (!(is_zero_vec(vec_sub(acc, w.vectors[n - 1]))))
                return CheckResult::fail(Witness{n, {}, {}, "telescoping identity failed"}, true);
        }
    }
    return CheckResult::pass_exact("telescoping identity");
}

/// span{f_n} = span({f_1} u {f_n + f_{n+1}}), exactly (UnknownTail pairs).
inline CheckResult check_pair_span(const SequenceWindow& w) {
    ExactMat syn = w.synthesis();
    ExactMat aug(w.dim, w.size());
    aug.set_col(0, w.vectors[0]);
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
        aug.set_col(j + 1, vec_add(w.vectors[j], w.vectors[j + 1]));
    if (span_equal(syn, aug)) return CheckResult::pass_exact("span transfer");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "span transfer failed"}, true);
}

/// Independence transfer F -> pairs: if the window is exactly independent,
/// so is {f_n + f_{n+1}} (UnknownTail, N-1 vectors). Skipped when the
/// premise fails.
inline CheckResult check_pair_independence(const SequenceWindow& w) {
    ExactMat syn = w.synthesis();
    if (rank(syn) != w.size())
        return CheckResult::skip(Witness{std::nullopt, {}, {}, "window not independent"},
                                 "premise fails");
    std::size_t count = w.size() - 1;
    ExactMat sums(w.dim, count);
    for (std::size_t j = 0; j < count; ++j)
        sums.set_col(j, vec_add(w.vectors[j], w.vectors[j + 1]));
    if (rank(sums) == count) return CheckResult::pass_exact("pair independence");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "pairs dependent"}, true);
}

/// Independence transfer pairs -> F: if {f_1} u {f_n + f_{n+1}} is exactly
/// independent, so is the window.
inline CheckResult check_pair_independence_reverse(const SequenceWindow& w) {
    ExactMat aug(w.dim, w.size());
    aug.set_col(0, w.vectors[0]);
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
        aug.set_col(j + 1, vec_add(w.vectors[j], w.vectors[j + 1]));
    if (rank(aug) != w.size())
        return CheckResult::skip(Witness{std::nullopt, {}, {}, "{f1} u pairs not independent"},
                                 "premise fails");
    if (rank(w.synthesis()) == w.size()) return CheckResult::pass_exact("reverse pair independence");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "window dependent"}, true);
}

/// Rank transfer F -> M at window scale: for ZeroTail windows and alpha != 0,
/// the derived window spans the same subspace, so ranks agree exactly.
inline CheckResult check_rank_transfer(const SequenceWindow& w, const DerivedSpec& spec) {
    if (spec.alpha.is_zero()) throw ZeroScalar("check_rank_transfer: alpha must be nonzero");
    if (w.tail != TailPolicy::ZeroTail)
        throw Error("check_rank_transfer: requires ZeroTail window");
    SequenceWindow m = derive(w, spec);
    if (rank(w.synthesis()) == rank(m.synthesis()))
        return CheckResult::pass_exact("rank transfer");
    return CheckResult::fail(Witness{std::nullopt, {}, {}, "rank changed under derive"}, true);
}

/// Completeness-failure diagnostic for {alpha e_n + beta e_{n+1}} with
/// |alpha| < |beta|: sigma_min of the ZeroTail derived synthesis decays
/// geometrically; successive ratios approach |alpha/beta|. These Grams are
/// full rank, so use the true smallest eigenvalue: the decay quickly dips
/// below the relative cutoff that frame_bounds applies.
inline std::vector<double> sigma_min_decay(const Scalar& alpha, const Scalar& beta,
                                           std::size_t n_min, std::size_t n_max) {
    std::vector<double> sigmas;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        SequenceWindow onb = canonical("onb", n, n);
        SequenceWindow m = derive(onb, DerivedSpec{alpha, beta, +1});
        auto eigs = hermitian_eigs(gram_matrix(m));
        sigmas.push_back(std::sqrt(std::max(0.0, eigs.front())));
    }
    std::vector<double> ratios;
    for (std::size_t i = 1; i < sigmas.size(); ++i) ratios.push_back(sigmas[i] / sigmas[i - 1]);
    return ratios;
}

} // namespace fibrep
