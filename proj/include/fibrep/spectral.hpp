#pragma once

#include <cmath>
#include <vector>

#include "fibrep/jacobi.hpp"
#include "fibrep/linalg.hpp"

namespace fibrep {

/// Extreme spectral data of a frame (sequence): the optimal bounds of the
/// window, restricted to its span. Tiny negatives from rounding are clamped
/// to zero.
struct SpectralSummary {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double sigma_min = 0.0; // smallest nonzero singular value of the synthesis
    double tolerance = 0.0;
};

/// Relative cutoff separating span eigenvalues from the numerical zeros of
/// the orthogonal complement.
inline constexpr double kSpanCutoff = 1e-10;

/// Largest singular value.
inline double operator_norm(const FloatMat& t) {
    if (t.rows() == 0 || t.cols() == 0) return 0.0;
    FloatMat g = conj_transpose(t) * t;
    auto eigs = hermitian_eigs(g);
    double top = eigs.back();
    return top > 0 ? std::sqrt(top) : 0.0;
}

/// Optimal frame-sequence bounds of the columns of a float synthesis matrix:
/// extreme eigenvalues of F F* restricted to the column span. Eigenvalues
/// below kSpanCutoff * lambda_max belong to the complement of the span and
/// are excluded.
inline SpectralSummary frame_bounds_of_synthesis(const FloatMat& f) {
    SpectralSummary out;
    out.tolerance = kSpanCutoff;
    if (f.cols() == 0 || f.rows() == 0) return out;
    FloatMat s = f * conj_transpose(f);
    auto eigs = hermitian_eigs(s); // ascending
    double lmax = eigs.back();
    if (lmax <= 0.0) return out; // zero window
    double cutoff = kSpanCutoff * lmax;
    double lmin = lmax;
    for (double e : eigs)
        if (e > cutoff) {
            lmin = e;
            break;
        }
    out.lambda_max = lmax;
    out.lambda_min = std::max(lmin, 0.0);
    out.sigma_min = std::sqrt(out.lambda_min);
    return out;
}

} // namespace fibrep
