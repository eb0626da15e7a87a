#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fibrep/errors.hpp"
#include "fibrep/scalar.hpp"

namespace fibrep {

/// Dense row-major matrix over an arbitrary scalar field. Exact linear
/// algebra (rref / kernel / solve) is defined for Mat<Scalar> only; the
/// float instantiation Mat<Cplx> is used by the spectral layer.
template <class S>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::vector<S> col(std::size_t j) const {
        std::vector<S> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const std::vector<S>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const S& c, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> e_;
};

using ExactMat = Mat<Scalar>;
using FloatMat = Mat<Cplx>;
using ExactVec = std::vector<Scalar>;
using FloatVec = std::vector<Cplx>;

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

template <class S>
std::vector<S> mat_vec(const Mat<S>& m, const std::vector<S>& v) {
    if (v.size() != m.cols()) throw DimMismatch("mat_vec: size mismatch");
    std::vector<S> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

template <class S>
std::vector<S> vec_add(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.size() != b.size()) throw DimMismatch("vec_add: size mismatch");
    std::vector<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class S>
std::vector<S> vec_sub(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.size() != b.size()) throw DimMismatch("vec_sub: size mismatch");
    std::vector<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class S>
std::vector<S> vec_scale(const S& c, const std::vector<S>& a) {
    std::vector<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero_vec(const ExactVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Inner product <a,b> = sum a_i * conj(b_i).
inline Scalar inner(const ExactVec& a, const ExactVec& b) {
    if (a.size() != b.size()) throw DimMismatch("inner: size mismatch");
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i].conj();
    return s;
}

inline ExactMat conj_transpose(const ExactMat& m) {
    ExactMat r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
    return r;
}

inline ExactMat transpose(const ExactMat& m) {
    ExactMat r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

inline FloatMat conj_transpose(const FloatMat& m) {
    FloatMat r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline FloatMat to_float(const ExactMat& m) {
    FloatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_cplx();
    return r;
}

inline FloatVec to_float(const ExactVec& v) {
    FloatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_cplx();
    return r;
}

// ---------------------------------------------------------------------------
// Exact reduced row echelon form and its consequences. Pivot policy: columns
// scanned left to right, first nonzero entry from the top of the unreduced
// block becomes the pivot, pivot normalized to 1, eliminated above and below.
// Deterministic: equal inputs give bit-identical outputs.
// ---------------------------------------------------------------------------

struct RrefResult {
    ExactMat mat;
    std::vector<std::size_t> pivots; // pivot column indices, ascending
};

inline RrefResult rref(ExactMat m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(sel, j));
        Scalar inv = Scalar(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const ExactMat& m) { return rref(m).pivots.size(); }

/// Exact basis of { c : m c = 0 } in RREF-canonical form: one basis vector
/// per free column, rescaled so the leading nonzero coordinate is 1.
inline std::vector<ExactVec> kernel_basis(const ExactMat& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<ExactVec> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        ExactVec v(m.cols());
        v[j] = Scalar(1);
        for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.mat(k, j);
        for (auto& x : v)
            if (!x.is_zero()) {
                Scalar lead = x;
                for (auto& y : v) y /= lead;
                break;
            }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// RREF-canonical particular solution of m x = b (free variables zero), or
/// nullopt when b is outside the column span.
inline std::optional<ExactVec> solve(const ExactMat& m, const ExactVec& b) {
    if (b.size() != m.rows()) throw DimMismatch("solve: rhs size mismatch");
    ExactMat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RrefResult r = rref(std::move(aug));
    if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
    ExactVec x(m.cols());
    for (std::size_t k = 0; k < r.pivots.size(); ++k) x[r.pivots[k]] = r.mat(k, m.cols());
    return x;
}

/// Multi-rhs variant: canonical solution columns for m X = B, or nullopt if
/// any column is inconsistent.
inline std::optional<ExactMat> solve_all(const ExactMat& m, const ExactMat& b) {
    if (b.rows() != m.rows()) throw DimMismatch("solve_all: rhs rows mismatch");
    ExactMat aug(m.rows(), m.cols() + b.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, m.cols() + j) = b(i, j);
    }
    RrefResult r = rref(std::move(aug));
    for (auto p : r.pivots)
        if (p >= m.cols()) return std::nullopt;
    ExactMat x(m.cols(), b.cols());
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[k], j) = r.mat(k, m.cols() + j);
    return x;
}

/// True iff v lies in the column span of m.
inline bool in_span(const ExactMat& m, const ExactVec& v) {
    return solve(m, v).has_value();
}

/// True iff every column of b lies in the column span of a.
inline bool span_contains(const ExactMat& a, const ExactMat& b) {
    return solve_all(a, b).has_value();
}

/// Exact equality of column spans.
inline bool span_equal(const ExactMat& a, const ExactMat& b) {
    return span_contains(a, b) && span_contains(b, a);
}

inline ExactMat columns(const std::vector<ExactVec>& cols) {
    if (cols.empty()) return ExactMat(0, 0);
    ExactMat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

} // namespace fibrep
