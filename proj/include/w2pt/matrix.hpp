#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace w2pt {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Rows are exposed both as complex spans
/// and as interleaved (re,im) double spans for the SIMD kernels;
/// std::complex<double> is layout-compatible with double[2].
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    std::span<cplx> row(int i) { return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)}; }
    std::span<const cplx> row(int i) const {
        return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    double* row_doubles(int i) { return reinterpret_cast<double*>(data_.data() + static_cast<size_t>(i) * cols_); }
    const double* row_doubles(int i) const {
        return reinterpret_cast<const double*>(data_.data() + static_cast<size_t>(i) * cols_);
    }

    void set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

    /// Pin the Dirichlet frame: first/last row and first/last column.
    void zero_boundary() {
        for (int j = 0; j < cols_; ++j) {
            (*this)(0, j) = cplx{};
            (*this)(rows_ - 1, j) = cplx{};
        }
        for (int i = 0; i < rows_; ++i) {
            (*this)(i, 0) = cplx{};
            (*this)(i, cols_ - 1) = cplx{};
        }
    }

    friend bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

inline double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        for (const auto& z : m.row(i)) best = std::max(best, std::abs(z));
    }
    return best;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    assert(same_shape(a, b));
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        auto ra = a.row(i);
        auto rb = b.row(i);
        for (size_t j = 0; j < ra.size(); ++j) best = std::max(best, std::abs(ra[j] - rb[j]));
    }
    return best;
}

double frobenius_norm(const ComplexMatrix& m);

}  // namespace w2pt
