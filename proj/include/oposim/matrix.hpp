// matrix.hpp — small dense matrices (row-major) and the validated symmetric type.
// Everything here targets the tiny dimensions of this problem (<= ~30x30);
// clarity over blocking tricks.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "oposim/errors.hpp"

namespace oposim {

template <class T>
class BasicMatrix {
public:
    BasicMatrix() = default;

    BasicMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    BasicMatrix operator*(const BasicMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw ValidationError("matrix multiply: shape mismatch");
        BasicMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T a = (*this)(i, k);
                if (a == T{}) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        }
        return out;
    }

    BasicMatrix operator+(const BasicMatrix& rhs) const {
        check_same_shape(rhs, "add");
        BasicMatrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
        return out;
    }

    BasicMatrix operator-(const BasicMatrix& rhs) const {
        check_same_shape(rhs, "subtract");
        BasicMatrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
        return out;
    }

    BasicMatrix operator*(T scalar) const {
        BasicMatrix out(*this);
        for (auto& v : out.data_) v *= scalar;
        return out;
    }

    BasicMatrix transpose() const {
        BasicMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    // conjugate transpose; for real T this is just transpose()
    BasicMatrix adjoint() const {
        BasicMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj_value((*this)(i, j));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, static_cast<double>(std::abs(v)));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) {
            const double a = static_cast<double>(std::abs(v));
            s += a * a;
        }
        return std::sqrt(s);
    }

    bool operator==(const BasicMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }

private:
    static T conj_value(const T& v) {
        if constexpr (std::is_same_v<T, std::complex<double>>) return std::conj(v);
        else return v;
    }

    void check_same_shape(const BasicMatrix& rhs, const char* what) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw ValidationError(std::string("matrix ") + what + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Mat = BasicMatrix<double>;
using CMat = BasicMatrix<std::complex<double>>;

// Real symmetric matrix; symmetry is exact and enforced on construction.
class SymMat {
public:
    explicit SymMat(Mat m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw ValidationError("SymMat: matrix must be square");
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = i + 1; j < m_.cols(); ++j)
                if (m_(i, j) != m_(j, i))
                    throw ValidationError("SymMat: entries (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") are not symmetric");
    }

    // Build from the upper triangle of an approximately-symmetric matrix,
    // mirroring entries so the invariant holds exactly.
    static SymMat mirrored(const Mat& m) {
        if (m.rows() != m.cols()) throw ValidationError("SymMat: matrix must be square");
        Mat out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out(i, i) = m(i, i);
            for (std::size_t j = i + 1; j < m.cols(); ++j) {
                const double v = 0.5 * (m(i, j) + m(j, i));
                out(i, j) = v;
                out(j, i) = v;
            }
        }
        return SymMat(std::move(out));
    }

    static SymMat identity(std::size_t n) { return SymMat(Mat::identity(n)); }

    static SymMat diagonal(const std::vector<double>& d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return SymMat(std::move(m));
    }

    std::size_t size() const noexcept { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    const Mat& mat() const noexcept { return m_; }

private:
    Mat m_;
};

} // namespace oposim
