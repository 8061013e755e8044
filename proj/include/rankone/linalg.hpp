#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rankone/scalar.hpp"

namespace rankone {

// Column vector over F. Vectors are right F-modules: scalars multiply
// coordinates from the right, matrices act from the left.
template <class F, class R = double>
using FVector = std::vector<Scalar<F, R>>;

template <class F, class R>
FVector<F, R> operator*(const FVector<F, R>& v, const Scalar<F, R>& s) {
    FVector<F, R> r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k] * s;
    return r;
}

template <class F, class R>
R norm_sq(const FVector<F, R>& v) {
    R s(0);
    for (const auto& x : v) s += abs_sq(x);
    return s;
}

template <class F, class R>
R norm(const FVector<F, R>& v) {
    using std::sqrt;
    return sqrt(norm_sq(v));
}

// Hermitian pairing sum_k conj(v_k) w_k, linear in w for the right-module
// structure.
template <class F, class R>
Scalar<F, R> hermitian_dot(const FVector<F, R>& v, const FVector<F, R>& w) {
    if (v.size() != w.size()) throw std::invalid_argument("hermitian_dot: size mismatch");
    Scalar<F, R> s;
    for (std::size_t k = 0; k < v.size(); ++k) s += conj(v[k]) * w[k];
    return s;
}

// Dense matrix over F, row-major.
template <class F, class R = double>
class FMatrix {
public:
    using scalar = Scalar<F, R>;

    FMatrix() : rows_(0), cols_(0) {}
    FMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static FMatrix identity(int n) {
        FMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    scalar& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const scalar& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    friend FMatrix operator*(const FMatrix& a, const FMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("FMatrix: shape mismatch");
        FMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const scalar& aik = a(i, k);
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend FVector<F, R> operator*(const FMatrix& a, const FVector<F, R>& v) {
        if (std::size_t(a.cols_) != v.size()) throw std::invalid_argument("FMatrix: shape mismatch");
        FVector<F, R> w(a.rows_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) w[i] += a(i, j) * v[j];
        return w;
    }

    friend FMatrix operator+(const FMatrix& a, const FMatrix& b) {
        FMatrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] + b.a_[k];
        return c;
    }
    friend FMatrix operator-(const FMatrix& a, const FMatrix& b) {
        FMatrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] - b.a_[k];
        return c;
    }

    FMatrix adjoint() const {
        FMatrix c(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) c(j, i) = conj((*this)(i, j));
        return c;
    }

    R max_abs_sq() const {
        R m(0);
        for (const auto& z : a_) {
            R v = abs_sq(z);
            if (v > m) m = v;
        }
        return m;
    }

private:
    int rows_, cols_;
    std::vector<scalar> a_;
};

} // namespace rankone
