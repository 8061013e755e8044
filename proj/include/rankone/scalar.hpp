#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "rankone/field.hpp"

namespace rankone {

// An element of F in {R, C, H} with components over R (double for numerics,
// an exact rational or extended-precision float elsewhere). Component 0 is
// the real part; multiplication follows the basis table, so conjugation is
// an anti-automorphism and |zw| = |z||w|.
template <class F, class R = double>
class Scalar {
public:
    using field = F;
    using real_type = R;
    static constexpr int dim = F::dim;

    Scalar() {
        for (auto& x : c_) x = R(0);
    }
    Scalar(const R& re) : Scalar() { c_[0] = re; }
    Scalar(int re) : Scalar(R(re)) {}

    static Scalar from_components(const std::array<R, dim>& c) {
        Scalar z;
        z.c_ = c;
        return z;
    }

    // e_a basis element (0 = 1, 1 = i, ...).
    static Scalar basis(int a) {
        Scalar z;
        z.c_[a] = R(1);
        return z;
    }

    const R& operator[](int a) const { return c_[a]; }
    R& operator[](int a) { return c_[a]; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int k = 0; k < dim; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int k = 0; k < dim; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    Scalar operator-() const {
        Scalar r;
        for (int k = 0; k < dim; ++k) r.c_[k] = -c_[k];
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int p = 0; p < dim; ++p) {
            if (a.c_[p] == R(0)) continue;
            for (int q = 0; q < dim; ++q) {
                const auto t = kBasisTable[p][q];
                if (t.sign > 0)
                    r.c_[t.index] += a.c_[p] * b.c_[q];
                else
                    r.c_[t.index] -= a.c_[p] * b.c_[q];
            }
        }
        return r;
    }
    friend Scalar operator*(const R& s, const Scalar& a) {
        Scalar r;
        for (int k = 0; k < dim; ++k) r.c_[k] = s * a.c_[k];
        return r;
    }
    friend Scalar operator*(const Scalar& a, const R& s) { return s * a; }
    friend Scalar operator/(const Scalar& a, const R& s) {
        Scalar r;
        for (int k = 0; k < dim; ++k) r.c_[k] = a.c_[k] / s;
        return r;
    }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& z) {
        static constexpr const char* names[4] = {"", "i", "j", "k"};
        os << "(";
        for (int k = 0; k < dim; ++k) os << (k ? " + " : "") << z.c_[k] << names[k];
        return os << ")";
    }

private:
    std::array<R, dim> c_;
};

template <class F, class R>
Scalar<F, R> conj(const Scalar<F, R>& z) {
    Scalar<F, R> r = z;
    for (int k = 1; k < F::dim; ++k) r[k] = -r[k];
    return r;
}

template <class F, class R>
R re(const Scalar<F, R>& z) {
    return z[0];
}

// Imaginary part as an element of F with zero real component.
template <class F, class R>
Scalar<F, R> im_part(const Scalar<F, R>& z) {
    Scalar<F, R> r = z;
    r[0] = R(0);
    return r;
}

template <class F, class R>
R abs_sq(const Scalar<F, R>& z) {
    R s(0);
    for (int k = 0; k < F::dim; ++k) s += z[k] * z[k];
    return s;
}

template <class F, class R>
R abs(const Scalar<F, R>& z) {
    using std::sqrt;
    return sqrt(abs_sq(z));
}

// z^{-1} = conj(z) / |z|^2; requires division in R.
template <class F, class R>
Scalar<F, R> inverse(const Scalar<F, R>& z) {
    return conj(z) / abs_sq(z);
}

} // namespace rankone
