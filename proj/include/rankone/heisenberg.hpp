#pragma once

#include <functional>
#include <random>
#include <type_traits>

#include "rankone/group.hpp"

namespace rankone {

template <class R>
double to_double_value(const R& x) {
    if constexpr (std::is_same_v<R, double>) return x;
    else return x.template convert_to<double>();
}

// Element of the 2-step nilpotent group N-bar = F^{n-1} + Im(F), identified
// with its Lie algebra via exp. Z has zero real part.
template <class F, class R = double>
struct HeisenbergPoint {
    FVector<F, R> X;
    Scalar<F, R> Z;
};

template <class F, class R>
HeisenbergPoint<F, R> heis_point(FVector<F, R> X, Scalar<F, R> Z) {
    if (!(re(Z) == R(0))) throw std::invalid_argument("heis_point: Z must be purely imaginary");
    return {std::move(X), Z};
}

template <class F, class R = double>
HeisenbergPoint<F, R> heis_origin(int n) {
    return {FVector<F, R>(n - 1), Scalar<F, R>()};
}

// [(X1,Z1),(X2,Z2)] = (0, Im(X1* X2)).
template <class F, class R>
HeisenbergPoint<F, R> bracket(const HeisenbergPoint<F, R>& p, const HeisenbergPoint<F, R>& q) {
    HeisenbergPoint<F, R> r{FVector<F, R>(p.X.size()), im_part(hermitian_dot(p.X, q.X))};
    return r;
}

// BCH product for a 2-step group: p q = p + q + [p, q]/2.
template <class F, class R>
HeisenbergPoint<F, R> group_law(const HeisenbergPoint<F, R>& p, const HeisenbergPoint<F, R>& q) {
    HeisenbergPoint<F, R> r{FVector<F, R>(p.X.size()), Scalar<F, R>()};
    for (std::size_t k = 0; k < p.X.size(); ++k) r.X[k] = p.X[k] + q.X[k];
    r.Z = p.Z + q.Z + im_part(hermitian_dot(p.X, q.X)) / R(2);
    return r;
}

template <class F, class R>
HeisenbergPoint<F, R> group_inverse(const HeisenbergPoint<F, R>& p) {
    HeisenbergPoint<F, R> r{FVector<F, R>(p.X.size()), -p.Z};
    for (std::size_t k = 0; k < p.X.size(); ++k) r.X[k] = -p.X[k];
    return r;
}

// exp: n-bar -> N-bar < G as the explicit 3-block matrix (middle block of
// size n-1).
template <class F, class R>
GroupElement<F, R> exp_to_group(const HeisenbergPoint<F, R>& p) {
    const int n = int(p.X.size()) + 1;
    GroupElement<F, R> g{n, FMatrix<F, R>::identity(n + 1)};
    const Scalar<F, R> w(norm_sq(p.X) / R(8));
    const Scalar<F, R> z2 = p.Z / R(2);
    g.m(0, 0) = Scalar<F, R>(1) + w + z2;
    g.m(0, n) = w + z2;
    g.m(n, 0) = -w - z2;
    g.m(n, n) = Scalar<F, R>(1) - w - z2;
    for (int k = 0; k < n - 1; ++k) {
        const Scalar<F, R> xh = p.X[k] / R(2);
        const Scalar<F, R> xs = conj(p.X[k]) / R(2);
        g.m(0, k + 1) = -xs;
        g.m(n, k + 1) = xs;
        g.m(k + 1, 0) = -xh;
        g.m(k + 1, n) = -xh;
    }
    return g;
}

// delta_t with explicit factor lambda = e^t: (X, Z) -> (lambda X, lambda^2 Z).
// Exact when lambda is exact.
template <class F, class R>
HeisenbergPoint<F, R> dilation_by(const HeisenbergPoint<F, R>& p, const R& lambda) {
    HeisenbergPoint<F, R> r{FVector<F, R>(p.X.size()), p.Z * (lambda * lambda)};
    for (std::size_t k = 0; k < p.X.size(); ++k) r.X[k] = p.X[k] * lambda;
    return r;
}

template <class F, class R>
HeisenbergPoint<F, R> dilation(const HeisenbergPoint<F, R>& p, const R& t) {
    using std::exp;
    return dilation_by(p, exp(t));
}

// Fourth power of the homogeneous gauge: ||X||^4/16 + |Z|^2. Exact over
// rationals.
template <class F, class R>
R gauge_fourth(const HeisenbergPoint<F, R>& p) {
    const R ns = norm_sq(p.X);
    return ns * ns / R(16) + abs_sq(p.Z);
}

template <class F, class R>
R gauge(const HeisenbergPoint<F, R>& p) {
    using std::sqrt;
    return sqrt(sqrt(gauge_fourth(p)));
}

inline double haar_weight(FieldKind k) { return double(1 << field_im_dim(k)); }

// --- horizontal directions -------------------------------------------------
//
// The orthonormal basis of n-bar_1 is the real coordinate basis of F^{n-1}:
// direction j touches slot j / dim(F), basis component j % dim(F).

template <class F>
constexpr int horizontal_dim(int n) {
    return F::dim * (n - 1);
}

struct HorizontalDirection {
    int slot;
    int comp;
};

template <class F>
HorizontalDirection horizontal_direction(int j) {
    return {j / F::dim, j % F::dim};
}

// Coefficients of the vertical correction of E_j at X: the left-invariant
// field is E_j = d/dx_{slot,comp} + (1/2) sum_l [conj(X_slot) e_comp]_{l+1} d/dz_l.
template <class F, class R>
std::array<R, 3> vertical_coefficients(const FVector<F, R>& X, int j) {
    const auto dir = horizontal_direction<F>(j);
    std::array<R, 3> c{R(0), R(0), R(0)};
    const Scalar<F, R>& x = X[dir.slot];
    for (int m = 0; m < F::dim; ++m) {
        const BasisProduct t = kBasisTable[m][dir.comp];
        if (t.index == 0) continue;
        R v = x[m] / R(2);
        if (conj_sign(m) * t.sign < 0) v = -v;
        c[t.index - 1] += v;
    }
    return c;
}

// Shift p by amount h along coordinate direction: either an X-component or a
// Z-component.
template <class F, class R>
HeisenbergPoint<F, R> coordinate_shift_x(HeisenbergPoint<F, R> p, int slot, int comp, const R& h) {
    p.X[slot][comp] += h;
    return p;
}

template <class F, class R>
HeisenbergPoint<F, R> coordinate_shift_z(HeisenbergPoint<F, R> p, int l, const R& h) {
    p.Z[l + 1] += h;
    return p;
}

// First-order action of the left-invariant field E_j on a scalar function,
// via centered differences of the coordinate expression.
template <class F, class R, class Fn>
R horizontal_derivative(Fn&& f, int j, const HeisenbergPoint<F, R>& p, const R& h = R(1e-5)) {
    const auto dir = horizontal_direction<F>(j);
    const R two_h = R(2) * h;
    R d = (f(coordinate_shift_x(p, dir.slot, dir.comp, h)) -
           f(coordinate_shift_x(p, dir.slot, dir.comp, -h))) /
          two_h;
    const auto c = vertical_coefficients(p.X, j);
    for (int l = 0; l < F::im_dim; ++l) {
        if (c[l] == R(0)) continue;
        d += c[l] * (f(coordinate_shift_z(p, l, h)) - f(coordinate_shift_z(p, l, -h))) / two_h;
    }
    return d;
}

// Derivative along the group curve s -> p.exp(s e_j); used as an independent
// cross-check of the coordinate expression.
template <class F, class R, class Fn>
R group_curve_derivative(Fn&& f, int j, const HeisenbergPoint<F, R>& p, const R& h = R(1e-5)) {
    const auto dir = horizontal_direction<F>(j);
    HeisenbergPoint<F, R> step = heis_origin<F, R>(int(p.X.size()) + 1);
    step.X[dir.slot] = Scalar<F, R>::basis(dir.comp) * h;
    HeisenbergPoint<F, R> back = step;
    back.X[dir.slot] = -back.X[dir.slot];
    return (f(group_law(p, step)) - f(group_law(p, back))) / (R(2) * h);
}

// Uniform sample from the coordinate box with gauge at most gmax, by
// rejection.
template <class F, class R = double, class Rng>
HeisenbergPoint<F, R> random_heis_point(int n, double gauge_max, Rng& rng) {
    const double bx = 2.0 * gauge_max;
    const double bz = gauge_max * gauge_max;
    std::uniform_real_distribution<double> ux(-bx, bx), uz(-bz, bz);
    const double g4max = std::pow(gauge_max, 4.0);
    for (;;) {
        HeisenbergPoint<F, R> p = heis_origin<F, R>(n);
        for (auto& x : p.X)
            for (int a = 0; a < F::dim; ++a) x[a] = R(ux(rng));
        for (int l = 1; l < F::dim; ++l) p.Z[l] = R(uz(rng));
        if (to_double_value(gauge_fourth(p)) <= g4max) return p;
    }
}

} // namespace rankone
