#pragma once

#include "rankone/heisenberg.hpp"

namespace rankone {

// Geometry constants of the pair (G, N-bar): homogeneous dimension
// Q = dim(n1) + 2 dim(n2).
struct CocycleContext {
    FieldKind kind;
    int n;
    int Q;

    CocycleContext(FieldKind k, int rank)
        : kind(k), n(rank), Q(field_dim(k) * (rank - 1) + 2 * field_im_dim(k)) {
        if (rank < 2) throw std::invalid_argument("CocycleContext: n must be >= 2");
    }
};

// B(X, Z) = (1 + ||X||^2/4)^2 + |Z|^2, the Cayley denominator.
template <class F, class R>
R B(const HeisenbergPoint<F, R>& p) {
    const R n4 = R(1) + norm_sq(p.X) / R(4);
    return n4 * n4 + abs_sq(p.Z);
}

// B_t with u = e^{-2t} passed explicitly; polynomial in u, so exact on exact
// inputs.
template <class F, class R>
R Bt_u(const HeisenbergPoint<F, R>& p, const R& u) {
    const R n4 = u + norm_sq(p.X) / R(4);
    return n4 * n4 + abs_sq(p.Z);
}

template <class F, class R>
R Bt(const HeisenbergPoint<F, R>& p, const R& t) {
    using std::exp;
    return Bt_u(p, exp(R(-2) * t));
}

// Cayley transform C: N-bar -> G/P - {-o}, by the closed formula
//   B^{-1} ( -X (1 + ||X||^2/4 - Z),  1 - ||X||^4/16 - |Z|^2 - 2Z ).
template <class F, class R>
BoundaryPoint<F, R> cayley(const HeisenbergPoint<F, R>& p) {
    const int n = int(p.X.size()) + 1;
    const R ns = norm_sq(p.X);
    const R binv = R(1) / B(p);
    const Scalar<F, R> head = Scalar<F, R>(R(1) + ns / R(4)) - p.Z;
    FVector<F, R> z(n);
    for (int k = 0; k < n - 1; ++k) z[k] = -(p.X[k] * head) * binv;
    z[n - 1] =
        (Scalar<F, R>(R(1) - ns * ns / R(16) - abs_sq(p.Z)) - R(2) * p.Z) * binv;
    return {z};
}

// Last F-coordinate of the Cayley transform by the closed chain
// z_n = -1 + 2 B^{-1} N - 2 B^{-1} Z with N = 1 + ||X||^2/4. Exact over
// rationals.
template <class F, class R>
Scalar<F, R> z_n_of_cayley(const HeisenbergPoint<F, R>& p) {
    const R N = R(1) + norm_sq(p.X) / R(4);
    const R binv = R(1) / (N * N + abs_sq(p.Z));
    return Scalar<F, R>(R(-1) + R(2) * binv * N) - (R(2) * binv) * p.Z;
}

// Busemann cocycle on arbitrary lifts; the expression is scale-invariant.
template <class F, class R>
R busemann_lifts(const FVector<F, R>& xl, const FVector<F, R>& yl, const FVector<F, R>& zl) {
    using std::log;
    using std::sqrt;
    const R qyz = abs_sq(form_q(yl, zl));
    const R qxz = abs_sq(form_q(xl, zl));
    const R qxx = abs_sq(form_q(xl, xl));
    const R qyy = abs_sq(form_q(yl, yl));
    if (!(qxz > R(0)) || !(qyy > R(0)))
        throw std::domain_error("busemann: degenerate pairing q(x, z) = 0");
    return log(qyz / qxz) / R(2) + log(qxx / qyy) / R(4);
}

template <class F, class R>
R busemann(const DiskPoint<F, R>& x, const DiskPoint<F, R>& y, const BoundaryPoint<F, R>& z) {
    return busemann_lifts(lift(x), lift(y), lift(z));
}

// lambda_g = e^{-gamma_{0, g0}}; controls the measure change
// d mu_{g0} = lambda_g^Q d mu_0.
template <class F, class R>
R lambda_cocycle(const GroupElement<F, R>& g, const BoundaryPoint<F, R>& zeta) {
    using std::exp;
    const DiskPoint<F, R> zero = origin_disk<F, R>(g.n);
    return exp(-busemann(zero, act_on_disk(g, zero), zeta));
}

// Jacobian of the Cayley transform with respect to d mu_0: B^{-Q/2}.
template <class F, class R>
R jacobian_cayley(const HeisenbergPoint<F, R>& p, const CocycleContext& ctx) {
    using std::pow;
    return pow(B(p), R(-ctx.Q) / R(2));
}

// --- smooth cutoffs ---------------------------------------------------------

namespace detail {

// C-infinity step: 0 for y <= 0, 1 for y >= 1, strictly increasing between.
inline double smooth_step(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / y);
    const double b = std::exp(-1.0 / (1.0 - y));
    return a / (a + b);
}

} // namespace detail

// Gauge-radial bump centered at a point of N-bar: identically 1 inside
// inner_radius and 0 outside outer_radius (radii measured in the gauge of
// center^{-1} p).
template <class F, class R = double>
struct SmoothCutoff {
    HeisenbergPoint<F, R> center;
    double inner_radius;
    double outer_radius;

    SmoothCutoff(HeisenbergPoint<F, R> c, double r0, double r1)
        : center(std::move(c)), inner_radius(r0), outer_radius(r1) {
        if (!(0 < r0 && r0 < r1)) throw std::invalid_argument("SmoothCutoff: need 0 < inner < outer");
    }

    double operator()(const HeisenbergPoint<F, R>& p) const {
        const double r = to_double_value(gauge(group_law(group_inverse(center), p)));
        return detail::smooth_step((outer_radius - r) / (outer_radius - inner_radius));
    }
};

template <class F, class R = double>
SmoothCutoff<F, R> origin_cutoff(int n, double inner, double outer) {
    return SmoothCutoff<F, R>(heis_origin<F, R>(n), inner, outer);
}

// Smooth annulus profile: 1 on [rise_hi, fall_lo] in the gauge, vanishing
// outside (rise_lo, fall_hi). Vanishes on a gauge ball around the origin.
template <class F, class R = double>
struct AnnulusCutoff {
    double rise_lo, rise_hi, fall_lo, fall_hi;

    AnnulusCutoff(double a0, double a1, double b0, double b1)
        : rise_lo(a0), rise_hi(a1), fall_lo(b0), fall_hi(b1) {
        if (!(0 < a0 && a0 < a1 && a1 <= b0 && b0 < b1))
            throw std::invalid_argument("AnnulusCutoff: radii must be increasing");
    }

    double operator()(const HeisenbergPoint<F, R>& p) const {
        const double r = to_double_value(gauge(p));
        return detail::smooth_step((r - rise_lo) / (rise_hi - rise_lo)) *
               detail::smooth_step((fall_hi - r) / (fall_hi - fall_lo));
    }
};

} // namespace rankone
