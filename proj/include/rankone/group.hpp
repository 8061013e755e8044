#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

#include "rankone/linalg.hpp"

namespace rankone {

// G in {SO0(n,1), SU(n,1), Sp(n,1)} as (n+1)x(n+1) matrices over F preserving
// the sesquilinear form q(z, w) = -conj(z0) w0 + sum_{j>=1} conj(zj) wj.
template <class F, class R = double>
struct GroupElement {
    int n = 0;
    FMatrix<F, R> m;
};

// Point of the disk model of G/K: w in F^n, ||w|| < 1.
template <class F, class R = double>
struct DiskPoint {
    FVector<F, R> w;
};

// Point of the sphere model of G/P: zeta in F^n, ||zeta|| = 1.
template <class F, class R = double>
struct BoundaryPoint {
    FVector<F, R> zeta;
};

template <class F, class R>
Scalar<F, R> form_q(const FVector<F, R>& z, const FVector<F, R>& w) {
    if (z.size() != w.size() || z.empty())
        throw std::invalid_argument("form_q: vectors must share a positive length");
    Scalar<F, R> s = -(conj(z[0]) * w[0]);
    for (std::size_t j = 1; j < z.size(); ++j) s += conj(z[j]) * w[j];
    return s;
}

// Largest squared entry modulus of g* J g - J; zero iff g preserves q.
// Kept squared so the exact-rational path avoids square roots.
template <class F, class R>
R group_defect_sq(const GroupElement<F, R>& g) {
    const int d = g.n + 1;
    FMatrix<F, R> gj = g.m.adjoint();
    // right-multiply columns by J = diag(-1, 1, ..., 1): negate column 0 of g*.
    for (int i = 0; i < d; ++i) gj(i, 0) = -gj(i, 0);
    FMatrix<F, R> p = gj * g.m;
    p(0, 0) = p(0, 0) + Scalar<F, R>(1);
    for (int i = 1; i < d; ++i) p(i, i) = p(i, i) - Scalar<F, R>(1);
    return p.max_abs_sq();
}

template <class F, class R>
bool is_in_group(const GroupElement<F, R>& g, const R& tol = R(1e-10)) {
    return group_defect_sq(g) < tol * tol;
}

// g^{-1} = J g* J for g in O(q).
template <class F, class R>
GroupElement<F, R> group_inverse(const GroupElement<F, R>& g) {
    const int d = g.n + 1;
    GroupElement<F, R> h{g.n, g.m.adjoint()};
    for (int i = 1; i < d; ++i) {
        h.m(i, 0) = -h.m(i, 0);
        h.m(0, i) = -h.m(0, i);
    }
    return h;
}

template <class F, class R>
GroupElement<F, R> operator*(const GroupElement<F, R>& a, const GroupElement<F, R>& b) {
    if (a.n != b.n) throw std::invalid_argument("GroupElement: rank mismatch");
    return {a.n, a.m * b.m};
}

// One-parameter subgroup a_t: cosh/sinh corners around an identity middle
// block of size n-1.
template <class F, class R = double>
GroupElement<F, R> a_t(int n, const R& t) {
    using std::cosh;
    using std::sinh;
    GroupElement<F, R> g{n, FMatrix<F, R>::identity(n + 1)};
    const R ch = cosh(t), sh = sinh(t);
    g.m(0, 0) = Scalar<F, R>(ch);
    g.m(0, n) = Scalar<F, R>(sh);
    g.m(n, 0) = Scalar<F, R>(sh);
    g.m(n, n) = Scalar<F, R>(ch);
    return g;
}

template <class F, class R = double>
DiskPoint<F, R> origin_disk(int n) {
    return {FVector<F, R>(n)};
}

// The A-fixed boundary point o = (0, ..., 0, 1).
template <class F, class R = double>
BoundaryPoint<F, R> boundary_o(int n) {
    FVector<F, R> z(n);
    z[n - 1] = Scalar<F, R>(1);
    return {z};
}

template <class F, class R>
FVector<F, R> lift(const DiskPoint<F, R>& p) {
    FVector<F, R> v(p.w.size() + 1);
    v[0] = Scalar<F, R>(1);
    for (std::size_t j = 0; j < p.w.size(); ++j) v[j + 1] = p.w[j];
    return v;
}

template <class F, class R>
FVector<F, R> lift(const BoundaryPoint<F, R>& p) {
    FVector<F, R> v(p.zeta.size() + 1);
    v[0] = Scalar<F, R>(1);
    for (std::size_t j = 0; j < p.zeta.size(); ++j) v[j + 1] = p.zeta[j];
    return v;
}

// Projective action: apply g to the lift [1, w] and divide the remaining
// coordinates by the first one, on the right.
template <class F, class R>
FVector<F, R> projective_image(const GroupElement<F, R>& g, const FVector<F, R>& v) {
    FVector<F, R> u = g.m * v;
    const R a2 = abs_sq(u[0]);
    R scale(0);
    for (const auto& z : u) scale += abs_sq(z);
    if (!(a2 > scale * R(1e-28)))
        throw std::domain_error("projective action: vanishing first coordinate (matrix not in G?)");
    const Scalar<F, R> u0inv = inverse(u[0]);
    FVector<F, R> w(v.size() - 1);
    for (std::size_t j = 1; j < u.size(); ++j) w[j - 1] = u[j] * u0inv;
    return w;
}

template <class F, class R>
DiskPoint<F, R> act_on_disk(const GroupElement<F, R>& g, const DiskPoint<F, R>& p) {
    return {projective_image(g, lift(p))};
}

template <class F, class R>
BoundaryPoint<F, R> act_on_boundary(const GroupElement<F, R>& g, const BoundaryPoint<F, R>& p) {
    FVector<F, R> z = projective_image(g, lift(p));
    const R n = norm(z);
    for (auto& c : z) c = c / n;
    return {z};
}

// K-bi-invariant length l(g) = d_{G/K}(gK, K), normalized so l(a_t) = |t|.
// Computed through the disk model: atanh of the distance of g.0 from 0.
template <class F, class R>
R length_l(const GroupElement<F, R>& g) {
    using std::atanh;
    const R r = norm(act_on_disk(g, origin_disk<F, R>(g.n)).w);
    if (!(r < R(1))) throw std::domain_error("length_l: |g.0| >= 1 (numerical overflow)");
    return atanh(r);
}

namespace detail {

template <class F, class R, class Rng>
Scalar<F, R> gaussian_scalar(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Scalar<F, R> z;
    for (int a = 0; a < F::dim; ++a) z[a] = R(nd(rng));
    return z;
}

} // namespace detail

// Random element of K as diag(u0, U1) with |u0| = 1 and U1 an F-unitary
// n x n block, built by Gram-Schmidt on a Gaussian matrix.
template <class F, class R = double, class Rng>
GroupElement<F, R> random_k_element(int n, Rng& rng) {
    using std::sqrt;
    FMatrix<F, R> u(n, n);
    std::vector<FVector<F, R>> cols(n, FVector<F, R>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) cols[j][i] = detail::gaussian_scalar<F, R>(rng);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            const Scalar<F, R> c = hermitian_dot(cols[k], cols[j]);
            for (int i = 0; i < n; ++i) cols[j][i] -= cols[k][i] * c;
        }
        const R nrm = norm(cols[j]);
        for (int i = 0; i < n; ++i) cols[j][i] = cols[j][i] / nrm;
    }
    GroupElement<F, R> g{n, FMatrix<F, R>(n + 1, n + 1)};
    Scalar<F, R> u0 = detail::gaussian_scalar<F, R>(rng);
    g.m(0, 0) = u0 / abs(u0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.m(i + 1, j + 1) = cols[j][i];
    return g;
}

// Random g = k1 a_t k2 with t drawn uniformly from [0, tmax].
template <class F, class R = double, class Rng>
GroupElement<F, R> random_group_element(int n, double tmax, Rng& rng) {
    std::uniform_real_distribution<double> ud(0.0, tmax);
    GroupElement<F, R> k1 = random_k_element<F, R>(n, rng);
    GroupElement<F, R> k2 = random_k_element<F, R>(n, rng);
    return k1 * a_t<F, R>(n, R(ud(rng))) * k2;
}

} // namespace rankone
