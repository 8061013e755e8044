#pragma once

#include <random>

#include "rankone/group.hpp"
#include "rankone/heisenberg.hpp"
#include "rankone/numeric_types.hpp"
#include "rankone/rng.hpp"

namespace rankone::testing {

template <class F, class R = double, class Rng>
Scalar<F, R> random_scalar(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    Scalar<F, R> z;
    for (int a = 0; a < F::dim; ++a) z[a] = R(nd(rng));
    return z;
}

template <class F, class Rng>
Scalar<F, Rational> random_rational_scalar(Rng& rng, int num_range = 20, int den_range = 7) {
    std::uniform_int_distribution<int> num(-num_range, num_range), den(1, den_range);
    Scalar<F, Rational> z;
    for (int a = 0; a < F::dim; ++a) z[a] = Rational(num(rng), den(rng));
    return z;
}

template <class F, class R = double, class Rng>
BoundaryPoint<F, R> random_boundary_point(int n, Rng& rng) {
    FVector<F, R> z(n);
    for (auto& c : z) c = random_scalar<F, R>(rng);
    const R nn = norm(z);
    for (auto& c : z) c = c / nn;
    return {z};
}

template <class F, class R = double, class Rng>
DiskPoint<F, R> random_disk_point(int n, Rng& rng, double radius = 0.8) {
    std::uniform_real_distribution<double> ur(0.0, radius);
    FVector<F, R> w(n);
    for (auto& c : w) c = random_scalar<F, R>(rng);
    R nn = norm(w);
    const R target = R(ur(rng));
    for (auto& c : w) c = c * (target / nn);
    return {w};
}

template <class F, class Rng>
HeisenbergPoint<F, Rational> random_rational_heis_point(int n, Rng& rng) {
    HeisenbergPoint<F, Rational> p = heis_origin<F, Rational>(n);
    for (auto& x : p.X) x = random_rational_scalar<F>(rng);
    Scalar<F, Rational> z = random_rational_scalar<F>(rng);
    z[0] = Rational(0);
    p.Z = z;
    return p;
}

template <class F>
HeisenbergPoint<F, QuadFloat> to_quad(const HeisenbergPoint<F, double>& p) {
    HeisenbergPoint<F, QuadFloat> q = heis_origin<F, QuadFloat>(int(p.X.size()) + 1);
    for (std::size_t k = 0; k < p.X.size(); ++k)
        for (int a = 0; a < F::dim; ++a) q.X[k][a] = QuadFloat(p.X[k][a]);
    for (int a = 0; a < F::dim; ++a) q.Z[a] = QuadFloat(p.Z[a]);
    return q;
}

} // namespace rankone::testing
