#pragma once

#include <cmath>
#include <complex>

#include "rankone/boundary.hpp"
#include "rankone/rng.hpp"

namespace rankone {

// Monte Carlo integration against the K-invariant probability measure mu_0
// on G/P, pulled back through the Cayley transform:
//
//   int f d mu_0 = c * int_{N-bar} (f o C)(p) B(p)^{-Q/2} dp.
//
// The proposal below samples the heavy-tailed density matched to B^{-Q/2}
// exactly (a Student-t product: X marginal and Z | X conditional are both
// multivariate t), so the self-normalized importance weights are constant and
// the unknown normalization c drops out.

template <class F, class Rng>
HeisenbergPoint<F, double> sample_mu0_pullback(int n, Rng& rng) {
    const int dX = F::dim * (n - 1);
    const int dZ = F::im_dim;
    const int Q = dX + 2 * dZ;
    std::normal_distribution<double> nd(0.0, 1.0);

    HeisenbergPoint<F, double> p = heis_origin<F, double>(n);
    std::gamma_distribution<double> chisq_x(0.5 * Q, 2.0);
    const double gx = std::sqrt(chisq_x(rng));
    for (auto& x : p.X)
        for (int a = 0; a < F::dim; ++a) x[a] = 2.0 * nd(rng) / gx;

    if (dZ > 0) {
        const double S = 1.0 + norm_sq(p.X) / 4.0;
        std::gamma_distribution<double> chisq_z(0.5 * (Q - dZ), 2.0);
        const double gz = std::sqrt(chisq_z(rng));
        for (int l = 1; l < F::dim; ++l) p.Z[l] = S * nd(rng) / gz;
    }
    return p;
}

// Unnormalized proposal density of sample_mu0_pullback at p.
template <class F>
double mu0_proposal_density(int n, const HeisenbergPoint<F, double>& p) {
    const int dX = F::dim * (n - 1);
    const int dZ = F::im_dim;
    const int Q = dX + 2 * dZ;
    const double S = 1.0 + norm_sq(p.X) / 4.0;
    double d = std::pow(S, -0.5 * (Q + dX));
    if (dZ > 0) d *= std::pow(S, -dZ) * std::pow(1.0 + abs_sq(p.Z) / (S * S), -0.5 * Q);
    return d;
}

// Importance weight B^{-Q/2} / proposal; constant by construction, kept
// explicit so the estimator stays correct under any proposal change.
template <class F>
double mu0_importance_weight(const CocycleContext& ctx, const HeisenbergPoint<F, double>& p) {
    return jacobian_cayley(p, ctx) / mu0_proposal_density<F>(ctx.n, p);
}

namespace detail {
inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}
} // namespace detail

// Self-normalized estimate of int f d mu_0. f maps BoundaryPoint -> V with
// V in {double, complex<double>}. Samples are drawn in fixed-size blocks with
// per-block seeds, so the result does not depend on evaluation order.
template <class F, class V = double, class Fn>
V quadrature_mu0(const CocycleContext& ctx, Fn&& f, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("quadrature_mu0: samples must be positive");
    constexpr std::size_t kBlock = 1 << 14;
    V num{};
    double den = 0.0;
    std::size_t done = 0, block = 0;
    while (done < samples) {
        auto rng = seeded_rng(seed, block++);
        const std::size_t count = std::min(kBlock, samples - done);
        V bnum{};
        double bden = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const auto p = sample_mu0_pullback<F>(ctx.n, rng);
            const double w = mu0_importance_weight<F>(ctx, p);
            const V fv = f(cayley(p));
            if (!detail::finite_value(fv)) throw std::domain_error("quadrature_mu0: non-finite integrand");
            bnum += fv * w;
            bden += w;
        }
        num += bnum;
        den += bden;
        done += count;
    }
    return num * (1.0 / den);
}

} // namespace rankone
