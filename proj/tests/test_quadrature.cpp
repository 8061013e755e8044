#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "rankone/quadrature.hpp"
#include "test_util.hpp"

using namespace rankone;

namespace {
constexpr int kN = 2;
}

TEST_CASE("normalization and matched proposal") {
    const CocycleContext ctx(FieldKind::H, kN);
    const double mass = quadrature_mu0<HField>(ctx, [](const auto&) { return 1.0; }, 10000, 101);
    REQUIRE(mass == Catch::Approx(1.0).margin(1e-15));

    // importance weights of the matched Student-t proposal are constant
    auto rng = seeded_rng(103);
    double wmin = 1e300, wmax = 0.0;
    for (int it = 0; it < 20000; ++it) {
        const auto p = sample_mu0_pullback<HField>(kN, rng);
        const double w = mu0_importance_weight<HField>(ctx, p);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    REQUIRE(wmax / wmin - 1.0 < 1e-10);

    REQUIRE_THROWS_AS(
        quadrature_mu0<HField>(ctx, [](const auto&) { return 1.0; }, 0, 1),
        std::invalid_argument);
}

TEST_CASE("change of variables d mu_{g0} = lambda_g^Q d mu_0") {
    const CocycleContext ctx(FieldKind::C, kN);
    auto rng = seeded_rng(105);
    const std::size_t samples = 200000;

    for (int it = 0; it < 3; ++it) {
        const auto g = random_group_element<CField>(kN, 0.8, rng);
        const auto ginv = group_inverse(g);
        const auto f = [&](const BoundaryPoint<CField, double>& z) {
            return 1.0 + 0.5 * re(z.zeta[kN - 1]);
        };
        const auto pulled = [&](const BoundaryPoint<CField, double>& z) {
            const double lg = lambda_cocycle(g, z);
            return f(act_on_boundary(ginv, z)) * std::pow(lg, double(ctx.Q));
        };
        const double lhs = quadrature_mu0<CField>(ctx, pulled, samples, 200 + it);
        const double rhs = quadrature_mu0<CField>(ctx, f, samples, 200 + it);
        REQUIRE(std::abs(lhs - rhs) / std::abs(rhs) < 3.0 / std::sqrt(double(samples)));
    }
}

TEST_CASE("hemisphere symmetry of mu_0") {
    const CocycleContext ctx(FieldKind::R, 3);
    const std::size_t samples = 100000;
    const auto indicator = [](const BoundaryPoint<RField, double>& z) {
        return re(z.zeta[2]) > 0.0 ? 1.0 : 0.0;
    };
    const double est = quadrature_mu0<RField>(ctx, indicator, samples, 301);
    REQUIRE(std::abs(est - 0.5) < 4.0 / std::sqrt(double(samples)));

    // antipodal pairing: the symmetrized estimator is exactly 1/2
    auto rng = seeded_rng(303);
    double acc = 0.0;
    const int m = 20000;
    for (int it = 0; it < m; ++it) {
        const auto p = sample_mu0_pullback<RField>(3, rng);
        auto z = cayley(p);
        BoundaryPoint<RField, double> zm = z;
        for (auto& c : zm.zeta) c = -c;
        acc += 0.5 * (indicator(z) + indicator(zm));
    }
    REQUIRE(std::abs(acc / m - 0.5) < 1e-12);
}

TEST_CASE("complex integrands") {
    const CocycleContext ctx(FieldKind::C, kN);
    using Cplx = std::complex<double>;
    const auto f = [](const BoundaryPoint<CField, double>& z) {
        return Cplx(re(z.zeta[0]), re(z.zeta[1]));
    };
    // mean of a coordinate over the sphere vanishes
    const Cplx est = quadrature_mu0<CField, Cplx>(ctx, f, 200000, 401);
    REQUIRE(std::abs(est) < 5.0 / std::sqrt(200000.0));
}
