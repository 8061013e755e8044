#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "rankone/boundary.hpp"
#include "test_util.hpp"

using namespace rankone;

namespace {
constexpr int kN = 2;
using HP = HeisenbergPoint<HField, double>;

template <class F, class R>
Eigen::VectorXd flatten(const BoundaryPoint<F, R>& b) {
    Eigen::VectorXd v(F::dim * int(b.zeta.size()));
    int k = 0;
    for (const auto& z : b.zeta)
        for (int a = 0; a < F::dim; ++a) v[k++] = to_double_value(z[a]);
    return v;
}

// Numeric density of the Cayley pushforward of Lebesgue measure against the
// round sphere metric: sqrt(det(J^T J)) of the finite-difference differential.
template <class F>
double numeric_cayley_jacobian(const HeisenbergPoint<F, double>& p) {
    const int n = int(p.X.size()) + 1;
    const int dim = F::dim * (n - 1) + F::im_dim;
    const int ambient = F::dim * n;
    const double h = 1e-5;
    Eigen::MatrixXd J(ambient, dim);
    int col = 0;
    auto fd = [&](auto shift) {
        const auto plus = flatten(cayley(shift(h)));
        const auto minus = flatten(cayley(shift(-h)));
        J.col(col++) = (plus - minus) / (2.0 * h);
    };
    for (int slot = 0; slot < n - 1; ++slot)
        for (int comp = 0; comp < F::dim; ++comp)
            fd([&](double d) { return coordinate_shift_x(p, slot, comp, d); });
    for (int l = 0; l < F::im_dim; ++l)
        fd([&](double d) { return coordinate_shift_z(p, l, d); });
    return std::sqrt((J.transpose() * J).determinant());
}
} // namespace

TEST_CASE("homogeneous dimension") {
    REQUIRE(CocycleContext(FieldKind::H, 2).Q == 10);
    REQUIRE(CocycleContext(FieldKind::H, 3).Q == 14);
    REQUIRE(CocycleContext(FieldKind::C, 2).Q == 4);
    REQUIRE(CocycleContext(FieldKind::C, 5).Q == 10);
    REQUIRE(CocycleContext(FieldKind::R, 4).Q == 3);
    REQUIRE_THROWS_AS(CocycleContext(FieldKind::H, 1), std::invalid_argument);
}

TEST_CASE("B and B_t values") {
    const HP zero = heis_origin<HField, double>(kN);
    REQUIRE(B(zero) == 1.0);
    for (double t : {0.0, 0.5, 3.0}) {
        REQUIRE(std::abs(Bt(zero, t) - std::exp(-4.0 * t)) < 1e-15 * std::exp(-4.0 * t));
    }

    auto rng = seeded_rng(43);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int it = 0; it < 100000; ++it) {
        const auto p = random_heis_point<HField>(kN, 4.0, rng);
        const double t = ut(rng);
        const double bt = Bt(p, t);
        REQUIRE(bt >= std::exp(-4.0 * t) * (1.0 - 1e-14));
        REQUIRE(bt >= gauge_fourth(p) * (1.0 - 1e-14));
        REQUIRE(std::abs(Bt(p, 0.0) - B(p)) <= 1e-14 * B(p));
    }

    // the lower bounds are algebraic identities: check exactly over rationals
    for (int it = 0; it < 1000; ++it) {
        const auto rp = testing::random_rational_heis_point<HField>(kN, rng);
        std::uniform_int_distribution<int> num(1, 40);
        const Rational u(num(rng), 41);
        const Rational bt = Bt_u(rp, u);
        REQUIRE(bt >= u * u);
        REQUIRE(bt >= gauge_fourth(rp));
    }
}

TEST_CASE("cayley transform") {
    const HP zero = heis_origin<HField, double>(kN);
    const auto o = boundary_o<HField>(kN);
    REQUIRE(to_double_value(abs_sq(cayley(zero).zeta[kN - 1] - o.zeta[kN - 1])) == 0.0);

    auto rng = seeded_rng(45);
    for (int it = 0; it < 10000; ++it) {
        const auto p = random_heis_point<HField>(kN, 5.0, rng);
        REQUIRE(std::abs(norm_sq(cayley(p).zeta) - 1.0) < 1e-12);
    }

    // C(p) = exp(p) . o, the group-action route
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const auto p = random_heis_point<HField>(kN, 3.0, rng);
        const auto via_matrix = act_on_boundary(exp_to_group(p), o);
        const auto direct = cayley(p);
        for (int j = 0; j < kN; ++j)
            worst = std::max(worst, to_double_value(abs_sq(via_matrix.zeta[j] - direct.zeta[j])));
    }
    REQUIRE(std::sqrt(worst) < 1e-12);
}

TEST_CASE("z_n of the cayley transform") {
    const HP zero = heis_origin<HField, double>(kN);
    REQUIRE(z_n_of_cayley(zero) == Scalar<HField, double>(1));

    auto rng = seeded_rng(47);
    for (int it = 0; it < 10000; ++it) {
        const auto p = random_heis_point<HField>(kN, 4.0, rng);
        REQUIRE(to_double_value(abs_sq(z_n_of_cayley(p) - cayley(p).zeta[kN - 1])) < 1e-24);
    }
}

TEST_CASE("busemann cocycle") {
    auto rng = seeded_rng(49);
    std::uniform_real_distribution<double> ut(0.0, 5.0);

    for (int it = 0; it < 100; ++it) {
        const auto x = testing::random_disk_point<HField>(kN, rng);
        const auto zeta = testing::random_boundary_point<HField>(kN, rng);
        REQUIRE(std::abs(busemann(x, x, zeta)) < 1e-12);
    }

    // gamma_{0, a_t 0} = log |cosh t - sinh t z_n|
    for (int it = 0; it < 200; ++it) {
        const double t = ut(rng);
        const auto zeta = testing::random_boundary_point<HField>(kN, rng);
        const auto zero = origin_disk<HField>(kN);
        const double lhs = busemann(zero, act_on_disk(a_t<HField>(kN, t), zero), zeta);
        const auto q = Scalar<HField, double>(std::cosh(t)) - zeta.zeta[kN - 1] * std::sinh(t);
        REQUIRE(std::abs(lhs - std::log(abs(q))) < 1e-10);
    }

    // telescoping gamma_{x,y} + gamma_{y,w} = gamma_{x,w}
    for (int it = 0; it < 500; ++it) {
        const auto x = testing::random_disk_point<HField>(kN, rng);
        const auto y = testing::random_disk_point<HField>(kN, rng);
        const auto w = testing::random_disk_point<HField>(kN, rng);
        const auto zeta = testing::random_boundary_point<HField>(kN, rng);
        const double sum = busemann(x, y, zeta) + busemann(y, w, zeta);
        REQUIRE(std::abs(sum - busemann(x, w, zeta)) < 1e-10);
    }

    // scale invariance of the lift expression
    for (int it = 0; it < 100; ++it) {
        const auto x = testing::random_disk_point<HField>(kN, rng);
        const auto y = testing::random_disk_point<HField>(kN, rng);
        const auto zeta = testing::random_boundary_point<HField>(kN, rng);
        auto xl = lift(x);
        auto yl = lift(y);
        auto zl = lift(zeta);
        const double base = busemann_lifts(xl, yl, zl);
        const auto sx = testing::random_scalar<HField>(rng);
        const auto sy = testing::random_scalar<HField>(rng);
        const auto sz = testing::random_scalar<HField>(rng);
        REQUIRE(std::abs(busemann_lifts(xl * sx, yl * sy, zl * sz) - base) < 1e-10);
    }
}

TEST_CASE("lambda cocycle") {
    auto rng = seeded_rng(51);
    const auto o = boundary_o<HField>(kN);
    const auto id = GroupElement<HField, double>{kN, FMatrix<HField, double>::identity(kN + 1)};
    REQUIRE(std::abs(lambda_cocycle(id, o) - 1.0) < 1e-14);

    for (double t : {0.3, 1.0, 2.5}) {
        REQUIRE(std::abs(lambda_cocycle(a_t<HField>(kN, t), o) - std::exp(t)) < 1e-10 * std::exp(t));
    }
}

TEST_CASE("cocycle identity lambda_{a_t} o C = e^{-t} sqrt(B/B_t)") {
    auto rng = seeded_rng(53);

    // moderate t: double precision suffices
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    double worst = 0.0;
    for (int it = 0; it < 2000; ++it) {
        const auto p = random_heis_point<HField>(kN, 4.0, rng);
        const double t = ut(rng);
        const double lhs = lambda_cocycle(a_t<HField>(kN, t), cayley(p));
        const double rhs = std::exp(-t) * std::sqrt(B(p) / Bt(p, t));
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    REQUIRE(worst < 1e-10);

    // full t-range via the extended-precision route (the Busemann side loses
    // ~e^{-8t} of relative precision to cancellation)
    std::uniform_real_distribution<double> utl(0.0, 10.0);
    QuadFloat qworst(0);
    for (int it = 0; it < 300; ++it) {
        const auto p = testing::to_quad<HField>(random_heis_point<HField>(kN, 4.0, rng));
        const QuadFloat t(utl(rng));
        const QuadFloat lhs = lambda_cocycle(a_t<HField, QuadFloat>(kN, t), cayley(p));
        using std::exp;
        using std::sqrt;
        const QuadFloat rhs = exp(-t) * sqrt(B(p) / Bt(p, t));
        const QuadFloat err = abs(lhs - rhs) / rhs;
        if (err > qworst) qworst = err;
    }
    REQUIRE(qworst < QuadFloat(1e-9));
}

TEST_CASE("remark chain: lambda_{a_t}^{-2} o C = e^{2t} B^{-1} B_t, exactly") {
    auto rng = seeded_rng(55);
    // with r = tanh t rational, e^{2t} = (1+r)/(1-r) and u = e^{-2t} = (1-r)/(1+r)
    for (int it = 0; it < 300; ++it) {
        const auto p = testing::random_rational_heis_point<HField>(kN, rng);
        std::uniform_int_distribution<int> num(1, 30);
        const Rational r(num(rng), 31);
        const auto zn = z_n_of_cayley(p);
        // (1 - r^2)^{-1} |1 - r z_n|^2
        Scalar<HField, Rational> one(Rational(1));
        const Rational lhs = abs_sq(one - zn * r) / (Rational(1) - r * r);
        const Rational u = (Rational(1) - r) / (Rational(1) + r);
        const Rational rhs = (Rational(1) + r) / (Rational(1) - r) * Bt_u(p, u) / B(p);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("jacobian of the cayley transform") {
    const CocycleContext ctxH(FieldKind::H, kN);
    const HP zero = heis_origin<HField, double>(kN);
    REQUIRE(jacobian_cayley(zero, ctxH) == 1.0);

    auto rng = seeded_rng(57);
    for (int it = 0; it < 50; ++it) {
        const auto p = random_heis_point<HField>(kN, 2.0, rng);
        REQUIRE(std::abs(jacobian_cayley(p, ctxH) - std::pow(B(p), -5.0)) < 1e-12);
    }

    // finite-difference Jacobian oracle: the pushforward density against the
    // round metric is proportional to B^{-Q/2}, with a constant ratio
    for (FieldKind kind : {FieldKind::C, FieldKind::H}) {
        const CocycleContext ctx(kind, kN);
        double lo = 1e300, hi = 0.0;
        dispatch_field(kind, [&](auto tag) {
            using F = decltype(tag);
            for (int it = 0; it < 100; ++it) {
                const auto p = random_heis_point<F>(kN, 1.5, rng);
                const double ratio = numeric_cayley_jacobian<F>(p) / jacobian_cayley(p, ctx);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        });
        REQUIRE(hi / lo - 1.0 < 1e-5);
    }
}

TEST_CASE("smooth cutoff profile") {
    const auto chi = origin_cutoff<HField>(kN, 0.5, 1.0);
    auto rng = seeded_rng(59);
    REQUIRE(chi(heis_origin<HField, double>(kN)) == 1.0);
    for (int it = 0; it < 2000; ++it) {
        const auto p = random_heis_point<HField>(kN, 3.0, rng);
        const double g = gauge(p);
        const double v = chi(p);
        if (g <= 0.5) REQUIRE(v == 1.0);
        if (g >= 1.0) REQUIRE(v == 0.0);
        REQUIRE((v >= 0.0 && v <= 1.0));
    }

    // horizontal derivatives up to order 6 stay finite on the support
    double worst = 0.0;
    for (int it = 0; it < 40; ++it) {
        const auto p = random_heis_point<HField>(kN, 1.2, rng);
        std::function<double(const HP&)> f = [&](const HP& q) { return chi(q); };
        for (int order = 1; order <= 6; ++order) {
            std::uniform_int_distribution<int> uj(0, horizontal_dim<HField>(kN) - 1);
            const int j = uj(rng);
            auto prev = f;
            f = [prev, j](const HP& q) { return group_curve_derivative(prev, j, q, 1e-2); };
        }
        const double v = f(p);
        REQUIRE(std::isfinite(v));
        worst = std::max(worst, std::abs(v));
    }
    REQUIRE(std::isfinite(worst));

    const AnnulusCutoff<HField> psi(1.0, 1.5, 2.5, 3.0);
    REQUIRE(psi(heis_origin<HField, double>(kN)) == 0.0);
}
