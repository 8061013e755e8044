#include <catch2/catch_amalgamated.hpp>

#include "rankone/group.hpp"
#include "test_util.hpp"

using namespace rankone;

namespace {
constexpr int kN = 2;

template <class F, class R>
double mat_dist(const FMatrix<F, R>& a, const FMatrix<F, R>& b) {
    using std::sqrt;
    return to_double_value(sqrt((a - b).max_abs_sq()));
}

template <class F>
FVector<F, double> basis_vec(int len, int pos) {
    FVector<F, double> v(len);
    v[pos] = Scalar<F, double>(1);
    return v;
}
} // namespace

TEST_CASE("sesquilinear form signature") {
    using F = HField;
    const int d = kN + 1;
    REQUIRE(re(form_q(basis_vec<F>(d, 0), basis_vec<F>(d, 0))) == -1.0);
    REQUIRE(re(form_q(basis_vec<F>(d, 1), basis_vec<F>(d, 1))) == 1.0);
    FVector<F, double> o_lift(d);
    o_lift[0] = o_lift[d - 1] = Scalar<F, double>(1);
    REQUIRE(abs_sq(form_q(o_lift, o_lift)) == 0.0);
    REQUIRE_THROWS_AS(form_q(o_lift, basis_vec<F>(d - 1, 0)), std::invalid_argument);
}

TEST_CASE("a_t is a one-parameter subgroup") {
    using F = HField;
    REQUIRE(mat_dist(a_t<F>(kN, 0.0).m, FMatrix<F, double>::identity(kN + 1)) == 0.0);
    const double s = 0.7, t = 1.9;
    REQUIRE(mat_dist((a_t<F>(kN, s) * a_t<F>(kN, t)).m, a_t<F>(kN, s + t).m) < 1e-12);
    REQUIRE(group_defect_sq(a_t<F>(kN, 2.3)) < 1e-24);
}

TEST_CASE("disk action") {
    using F = HField;
    auto rng = seeded_rng(21);
    const auto id = GroupElement<F, double>{kN, FMatrix<F, double>::identity(kN + 1)};
    const auto w = testing::random_disk_point<F>(kN, rng);
    const auto w2 = act_on_disk(id, w);
    for (int j = 0; j < kN; ++j) REQUIRE(to_double_value(abs_sq(w2.w[j] - w.w[j])) < 1e-30);

    // K fixes the origin
    for (int it = 0; it < 20; ++it) {
        const auto k = random_k_element<F>(kN, rng);
        REQUIRE(group_defect_sq(k) < 1e-24);
        REQUIRE(norm_sq(act_on_disk(k, origin_disk<F>(kN)).w) < 1e-28);
    }

    // a_t moves the origin along the last axis to tanh t
    const auto p = act_on_disk(a_t<F>(kN, 1.0), origin_disk<F>(kN));
    REQUIRE(std::abs(re(p.w[kN - 1]) - std::tanh(1.0)) < 1e-15);
    REQUIRE(abs_sq(p.w[0]) < 1e-30);
}

TEST_CASE("boundary action stays on the sphere") {
    using F = HField;
    auto rng = seeded_rng(23);
    const auto o = boundary_o<F>(kN);

    const auto fixed = act_on_boundary(a_t<F>(kN, 1.4), o);
    REQUIRE(std::abs(norm(fixed.zeta) - 1.0) < 1e-14);
    REQUIRE(to_double_value(abs_sq(fixed.zeta[kN - 1] - Scalar<F, double>(1))) < 1e-28);

    for (int it = 0; it < 200; ++it) {
        const auto g = random_group_element<F>(kN, 2.0, rng);
        const auto z = act_on_boundary(g, testing::random_boundary_point<F>(kN, rng));
        REQUIRE(std::abs(norm(z.zeta) - 1.0) < 1e-12);
    }
}

TEST_CASE("form invariance under random group elements") {
    using F = HField;
    auto rng = seeded_rng(25);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const auto g = random_group_element<F>(kN, 2.0, rng);
        FVector<F, double> z(kN + 1), w(kN + 1);
        for (auto& c : z) c = testing::random_scalar<F>(rng);
        for (auto& c : w) c = testing::random_scalar<F>(rng);
        const auto lhs = form_q(g.m * z, g.m * w);
        const auto rhs = form_q(z, w);
        worst = std::max(worst, to_double_value(abs_sq(lhs - rhs)));
    }
    REQUIRE(std::sqrt(worst) < 1e-10);
}

TEST_CASE("group membership is closed under product and inverse") {
    using F = CField;
    auto rng = seeded_rng(27);
    for (int it = 0; it < 50; ++it) {
        const auto g = random_group_element<F>(kN, 3.0, rng);
        const auto h = random_group_element<F>(kN, 3.0, rng);
        REQUIRE(is_in_group(g * h));
        REQUIRE(is_in_group(group_inverse(g)));
        REQUIRE(mat_dist((g * group_inverse(g)).m, FMatrix<F, double>::identity(kN + 1)) < 1e-12);
    }
}

TEST_CASE("length function") {
    using F = HField;
    auto rng = seeded_rng(29);
    REQUIRE(std::abs(length_l(a_t<F>(kN, 2.0)) - 2.0) < 1e-12);

    for (int it = 0; it < 25; ++it) {
        const auto k = random_k_element<F>(kN, rng);
        REQUIRE(std::abs(length_l(k)) < 1e-7);
        const auto k2 = random_k_element<F>(kN, rng);
        REQUIRE(std::abs(length_l(k * a_t<F>(kN, 3.0) * k2) - 3.0) < 1e-9);
    }

    // K-bi-invariance for generic g
    for (int it = 0; it < 25; ++it) {
        const auto g = random_group_element<F>(kN, 2.5, rng);
        const auto k = random_k_element<F>(kN, rng);
        const auto k2 = random_k_element<F>(kN, rng);
        REQUIRE(std::abs(length_l(k * g * k2) - length_l(g)) < 1e-9);
    }
}
