#include <catch2/catch_amalgamated.hpp>

#include "rankone/numeric_types.hpp"
#include "rankone/scalar.hpp"
#include "test_util.hpp"

using namespace rankone;

namespace {
using HQ = Scalar<HField, double>;
using CQ = Scalar<CField, double>;

template <class F, class R>
double dist(const Scalar<F, R>& a, const Scalar<F, R>& b) {
    return to_double_value(abs_sq(a - b));
}
} // namespace

TEST_CASE("quaternion multiplication table") {
    const HQ i = HQ::basis(1), j = HQ::basis(2), k = HQ::basis(3);
    REQUIRE(i * j == k);
    REQUIRE(j * k == i);
    REQUIRE(k * i == j);
    REQUIRE(j * i == -k);
    REQUIRE(i * i == HQ(-1));
    REQUIRE(j * j == HQ(-1));
    REQUIRE(k * k == HQ(-1));

    auto rng = seeded_rng(7);
    for (int it = 0; it < 50; ++it) {
        const HQ z = testing::random_scalar<HField>(rng);
        REQUIRE(dist(z * HQ(1), z) == 0.0);
        REQUIRE(dist(HQ(1) * z, z) == 0.0);
    }
}

TEST_CASE("complex arithmetic embeds") {
    const CQ one(1), i = CQ::basis(1);
    REQUIRE((one + i) * (one - i) == CQ(2));
}

TEST_CASE("real and imaginary parts") {
    CQ z(1);
    z[1] = 2.0;
    REQUIRE(re(z) == 1.0);
    REQUIRE(im_part(HQ(3)) == HQ(0));
    HQ w(1);
    w[1] = w[2] = w[3] = 1.0;
    REQUIRE(abs(w) == 2.0);
}

TEST_CASE("modulus is multiplicative") {
    auto rng = seeded_rng(11);
    double worst = 0.0;
    for (int it = 0; it < 100000; ++it) {
        const HQ z = testing::random_scalar<HField>(rng);
        const HQ w = testing::random_scalar<HField>(rng);
        const double lhs = abs(z * w);
        const double rhs = abs(z) * abs(w);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    REQUIRE(worst < 1e-12);
}

TEST_CASE("conjugation is an anti-automorphism, exactly over rationals") {
    using S = Scalar<HField, Rational>;
    auto rng = seeded_rng(13);
    for (int it = 0; it < 300; ++it) {
        const S z = testing::random_rational_scalar<HField>(rng);
        const S w = testing::random_rational_scalar<HField>(rng);
        REQUIRE(conj(z * w) == conj(w) * conj(z));
        // associativity of the product
        const S v = testing::random_rational_scalar<HField>(rng);
        REQUIRE((z * w) * v == z * (w * v));
        // re/im split
        S two_re = z + conj(z);
        S two_im = z - conj(z);
        REQUIRE(S(re(z)) + S(re(z)) == two_re);
        REQUIRE(im_part(z) + im_part(z) == two_im);
        // |zw|^2 = |z|^2 |w|^2 exactly
        REQUIRE(abs_sq(z * w) == abs_sq(z) * abs_sq(w));
    }
}

TEST_CASE("inverse") {
    auto rng = seeded_rng(17);
    for (int it = 0; it < 100; ++it) {
        const HQ z = testing::random_scalar<HField>(rng);
        REQUIRE(dist(z * inverse(z), HQ(1)) < 1e-24);
        REQUIRE(dist(inverse(z) * z, HQ(1)) < 1e-24);
    }
}
