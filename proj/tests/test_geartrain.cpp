#include <cmath>
#include <random>

#include "doctest.h"
#include "krillsim/error.hpp"
#include "krillsim/geartrain.hpp"
#include "krillsim/units.hpp"
#include "oracles.hpp"

using namespace krillsim;
using namespace krillsim::geartrain;

TEST_CASE("epicyclic_step") {
    for (double x : {-1.3, 0.0, 0.7}) CHECK(epicyclic_step(x, x, 12, 30) == x);
    CHECK(epicyclic_step(1.0, 0.0, 20, 20) == -1.0);
    CHECK(epicyclic_step(0.5, 0.1, 12, 24) == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK_THROWS_AS(epicyclic_step(1, 0, 0, 12), DomainError);
    CHECK_THROWS_AS(epicyclic_step(1, 0, 12, -3), DomainError);
}

TEST_CASE("chain construction") {
    CHECK_THROWS_AS(GearChain::from_radii({0.01}), DomainError);
    CHECK_THROWS_AS(GearChain::from_radii({0.01, 0.0}), DomainError);
    const int teeth[] = {12, 24, 12};
    const auto c = GearChain::from_teeth(teeth);
    CHECK(c.size() == 3);
    CHECK(c.stage_ratio(0) == 0.5);
    CHECK(c.stage_ratio(1) == 2.0);
    const int bad[] = {12, 0};
    CHECK_THROWS_AS(GearChain::from_teeth(bad), DomainError);
}

TEST_CASE("chain_forward on equal gears") {
    const double ten = deg_to_rad(10.0);
    CHECK(rad_to_deg(chain_forward(ten, 0.0, GearChain::equal(4, 0.005))) == doctest::Approx(-10.0));
    CHECK(rad_to_deg(chain_forward(ten, 0.0, GearChain::equal(3, 0.005))) == doctest::Approx(10.0));
    CHECK(composite_ratio(GearChain::equal(4, 0.005)) == -1.0);
    CHECK(composite_ratio(GearChain::equal(3, 0.005)) == 1.0);
    CHECK(rad_to_deg(chain_inverse(-ten, 0.0, GearChain::equal(4, 0.005))) == doctest::Approx(10.0));
}

TEST_CASE("locked train co-rotates") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> r(0.002, 0.02), a(-7.0, 7.0);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> radii(2 + i % 5);
        for (auto& x : radii) x = r(rng);
        const auto c = GearChain::from_radii(radii);
        const double arm = a(rng);
        CHECK(chain_forward(arm, arm, c) == arm);
        CHECK(chain_inverse(arm, arm, c) == arm);
    }
}

TEST_CASE("chain_forward equals cascaded single meshes and the composite ratio") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> r(0.002, 0.02), a(-7.0, 7.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> radii(2 + i % 5);
        for (auto& x : radii) x = r(rng);
        const auto c = GearChain::from_radii(radii);
        const double psi = a(rng), arm = a(rng);
        const double fwd = chain_forward(psi, arm, c);

        double prev = psi;
        for (std::size_t k = 0; k + 1 < radii.size(); ++k) prev = epicyclic_step(prev, arm, radii[k], radii[k + 1]);
        CHECK(std::abs(fwd - prev) < 1e-12);
        CHECK(std::abs(fwd - oracle::cascade(psi, arm, radii)) < 1e-12);

        const double sign = (radii.size() % 2 == 0) ? -1.0 : 1.0;
        CHECK(std::abs((fwd - arm) - sign * radii.front() / radii.back() * (psi - arm)) < 1e-12);
        CHECK(std::abs(chain_inverse(fwd, arm, c) - psi) < 1e-12);
        CHECK(std::abs(chain_forward(chain_inverse(psi, arm, c), arm, c) - psi) < 1e-12);
    }
}

TEST_CASE("chain_forward is affine") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> a(-3.0, 3.0);
    const auto c = GearChain::from_radii({0.004, 0.006, 0.005, 0.003});
    for (int i = 0; i < 100; ++i) {
        const double p1 = a(rng), t1 = a(rng), p2 = a(rng), t2 = a(rng), s = a(rng);
        const double f0 = chain_forward(0.0, 0.0, c);
        const double lhs = chain_forward(p1 + s * p2, t1 + s * t2, c) - f0;
        const double rhs = (chain_forward(p1, t1, c) - f0) + s * (chain_forward(p2, t2, c) - f0);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("servo_angles_for_pose") {
    const auto four = GearChain::equal(4, primitive_radius(0.032, 4));
    SUBCASE("locked-train pose puts the first gear on theta1") {
        const auto s = servo_angles_for_pose(0.0, 180.0, four);
        CHECK(s.alpha == 0.0);
        CHECK(s.psi1 == doctest::Approx(360.0));
    }
    SUBCASE("start-of-cycle pose through link angles and the inverse chain") {
        // theta1 = 346, theta2 = 271; psi1 = theta1 + (theta2 - theta1) / (-1) = 421 deg.
        const auto s = servo_angles_for_pose(14.0, 105.0, four);
        CHECK(s.alpha == 14.0);
        CHECK(s.psi1 == doctest::Approx(421.0).epsilon(1e-14));
    }
    SUBCASE("forward re-substitution returns beta") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> d(0.0, 180.0);
        const auto three = GearChain::from_radii({0.005, 0.007, 0.004});
        for (int i = 0; i < 200; ++i) {
            const double alpha = d(rng), beta = d(rng);
            for (const auto* c : {&four, &three}) {
                const auto s = servo_angles_for_pose(alpha, beta, *c);
                CHECK(std::abs(beta_from_servo(s.alpha, s.psi1, *c) - beta) < 1e-9);
            }
        }
    }
    SUBCASE("initial offsets shift the zero of every angle") {
        const auto shifted = four.with_offsets(0.3, 0.1, -0.2);
        const auto s = servo_angles_for_pose(30.0, 140.0, shifted);
        CHECK(beta_from_servo(30.0, s.psi1, shifted) == doctest::Approx(140.0).epsilon(1e-12));
        const auto plain = servo_angles_for_pose(30.0, 140.0, four);
        CHECK(s.psi1 != doctest::Approx(plain.psi1));
    }
}

TEST_CASE("gear sizing") {
    CHECK(std::abs(primitive_radius(0.032, 4) - 2.0 / 375.0) <= 1e-15 * (2.0 / 375.0));
    CHECK(primitive_radius(0.032, 2) == 0.016);
    CHECK(primitive_radius(0.024, 3) == doctest::Approx(0.006).epsilon(1e-15));
    CHECK_THROWS_AS(primitive_radius(0.032, 1), DomainError);
    CHECK_THROWS_AS(primitive_radius(-0.032, 4), DomainError);

    CHECK(modulus(2.0 / 375.0, 12) == doctest::Approx(1.0 / 1125.0).epsilon(1e-15));
    CHECK(modulus(0.006, 12) == doctest::Approx(0.001).epsilon(1e-15));
    const double r = 0.0075, m = 0.0005;
    CHECK(modulus(r, static_cast<int>(std::lround(2 * r / m))) == doctest::Approx(m).epsilon(1e-15));
    CHECK_THROWS_AS(modulus(0.006, 0), DomainError);
    CHECK_NOTHROW(modulus(0.006, 8));  // allowed, flagged by callers

    CHECK_THROWS_AS(size_gear(0.006, 11), DomainError);
    const auto g = size_gear(0.006, 12);
    CHECK(g.modulus == doctest::Approx(0.001));
}

TEST_CASE("backlash") {
    SUBCASE("zero deadband is the identity") {
        const std::vector<double> x = {0, 1, 3, 2, -4, 5};
        CHECK(apply_backlash(x, 0.0) == x);
    }
    SUBCASE("monotone ramp lags by the band after takeup") {
        std::vector<double> x;
        for (int i = 0; i <= 100; ++i) x.push_back(0.1 * i);
        const auto y = apply_backlash(x, 2.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] <= 2.0) {
                CHECK(y[i] == 0.0);
            } else {
                CHECK(y[i] == doctest::Approx(x[i] - 2.0));
            }
        }
    }
    SUBCASE("sinusoid matches the state-machine oracle with flat reversals") {
        std::vector<double> x;
        const int n = 2000;
        for (int i = 0; i <= n; ++i) x.push_back(20.0 * std::sin(2 * kPi * 2.0 * i / n));
        const double band = 3.0;
        const auto y = apply_backlash(x, band);
        const auto o = oracle::backlash_state_machine(x, band);
        REQUIRE(y.size() == o.size());
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(y[i] - o[i]) < 1e-12);

        // Plateau after the first maximum: output holds while the input falls by the band.
        const std::size_t top = n / 8;  // first peak of a 2-cycle sine
        std::size_t i = top;
        while (i + 1 < y.size() && y[i + 1] == y[i]) ++i;
        const double drop = x[top] - x[i];
        const double step = std::abs(x[i + 1] - x[i]);
        CHECK(std::abs(drop - band) <= step);
    }
    SUBCASE("output bound") {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> d(0.0, 4.0);
        std::vector<double> x(500);
        for (auto& v : x) v = d(rng);
        const auto y = apply_backlash(x, 1.5);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(y[i] <= x[i]);
            CHECK(y[i] >= x[i] - 1.5);
        }
    }
    CHECK_THROWS_AS(apply_backlash(std::vector<double>{1.0}, -0.5), DomainError);
}
