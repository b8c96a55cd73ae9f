#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "oracles.hpp"

using genlambert::ClassicBranch;
using genlambert::lambert_w;

TEST_CASE("classicw: exact points") {
    CHECK(lambert_w(ClassicBranch::Principal, 0.0) == 0.0);
    CHECK(lambert_w(ClassicBranch::Principal, std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambert_w(ClassicBranch::MinusOne, -genlambert::kInvE) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(lambert_w(ClassicBranch::Principal, -genlambert::kInvE) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("classicw: values against bisection") {
    const double w1 = lambert_w(ClassicBranch::Principal, 1.0);
    CHECK(std::abs(w1 - oracle::lambert_bisect(1.0, true)) < 1e-12);
    CHECK(std::abs(w1 - 0.5671432904097838) < 1e-12);

    const double wm = lambert_w(ClassicBranch::MinusOne, -0.1);
    CHECK(std::abs(wm - oracle::lambert_bisect(-0.1, false)) < 1e-12);
    CHECK(wm == doctest::Approx(-3.577152).epsilon(1e-6));
}

TEST_CASE("classicw: small arguments follow the Taylor series") {
    for (double a : {1e-3, -1e-3, 1e-2, -2e-2}) {
        CHECK(std::abs(lambert_w(ClassicBranch::Principal, a) - oracle::w0_series(a)) < 1e-14);
    }
}

TEST_CASE("classicw: domain errors") {
    CHECK_THROWS_AS(lambert_w(ClassicBranch::Principal, -0.4), genlambert::DomainError);
    CHECK_THROWS_AS(lambert_w(ClassicBranch::MinusOne, -0.4), genlambert::DomainError);
    CHECK_THROWS_AS(lambert_w(ClassicBranch::MinusOne, 0.0), genlambert::DomainError);
    CHECK_THROWS_AS(lambert_w(ClassicBranch::MinusOne, 1.0), genlambert::DomainError);
    CHECK_THROWS_AS(lambert_w(ClassicBranch::Principal, std::nan("")), genlambert::DomainError);
}

TEST_CASE("classicw: roundtrip and branch ranges") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-12.0, 12.0);
    for (int i = 0; i < 5000; ++i) {
        const double mag = std::pow(10.0, logu(rng));
        for (double a : {mag, -genlambert::kInvE * std::min(1.0, mag)}) {
            const double w = lambert_w(ClassicBranch::Principal, a);
            CHECK(w >= -1.0);
            CHECK(std::abs(w * std::exp(w) - a) <= 1e-12 * (1.0 + std::abs(a)));
        }
        const double b = -genlambert::kInvE * std::min(1.0, mag);
        const double wm = lambert_w(ClassicBranch::MinusOne, b);
        CHECK(wm <= -1.0);
        CHECK(std::abs(wm * std::exp(wm) - b) <= 1e-12 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("classicw: near the branch point") {
    for (double eps : {1e-16, 1e-14, 1e-12, 1e-9, 1e-6, 1e-4, 1e-3}) {
        const double a = -genlambert::kInvE + eps;
        const double w0 = lambert_w(ClassicBranch::Principal, a);
        const double wm = lambert_w(ClassicBranch::MinusOne, a);
        CHECK(w0 >= wm);
        CHECK(std::abs(w0 * std::exp(w0) - a) <= 1e-15);
        CHECK(std::abs(wm * std::exp(wm) - a) <= 1e-15);
        // leading order of the square-root singularity
        const double p = std::sqrt(2.0 * eps * std::numbers::e);
        CHECK(std::abs(w0 - (-1.0 + p)) < 1e-8 + p * p);
        CHECK(std::abs(wm - (-1.0 - p)) < 1e-8 + p * p);
    }
}

TEST_CASE("classicw: monotone on both branches") {
    double prev0 = -2.0;
    double prevm = 0.0;
    for (int k = 0; k <= 4000; ++k) {
        const double a = -genlambert::kInvE + k * (genlambert::kInvE / 4000.0) * 0.999;
        const double w0 = lambert_w(ClassicBranch::Principal, a);
        const double wm = lambert_w(ClassicBranch::MinusOne, a);
        if (k > 0) {
            CHECK(w0 > prev0);
            CHECK(wm < prevm);
        }
        prev0 = w0;
        prevm = wm;
    }
    for (double a = 0.0; a < 1e6; a = a * 1.7 + 0.01) {
        const double w = lambert_w(ClassicBranch::Principal, a);
        CHECK(w > prev0);
        prev0 = w;
    }
}

TEST_CASE("classicw: extreme magnitudes") {
    for (double a : {1e300, 1.7e308, 1e-300, 5e-324}) {
        const double w = lambert_w(ClassicBranch::Principal, a);
        CHECK(std::isfinite(w));
        CHECK(std::abs(std::log(w) + w - std::log(a)) <= 1e-13 * std::abs(std::log(a)) + 1e-300);
    }
    const double wm = lambert_w(ClassicBranch::MinusOne, -1e-300);
    CHECK(std::abs(std::log(-wm) + wm - std::log(1e-300)) <= 1e-12 * 700);
}
