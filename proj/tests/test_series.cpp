#include <doctest.h>

#include <cmath>
#include <random>

#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "genlambert/genw.hpp"
#include "genlambert/polys.hpp"
#include "genlambert/rlambert.hpp"
#include "genlambert/series.hpp"
#include "oracles.hpp"

using namespace genlambert;

namespace {

// Root of the generalized equation nearest the series expansion point.
double nearest_root(const GenWParams& p, double centre) {
    const auto v = solve_all(p).values();
    REQUIRE_FALSE(v.empty());
    double best = v.front();
    for (double x : v) {
        if (std::abs(x - centre) < std::abs(best - centre)) best = x;
    }
    return best;
}

}  // namespace

TEST_CASE("series_one_up_one_low: examples") {
    CHECK(series_one_up_one_low(0.3, 1.1, 0.0).value == 0.3);
    CHECK(series_one_up_one_low(-2.0, -5.0, 0.0).value == -2.0);

    const SeriesResult r = series_one_up_one_low(0.0, 1.0, 0.1, 64);
    CHECK(std::abs(r.value - nearest_root({{0.0}, {1.0}, 0.1}, 0.0)) < 1e-10);
    CHECK(r.expansion.kind == SeriesKind::OneUpOneLow);
    REQUIRE(r.expansion.radius);
    CHECK(*r.expansion.radius == doctest::Approx(std::exp(-1.5)));
    CHECK(r.expansion.converged);
    CHECK(r.expansion.terms_used <= 64);

    for (auto [t, s] : {std::pair{0.0, 1.0}, {1.0, -1.0}, {-0.5, 2.0}}) {
        const double a = 1e-7;
        const double first = t + (t - s) * std::exp(-t) * a;
        CHECK(std::abs(series_one_up_one_low(t, s, a).value - first) < 1e-12);
    }
}

TEST_CASE("series_one_up_one_low: coefficients against the defining equation") {
    // c_1 = T e^{-t} from the linearization; c_2 from the second-order expansion
    const double t = 0.4;
    const double s = 1.7;
    const double big_t = t - s;
    CHECK(one_up_one_low_coefficient(t, s, 1).to_double() == doctest::Approx(big_t * std::exp(-t)));
    const double c2 = one_up_one_low_coefficient(t, s, 2).to_double();
    // x = t + c1 a + c2 a^2 + ...: finite-difference second derivative of the solver branch
    const double h = 1e-3;
    auto root = [&](double a) { return nearest_root({{t}, {s}, a}, t); };
    const double fd2 = (root(h) - 2.0 * t + root(-h)) / (2.0 * h * h);
    CHECK(c2 == doctest::Approx(fd2).epsilon(1e-4));
}

TEST_CASE("series_one_up_one_low: agreement with solver inside half the radius") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> base(-2.0, 2.0);
    std::uniform_real_distribution<double> gap(0.2, 4.0);
    std::uniform_real_distribution<double> frac(-0.5, 0.5);
    for (int i = 0; i < 40; ++i) {
        const double t = base(rng);
        const double s = t + gap(rng);
        const double a = frac(rng) * radius_one_up_one_low(t, s);
        const double series = series_one_up_one_low(t, s, a, 400).value;
        CHECK(std::abs(series - nearest_root({{t}, {s}, a}, t)) <= 1e-9);
    }
}

TEST_CASE("series_one_up_one_low: errors") {
    CHECK_THROWS_AS(series_one_up_one_low(1.0, 1.0, 0.1), DegenerateInput);
    CHECK_THROWS_AS(series_one_up_one_low(0.0, 1.0, 0.3), ConvergenceDomain);
    CHECK_THROWS_AS(series_one_up_one_low(0.0, 1.0, -0.3), ConvergenceDomain);
    CHECK_THROWS_AS(series_one_up_one_low(0.0, 1.0, 0.1, 0), DomainError);
    // t > s: no published radius, growth is detected instead
    CHECK_THROWS_AS(series_one_up_one_low(1.0, 0.0, 50.0, 200), Diverging);
    CHECK_FALSE(series_one_up_one_low(1.0, 0.0, 0.1).expansion.radius);
}

TEST_CASE("radius_one_up_one_low: examples") {
    CHECK(radius_one_up_one_low(0.0, 1.0) == doctest::Approx(0.2231302).epsilon(1e-7));
    CHECK(radius_one_up_one_low(0.0, 4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(radius_one_up_one_low(-1.0, -1.0 + 1e-12) == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
    CHECK_THROWS_AS(radius_one_up_one_low(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(radius_one_up_one_low(2.0, 1.0), DomainError);
}

TEST_CASE("singularity radius: critical value of the generalized function") {
    for (auto [t, s] : {std::pair{0.0, 1.0}, {-1.0, 2.0}, {1.0, 3.0}}) {
        const double rho = singularity_radius_one_up_one_low(t, s);
        // the critical value is a tangency of F = a
        const auto set = solve_all({{t}, {s}, rho});
        bool tangent = false;
        for (const Root& r : set.roots) tangent = tangent || r.multiplicity == 2;
        CHECK(tangent);
        // and the coefficient ratio creeps towards it
        CHECK(empirical_radius_one_up_one_low(t, s, 300) == doctest::Approx(rho).epsilon(0.01));
    }
}

TEST_CASE("series_two_up: examples") {
    CHECK(series_two_up(0.7, -1.0, 0.0).value == 0.7);
    CHECK(two_up_coefficient(0.0, 1.0, 1).to_double() == doctest::Approx(-1.0));
    CHECK(std::abs(series_two_up(0.0, 1.0, 1e-8).value + 1e-8) < 1e-15);
    const double v = series_two_up(0.0, 1.0, 0.05, 64).value;
    CHECK(std::abs(v - nearest_root({{0.0, 1.0}, {}, 0.05}, 0.0)) < 1e-9);
    CHECK_THROWS_AS(series_two_up(1.0, 1.0, 0.01), DegenerateInput);
    CHECK_THROWS_AS(series_two_up(0.0, 1.0, 2.0, 200), Diverging);
}

TEST_CASE("series_two_up: agreement with solver for other parameters") {
    for (auto [t1, t2] : {std::pair{0.0, 2.0}, {-1.0, 1.0}, {1.0, -0.5}}) {
        for (double a : {-0.02, -0.005, 0.004, 0.02}) {
            const double series = series_two_up(t1, t2, a, 200).value;
            CHECK(std::abs(series - nearest_root({{t1, t2}, {}, a}, t1)) <= 1e-9);
        }
    }
}

TEST_CASE("series_r_lambert: examples") {
    CHECK(series_r_lambert(0.5, 0.0).value == 0.0);
    CHECK(r_lambert_coefficient(1.0, 1).to_double() == doctest::Approx(0.5));
    CHECK(r_lambert_coefficient(1.0, 2).to_double() == doctest::Approx(-1.0 / 8.0).epsilon(1e-15));
    for (double r : {-0.5, 0.5, 1.0, 3.0, 7.0}) {
        CHECK(r_lambert_coefficient(r, 2).to_double() == doctest::Approx(-1.0 / std::pow(r + 1.0, 3)).epsilon(1e-14));
    }
    for (double x : {1e-3, -2e-3, 0.01, 0.05}) {
        CHECK(std::abs(series_r_lambert(0.0, x).value - oracle::w0_series(x)) < 1e-10);
        CHECK(std::abs(series_r_lambert(0.0, x).value - lambert_w(ClassicBranch::Principal, x)) < 1e-14);
    }
    const double x = 1e-4;
    CHECK(std::abs(series_r_lambert(1.0, x).value - (x / 2 - x * x / 8)) < 1e-12);
    CHECK_THROWS_AS(series_r_lambert(-1.0, 0.01), DegenerateInput);
    CHECK_THROWS_AS(r_lambert_coefficient(-1.0, 2), DegenerateInput);
}

TEST_CASE("series_r_lambert: agreement with the r-Lambert solver") {
    for (double r : {0.5, 1.0, 3.0}) {
        for (double x = -0.1; x <= 0.1 + 1e-12; x += 0.01) {
            const SeriesResult s = series_r_lambert(r, x, 200);
            // branch containing 0: f is increasing through the origin for r > -1
            const auto all = r_lambert_all(r, x);
            double best = all.front();
            for (double v : all) {
                if (std::abs(v) < std::abs(best)) best = v;
            }
            CHECK(std::abs(s.value - best) <= 1e-9);
            CHECK(s.expansion.converged);
        }
    }
}

TEST_CASE("series_r_lambert: coefficients against the M-polynomial form") {
    auto m_form = [](double r, int n) {
        const double y = 1.0 / (r + 1.0);
        if (n == 1) return y;
        return m_poly(n - 1, n, y) * std::pow(y, n) / std::tgamma(n + 1.0);
    };
    for (double r : {-3.0, -0.5, 0.05, 0.5, 1.0, 3.0}) {
        for (int n = 1; n <= 12; ++n) {
            const double want = m_form(r, n);
            CHECK(std::abs(r_lambert_coefficient(r, n).to_double() - want) <= 1e-10 * std::abs(want));
        }
    }
    // for r < -1 every term of the M form has one sign, so it stays exact to large n
    const auto row = stirling2_table(299);
    for (int n : {50, 150, 300}) {
        const double y = 1.0 / (-3.0 + 1.0);
        const double log_want = m_poly_scaled(row[n - 1], n, y).log_abs() + n * std::log(-y) - std::lgamma(n + 1.0);
        CHECK(r_lambert_coefficient(-3.0, n).log_abs() == doctest::Approx(log_want).epsilon(1e-13));
    }
    // r = 0 is classical W_0: (-n)^(n-1)/n!
    for (int n : {2, 3, 40, 400}) {
        const PolyValue c = r_lambert_coefficient(0.0, n);
        CHECK(c.sign() == (n % 2 ? 1 : -1));
        CHECK(c.log_abs() == doctest::Approx((n - 1) * std::log(n) - std::lgamma(n + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("series_r_lambert: accurate deep inside the radius") {
    // radii (nearest complex critical value of x e^x + r x): 1.153, 1.946, 5.497
    const std::vector<std::pair<double, double>> cases{{0.5, 1.153}, {1.0, 1.946}, {3.0, 5.497}};
    for (auto [r, radius] : cases) {
        for (double frac : {-0.7, -0.4, 0.4, 0.7}) {
            const double x = frac * radius;
            const SeriesResult s = series_r_lambert(r, x, 400);
            const auto all = r_lambert_all(r, x);
            double best = all.front();
            for (double v : all) {
                if (std::abs(v) < std::abs(best)) best = v;
            }
            CHECK(s.expansion.converged);
            CHECK(std::abs(s.value - best) <= 1e-12 * (1.0 + std::abs(best)));
        }
    }
}

TEST_CASE("series: truncation estimate bounds the omitted tail") {
    struct Case {
        SeriesResult small;
        SeriesResult large;
    };
    std::vector<Case> cases;
    for (int n : {4, 8, 12, 20}) {
        for (double a : {0.02, -0.05, 0.08, 0.1}) {
            cases.push_back({series_one_up_one_low(0.0, 1.0, a, n), series_one_up_one_low(0.0, 1.0, a, n + 20)});
            cases.push_back({series_two_up(0.0, 1.0, a / 2, n), series_two_up(0.0, 1.0, a / 2, n + 20)});
            cases.push_back({series_r_lambert(1.0, a, n), series_r_lambert(1.0, a, n + 20)});
        }
    }
    for (const Case& c : cases) {
        if (c.small.expansion.converged) continue;
        // plus a few ulps of summation rounding in the two partial sums
        CHECK(std::abs(c.small.value - c.large.value) <=
              c.small.expansion.truncation_estimate + 4e-16 * std::abs(c.large.value));
    }
}

TEST_CASE("series: coefficients survive n in the hundreds") {
    for (int n : {100, 300, 400}) {
        CHECK(std::isfinite(one_up_one_low_coefficient(0.0, 1.0, n).log_abs()));
        CHECK(std::isfinite(two_up_coefficient(0.0, 1.0, n).log_abs()));
    }
    CHECK(std::isfinite(r_lambert_coefficient(0.5, 300).log_abs()));
}
