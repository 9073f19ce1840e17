#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spinboson/quadrature.hpp"

using namespace spinboson;

namespace {

double double_factorial(int n) {
    double out = 1.0;
    for (int k = n; k > 1; k -= 2) out *= k;
    return out;
}

// Exact surface integral of x^(2a) y^(2b) z^(2c) over the unit sphere.
double sphere_monomial(int a, int b, int c) {
    const double four_pi = 4.0 * std::acos(-1.0);
    const int n = 2 * (a + b + c);
    return four_pi * double_factorial(2 * a - 1) * double_factorial(2 * b - 1) *
           double_factorial(2 * c - 1) / double_factorial(n + 1);
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials to degree 2n-1",
          "[quadrature]") {
    for (int n : {1, 2, 3, 5, 8, 16, 32}) {
        QuadRule rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (int d = 0; d < 2 * n; ++d) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                sum += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
            REQUIRE(std::abs(sum - exact) < 1e-13);
        }
    }
}

TEST_CASE("Gauss-Legendre nodes are ascending and weights symmetric",
          "[quadrature]") {
    QuadRule rule = gauss_legendre(9);
    double wsum = 0.0;
    for (int i = 0; i < 9; ++i) {
        if (i > 0) REQUIRE(rule.nodes[i] > rule.nodes[i - 1]);
        REQUIRE(rule.weights[i] > 0.0);
        REQUIRE(rule.weights[i] == Catch::Approx(rule.weights[8 - i]).epsilon(1e-14));
        wsum += rule.weights[i];
    }
    REQUIRE(wsum == Catch::Approx(2.0).epsilon(1e-14));
    REQUIRE(rule.nodes[4] == 0.0);
}

TEST_CASE("mapped rule integrates over a shifted interval", "[quadrature]") {
    QuadRule rule = mapped(gauss_legendre(4), 2.0, 5.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], 3);
    REQUIRE(sum == Catch::Approx((625.0 - 16.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("adaptive integrator handles smooth integrands", "[quadrature]") {
    auto res = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                  std::acos(-1.0), 1e-13);
    REQUIRE(res.value == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("adaptive integrator resolves an oscillatory decaying integrand",
          "[quadrature]") {
    const double omega = 10.0, length = 40.0;
    auto res = integrate_adaptive(
        [&](double x) { return std::exp(-x) * std::sin(omega * x); }, 0.0, length,
        1e-12);
    const double exact =
        (omega - std::exp(-length) * (omega * std::cos(omega * length) +
                                      std::sin(omega * length))) /
        (1.0 + omega * omega);
    REQUIRE(res.value == Catch::Approx(exact).epsilon(1e-9));
    REQUIRE(res.evaluations > 15);
}

TEST_CASE("adaptive integrator reports an unmet tolerance through its error",
          "[quadrature]") {
    auto res = integrate_adaptive(
        [](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0, 1.0, 1e-12, 0.0,
        4);
    REQUIRE(res.error > 1e-12 * std::abs(res.value));
}

TEST_CASE("angular rules integrate sphere monomials to their stated degree",
          "[quadrature]") {
    const double four_pi = 4.0 * std::acos(-1.0);
    const std::pair<int, int> cases[] = {{6, 3}, {14, 5}, {26, 7}, {38, 9}};
    for (auto [points, degree] : cases) {
        AngularRule rule = angular_rule(points);
        REQUIRE(rule.directions.size() == static_cast<std::size_t>(points));
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        REQUIRE(wsum == Catch::Approx(four_pi).epsilon(1e-13));

        for (int a = 0; 2 * a <= degree; ++a)
            for (int b = 0; 2 * (a + b) <= degree; ++b)
                for (int c = 0; 2 * (a + b + c) <= degree; ++c) {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < rule.directions.size(); ++i) {
                        const auto& d = rule.directions[i];
                        sum += rule.weights[i] * std::pow(d[0], 2 * a) *
                               std::pow(d[1], 2 * b) * std::pow(d[2], 2 * c);
                    }
                    REQUIRE(std::abs(sum - sphere_monomial(a, b, c)) <
                            1e-12 * four_pi);
                }

        // Any odd power integrates to zero by the rule's inversion symmetry.
        double odd = 0.0;
        for (std::size_t i = 0; i < rule.directions.size(); ++i)
            odd += rule.weights[i] * rule.directions[i][0] *
                   std::pow(rule.directions[i][2], 2);
        REQUIRE(std::abs(odd) < 1e-14 * four_pi);
    }
}

TEST_CASE("unsupported angular orders are rejected", "[quadrature]") {
    REQUIRE_THROWS_AS(angular_rule(12), ConfigError);
    REQUIRE_THROWS_AS(angular_rule(0), ConfigError);
}

TEST_CASE("power-law fit recovers a clean slope and skips the noise floor",
          "[quadrature]") {
    std::vector<double> x{0.2, 0.1, 0.05, 0.025};
    std::vector<double> y;
    for (double xi : x) y.push_back(3.2 * std::pow(xi, 2.5));
    PowerLawFit fit = fit_power_law(x, y);
    REQUIRE_FALSE(fit.degenerate);
    REQUIRE(fit.points_used == 4);
    REQUIRE(fit.slope == Catch::Approx(2.5).epsilon(1e-10));
    REQUIRE(std::exp(fit.intercept) == Catch::Approx(3.2).epsilon(1e-10));

    y[3] = 1e-16;  // below the floor: the fit must ignore it
    fit = fit_power_law(x, y, 1e-15);
    REQUIRE(fit.points_used == 3);
    REQUIRE(fit.slope == Catch::Approx(2.5).epsilon(1e-10));

    PowerLawFit empty = fit_power_law(x, {0.0, 0.0, 0.0, 0.0}, 0.0);
    REQUIRE(empty.degenerate);
}
