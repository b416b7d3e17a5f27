#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "doctest.h"
#include "zetalab/mean_square.hpp"

using namespace zetalab;
using namespace zetalab::zeta;

namespace {

// (1/2U) ∫_{t−U}^{t+U} (log(x/2π) + 2γ) dx in closed form
double main_density_average(double t, double U) {
    auto F = [](double x) { return x * std::log(x / (2 * std::numbers::pi)) - x + 2 * double(kEulerGamma) * x; };
    return (F(t + U) - F(t - U)) / (2 * U);
}

QuadratureOptions simpson(double tol = 1e-6) {
    QuadratureOptions o;
    o.rule = Rule::adaptive_simpson;
    o.tolerance = tol;
    return o;
}

}  // namespace

TEST_CASE("main term") {
    double T = 1000;
    double expect = (std::log(T / (2 * std::numbers::pi)) + 2 * 0.5772156649015329 - 1) * T;
    CHECK(mean_square_main_term(T) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("resolution floor and refusal") {
    CHECK(resolution_floor(100, 100) == long(std::floor(100 * std::log(103.0))) + 1);
    CHECK(auto_nodes(100, 100) == 4 * resolution_floor(100, 100));
    long need = resolution_floor(100, 100);
    try {
        mean_square_E(100, need - 1);
        FAIL("expected refusal");
    } catch (const RefusalError& e) {
        CHECK(std::string(e.what()).find(std::to_string(need)) != std::string::npos);
    }
    CHECK_NOTHROW(mean_square_E(100, need));
}

TEST_CASE("E(1) by two Gauss orders") {
    QuadratureOptions a, b;
    a.order = 8;
    b.order = 12;
    double ea = mean_square_E(1, auto_nodes(1, 1), a).value;
    double eb = mean_square_E(1, auto_nodes(1, 1), b).value;
    CHECK(std::abs(ea - eb) < 1e-6);
    // E(1) = ∫₀¹|ζ|² − (log(1/2π) + 2γ − 1)
    auto raw = integrate_square(0, 1, auto_nodes(1, 1), 1, a);
    CHECK(ea == doctest::Approx(raw.value - mean_square_main_term(1)).epsilon(1e-14));
}

TEST_CASE("E(100) by both stacks") {
    auto g = mean_square_E(100, auto_nodes(100, 100));
    auto s = mean_square_E(100, auto_nodes(100, 100), simpson());
    CHECK(std::abs(g.value - s.value) < 1e-3);
    CHECK(g.kind == Kind::E_of_T);
    CHECK(g.rule == Rule::gauss_panels);
    CHECK(s.rule == Rule::adaptive_simpson);
    CHECK(g.error_estimate < 1e-3);
    CHECK(g.nodes >= auto_nodes(100, 100));
}

TEST_CASE("halving node spacing moves E(T) by less than 1e-3") {
    for (double T : {10.0, 300.0}) {
        long n = auto_nodes(T, T);
        QuadratureOptions o;
        o.estimate_error = false;
        double a = mean_square_E(T, n, o).value, b = mean_square_E(T, 2 * n, o).value;
        CHECK(std::abs(a - b) < 1e-3);
    }
}

TEST_CASE("I(t,U) is non-negative and refines") {
    for (auto [t, U] : {std::pair{20.0, 5.0}, {14.1347, 0.01}, {100.0, 100.0}}) {
        auto r = local_mean_I(t, U, auto_nodes(2 * U, t));
        CHECK(r.value >= 0);
        CHECK(r.kind == Kind::I_of_tU);
        CHECK(r.U.has_value());
    }
    auto a = local_mean_I(500, 50, auto_nodes(100, 500));
    auto b = local_mean_I(500, 50, 2 * auto_nodes(100, 500), simpson(1e-7));
    CHECK(std::abs(a.value - b.value) < 1e-3);
}

TEST_CASE("local mean against differences of E") {
    const double t = 200, U = 20;
    QuadratureOptions o;
    o.estimate_error = false;
    double I = local_mean_I(t, U, auto_nodes(2 * U, t), o).value;
    double Ep = mean_square_E(t + U, auto_nodes(t + U, t + U), o).value;
    double Em = mean_square_E(t - U, auto_nodes(t - U, t - U), o).value;
    CHECK(std::abs(I - ((Ep - Em) / (2 * U) + main_density_average(t, U))) < 1e-3);
}

TEST_CASE("thread count does not change the result") {
    QuadratureOptions one, three;
    three.threads = 3;
    CHECK(mean_square_E(150, auto_nodes(150, 150), one).value == mean_square_E(150, auto_nodes(150, 150), three).value);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(mean_square_E(0.5, 100), DomainError);
    CHECK_THROWS_AS(mean_square_E(std::numeric_limits<double>::quiet_NaN(), 100), InputError);
    CHECK_THROWS_AS(local_mean_I(10, 11, 1000), DomainError);
    CHECK_THROWS_AS(parse_rule("trapezoid"), InputError);
}
