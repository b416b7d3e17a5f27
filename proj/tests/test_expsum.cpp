#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zetalab/expsum.hpp"

using namespace zetalab;
using namespace zetalab::expsum;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

cplx e_big(const Big& x) {
    Big f = x - floor(x);
    double a = 2 * std::numbers::pi * static_cast<double>(f);
    return {std::cos(a), std::sin(a)};
}

// Direct 50-digit re-summation of the defining double sum.
cplx s_f_oracle(double T, double H, double H1, double M, double M1, long b) {
    Big bT(T), bM(M), c = Big(b) * bM * bM / (8 * bT);
    auto F = [&](const Big& x) { return log(x) - c * x * x; };
    cplx acc = 0;
    for (long h = long(std::floor(H1)) + 1; h <= long(std::floor(H)); ++h)
        for (long m = long(std::floor(M1)) + 1; m <= long(std::floor(M)); ++m)
            acc += e_big(bT * (F(Big(m + h) / bM) - F(Big(m - h) / bM)));
    return acc;
}

cplx s_star_oracle(double T, double U, double M, double M1) {
    cplx acc = 0;
    long hmax = long(std::floor(std::expm1(1.0 / U) * M / 2));
    for (long h = 1; h <= hmax; ++h)
        for (long m = long(std::floor(M1)) + 1; m <= long(std::floor(M)); ++m)
            acc += e_big(Big(T) * log(Big(m + h) / Big(m - h)));
    return acc;
}

struct GOracle {
    cplx value;
    long count = 0;
};

GOracle g_plus_oracle(double t, double delta) {
    GOracle out;
    const Big bt(t), pi = boost::math::constants::pi<Big>();
    const Big lt = log(bt);
    for (long m = 1; m <= long(t); ++m)
        for (long n = 1; m * n <= t / (2 * std::numbers::pi); ++n) {
            Big l = log(Big(m) / Big(n));
            Big dl = Big(delta) * l;
            if (!(dl > 0 && dl <= lt)) continue;
            Big w = exp(-(dl / 2) * (dl / 2)) / (sqrt(Big(m * n)) * l);
            out.value += static_cast<double>(w) * e_big(bt * l / (2 * pi));
            ++out.count;
        }
    return out;
}

}  // namespace

TEST_CASE("omega") {
    for (double k : {1.0, 5.0, 1e6}) CHECK(omega(k, 0) == 0);
    CHECK(omega(5, 3) == doctest::Approx((std::pow(8.0, 1.5) - std::pow(2.0, 1.5)) / 3).epsilon(1e-15));
    CHECK(omega(5, 3) == doctest::Approx(6.599663291).epsilon(1e-9));
    double approx = std::sqrt(100.0) * 2 + kOmegaExpansionC * 8 / std::pow(100.0, 1.5);
    CHECK(std::abs(omega(100, 2) - approx) < 10 * 32 * std::pow(100.0, -3.5));
    CHECK(kOmegaExpansionC == -1.0 / 24);
    CHECK_THROWS_AS(omega(3, 5), DomainError);
}

TEST_CASE("omega derivatives against finite differences") {
    CHECK(omega_deriv(5, 3, 0) == omega(5, 3));
    const double h = 1e-5;
    double d1 = (omega(5 + h, 3) - omega(5 - h, 3)) / (2 * h);
    CHECK(std::abs(d1 - omega_deriv(5, 3, 1)) < 1e-8);
    const double h2 = 1e-3;
    double d2 = (omega(5 + h2, 3) - 2 * omega(5, 3) + omega(5 - h2, 3)) / (h2 * h2);
    CHECK(std::abs(d2 - omega_deriv(5, 3, 2)) < 1e-5);
    CHECK(omega_deriv(5, 3, 1) == doctest::Approx((std::sqrt(8.0) - std::sqrt(2.0)) / 2));
    CHECK_THROWS_AS(omega_deriv(3, 3, 1), DomainError);
    CHECK_THROWS_AS(omega_deriv(5, 3, 3), DomainError);
}

TEST_CASE("phi") {
    CHECK(phi(7, 7) == 7);
    CHECK(phi(5, 3) == 1);
    CounterRng rng(11);
    for (int i = 0; i < 100; ++i) {
        double u = rng.uniform(0.1, 1e4), l = u * rng.uniform();
        double lhs = phi(u, l) * (u + std::sqrt(u * u - l * l));
        CHECK(std::abs(lhs - l * l) <= 1e-12 * l * l + 1e-300);
    }
    CHECK_THROWS_AS(phi(2, 3), DomainError);
}

TEST_CASE("phase derivatives against finite differences") {
    auto F = PhaseFunction::log_minus_quadratic(3, 40, 1000);
    for (int i = 0; i < 20; ++i) {
        double x = 0.4 + 2.5 * i / 19.0;
        for (int r = 1; r <= 5; ++r) {
            double h = 1e-4;
            double fd = (F.derivative(r - 1, x + h) - F.derivative(r - 1, x - h)) / (2 * h);
            double ex = F.derivative(r, x);
            CHECK(std::abs(fd - ex) <= 1e-6 * std::max(1.0, std::abs(ex)));
        }
    }
    auto G = PhaseFunction::pure_log();
    CHECK(G.derivative(3, 2.0) == doctest::Approx(2.0 / 8));
    CHECK(G.derivative(4, 2.0) == doctest::Approx(-6.0 / 16));
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(ExpSumParams::make(10, 4, 2, 40, 20));
    CHECK_THROWS_AS(ExpSumParams::make(10, 4, 1, 40, 20), InputError);
    CHECK_THROWS_AS(ExpSumParams::make(10, 4, 2, 40, 41), InputError);
    CHECK_THROWS_AS(ExpSumParams::make(-1, 4, 2, 40, 20), InputError);
    CHECK_THROWS_AS(s_f(ExpSumParams::make(10, 20, 10, 40, 20), PhaseFunction::pure_log()), DomainError);
}

TEST_CASE("s_f small cases") {
    auto F = PhaseFunction::pure_log();
    auto empty = s_f(ExpSumParams::make(100, 0.9, 0.5, 40, 20), F);
    CHECK(empty.value == cplx(0));
    CHECK(empty.term_count == 0);
    auto one = s_f(ExpSumParams::make(123.4, 1, 0.5, 2, 1), F);
    CHECK(one.term_count == 1);
    CHECK(std::abs(std::abs(one.value) - 1) < 1e-15);
    cplx expect = std::exp(cplx(0, 2 * std::numbers::pi * 123.4 * std::log(3.0)));
    CHECK(std::abs(one.value - expect) < 1e-12);
}

TEST_CASE("s_f against the 50-digit oracle") {
    auto F = PhaseFunction::pure_log();
    auto s = s_f(ExpSumParams::make(300, 4, 2, 40, 20), F);
    CHECK(std::abs(s.value - s_f_oracle(300, 4, 2, 40, 20, 0)) < 1e-9);
    CHECK(s.term_count == 2 * 20);

    CounterRng rng(2024);
    for (int i = 0; i < 10; ++i) {
        double T = rng.uniform(1e3, 1e6), M = rng.uniform(30, 120), M1 = rng.uniform(M / 2, M);
        double H = rng.uniform(1, M / 6), H1 = rng.uniform(H / 2, H);
        long b = long(rng.below(5));
        auto G = PhaseFunction::log_minus_quadratic(b, M, T);
        auto v = s_f(ExpSumParams::make(T, H, H1, M, M1), G);
        CHECK(std::abs(v.value - s_f_oracle(T, H, H1, M, M1, b)) < 1e-9);
        CHECK(std::abs(v.value) <= double(v.term_count) + 1e-9);
    }
}

TEST_CASE("s_f invariances") {
    auto params = ExpSumParams::make(300, 4, 2, 40, 20);
    auto F = PhaseFunction::pure_log();
    PhaseFunction::Table tab = {
        [](double x) { return std::log(x) + 5; },      [](double x) { return 1 / x; },
        [](double x) { return -1 / (x * x); },         [](double x) { return 2 / (x * x * x); },
        [](double x) { return -6 / std::pow(x, 4); }, [](double x) { return 24 / std::pow(x, 5); }};
    auto G = PhaseFunction::custom_table(tab);
    // a tabulated F is only double accurate, so keep T·ulp(F) small
    auto low = ExpSumParams::make(20, 4, 2, 40, 20);
    CHECK(std::abs(s_f(low, F).value - s_f(low, G).value) < 1e-12);

    auto neg = ExpSumParams::ranges(-300, 4, 2, 40, 20);
    CHECK(std::abs(s_f(neg, F).value - std::conj(s_f(params, F).value)) < 1e-12);

    auto big = ExpSumParams::make(5e5, 30, 15, 200, 100);
    CHECK(s_f(big, F, 1).value == s_f(big, F, 4).value);
}

TEST_CASE("s_star") {
    CHECK(s_star(100, 1e3, 24, 12).term_count == 0);
    auto a = s_star(100, 3, 24, 12);
    auto b = s_f(ExpSumParams::ranges(100, std::expm1(1.0 / 3) * 24 / 2, 0, 24, 12), PhaseFunction::pure_log());
    CHECK(std::abs(a.value - b.value) < 1e-12);
    CHECK(a.term_count == b.term_count);
    CHECK(std::abs(s_star(50, 2, 16, 8).value - s_star_oracle(50, 2, 16, 8)) < 1e-9);
    CHECK_THROWS_AS(s_star(50, 0.5, 16, 8), DomainError);
    CHECK_THROWS_AS(s_star(50, 2, 16, 7), DomainError);
}

TEST_CASE("g_plus") {
    auto none = g_plus(200, 1e6);
    CHECK(none.term_count == 0);
    CHECK(none.value == cplx(0));
    auto g = g_plus(200, 2);
    auto o = g_plus_oracle(200, 2);
    CHECK(g.term_count == o.count);
    CHECK(std::abs(g.value - o.value) < 1e-9);
    CHECK_THROWS_AS(g_plus(20, 2), DomainError);
    CHECK_THROWS_AS(g_plus(200, 0.5), DomainError);
}

TEST_CASE("w_h_ratio") {
    CHECK(w_h_ratio(1000, 60, 60, 3) == 0);
    CHECK(w_h_ratio(1000, 60, 59, 3) == doctest::Approx(std::pow(3000.0, -2.0 / 7)).epsilon(1e-14));
    CHECK_THROWS_AS(w_h_ratio(1000, 60, 30, 30), DomainError);
}

TEST_CASE("condition report") {
    std::array<double, 4> C{9 * 1.0, 27 * 2.0, 81 * 6.0, 243 * 24.0};
    auto rep = condition_report(PhaseFunction::pure_log(), C);
    CHECK(rep.all_hold());
    REQUIRE(rep.checks.size() == 8);
    CHECK(rep.checks.back().id == "6.3");
    CHECK(rep.checks.back().observed == doctest::Approx(6.0 / 729).epsilon(1e-12));

    auto rep0 = condition_report(PhaseFunction::log_minus_quadratic(0, 30, 8100), C);
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        CHECK(rep0.checks[i].observed == rep.checks[i].observed);
        CHECK(rep0.checks[i].holds == rep.checks[i].holds);
    }

    // b = 1, M²/T = 1/9
    auto rep1 = condition_report(PhaseFunction::log_minus_quadratic(1, 30, 8100), C);
    double best = INFINITY;
    for (int i = 0; i < 1000; ++i) {
        double x = 1.0 / 3 + (3.0 - 1.0 / 3) * i / 999;
        if (i == 999) x = 3;
        best = std::min(best, std::abs(3.0 / (2 * 9 * std::pow(x, 4)) - 6 / std::pow(x, 6)));
    }
    CHECK(std::abs(rep1.checks.back().observed - best) < 1e-10);

    std::array<double, 4> tight{2, 2, 2, 2};
    CHECK_FALSE(condition_report(PhaseFunction::pure_log(), tight).all_hold());
    CHECK_THROWS_AS(condition_report(PhaseFunction::pure_log(), {1, 2, 2, 2}), InputError);
}
