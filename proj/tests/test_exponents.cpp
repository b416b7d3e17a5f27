#include <numeric>
#include <string>

#include "doctest.h"
#include "zetalab/exponents.hpp"
#include "zetalab/numeric.hpp"

using namespace zetalab::exponents;

namespace {

// Independent small-fraction arithmetic, kept separate from the GMP-backed Rat.
struct Frac {
    __int128 n, d;
    Frac(__int128 a = 0, __int128 b = 1) : n(a), d(b) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }
    static __int128 gcd(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a ? a : 1;
    }
    Frac operator+(Frac o) const { return {n * o.d + o.n * d, d * o.d}; }
    Frac operator-(Frac o) const { return {n * o.d - o.n * d, d * o.d}; }
    Frac operator*(Frac o) const { return {n * o.n, d * o.d}; }
    Frac operator/(Frac o) const { return {n * o.d, d * o.n}; }
    bool operator==(Frac o) const { return n == o.n && d == o.d; }
};

bool same(const Rat& r, Frac f) {
    return r.num() == mpz_class(static_cast<long>(f.n)) && r.den() == mpz_class(static_cast<long>(f.d));
}

Frac frac_q(long nu) { return Frac(2 * (13 * nu - 12), 6 * nu - 5); }

}  // namespace

TEST_CASE("q_nu values") {
    CHECK(q_nu(6) == Rat(132, 31));
    CHECK(q_nu(7) == Rat(158, 37));
    CHECK(q_nu(3) == Rat(54, 13));
    for (long nu = 3; nu <= 30; ++nu) CHECK(same(q_nu(nu), frac_q(nu)));
    CHECK_THROWS_AS(q_nu(2), zetalab::DomainError);
}

TEST_CASE("q_nu increasing and bounded by 13/3") {
    for (long nu = 7; nu <= 40; ++nu) {
        CHECK(q_nu(nu) > q_nu(nu - 1));
        CHECK(q_nu(nu) < Rat(13, 3));
    }
}

TEST_CASE("a and b at q7") {
    CHECK(a_of_q(q_nu(7)) == Rat(1273, 4053));
    Frac q = frac_q(7);
    Frac b = (Frac(2341) * q - Frac(5900)) / (Frac(8) * (Frac(897) * q - Frac(2200)));
    CHECK(b == Frac(75789, 241304));
    CHECK(same(b_of_q(q_nu(7)), b));
    CHECK(b_of_q(q_nu(7)).to_double() == doctest::Approx(0.3140809).epsilon(2e-7));
    CHECK_THROWS_AS(a_of_q(Rat(-44, 41)), zetalab::DomainError);
    CHECK_THROWS_AS(b_of_q(Rat(2200, 897)), zetalab::DomainError);
}

TEST_CASE("a decreasing, b increasing over q6..q12") {
    for (long nu = 7; nu <= 12; ++nu) {
        CHECK(a_of_q(q_nu(nu)) < a_of_q(q_nu(nu - 1)));
        CHECK(b_of_q(q_nu(nu)) > b_of_q(q_nu(nu - 1)));
    }
}

TEST_CASE("crossover between q7 and q8") {
    auto ord7 = a_of_q(q_nu(7)) <=> b_of_q(q_nu(7));
    auto ord8 = a_of_q(q_nu(8)) <=> b_of_q(q_nu(8));
    CHECK(ord7 == std::strong_ordering::greater);
    CHECK(ord8 == std::strong_ordering::less);
    CHECK(b_of_q(q_nu(8)) == Rat(6323, 20128));
}

TEST_CASE("holder interpolation and theta systems") {
    CHECK(holder_interpolate(Rat(3), Rat(7), Rat(0)) == Rat(3));
    CHECK(holder_interpolate(Rat(3), Rat(7), Rat(1)) == Rat(7));
    auto s = solve_theta(Rat(8), Rat(4), Rat(3), Rat(24, 5));
    CHECK(s.theta == Rat(5, 6));
    CHECK(s.q == Rat(48, 11));
    auto s2 = solve_theta(Rat(2), Rat(6), Rat(4), Rat(4));
    CHECK(s2.theta == Rat(3, 4));
    CHECK(holder_interpolate(Rat(3), Rat(6), s2.theta) == Rat(24, 5));
    CHECK(holder_interpolate(Rat(3), Rat(6), s2.theta) != Rat(25, 4));
    CHECK_THROWS_AS(solve_theta(Rat(2), Rat(6), Rat(2), Rat(6)), zetalab::DomainError);
    CHECK_THROWS_AS(holder_interpolate(Rat(2), Rat(6), Rat(3, 2)), zetalab::DomainError);
}

TEST_CASE("mean-square exponent chain by hand") {
    // exponents of X1^{24/301} Z1^{277/301} computed separately with Frac
    Frac t = Frac(13, 160) * Frac(24, 301) + Frac(17, 80) * Frac(277, 301);
    Frac m = Frac(125, 192) * Frac(24, 301) + Frac(7, 32) * Frac(277, 301);
    Frac h = Frac(-141, 320) * Frac(24, 301) + Frac(11, 160) * Frac(277, 301);
    // H = T^4 M^-9
    CHECK(m - Frac(9) * h == Frac(0));
    CHECK(t + Frac(4) * h == Frac(1515, 4816));
    CHECK(verify_identity("thm4_chain").holds);
}

TEST_CASE("Y2 exponent by hand") {
    Frac t = Frac(32, 153) * Frac(408, 5723) + Frac(17, 80) * Frac(5315, 5723);
    Frac m = Frac(19, 51) * Frac(408, 5723) + Frac(7, 32) * Frac(5315, 5723);
    Frac h = Frac(-329, 612) * Frac(408, 5723) + Frac(11, 160) * Frac(5315, 5723);
    CHECK(m - Frac(9) * h == Frac(0));
    CHECK(t + Frac(4) * h == Frac(28785, 91568));
    CHECK(verify_identity("y2_exponent").holds);
}

TEST_CASE("registry") {
    const auto& reg = Registry::builtin();
    for (const char* id : {"thm4_chain", "y2_exponent", "q6_reduction", "intro_compare", "b_q7", "a_q7",
                           "interp_48_11", "interp_24_5", "eq13_10", "eq12_10_interval"})
        CHECK_MESSAGE(reg.contains(id), id);
    for (const auto& r : reg.verify_all()) CHECK_MESSAGE(r.holds, std::string(r.id + ": " + r.lhs + " " + r.relation + " " + r.rhs));
    CHECK(!verify_identity("interp_24_5").note.empty());
    CHECK_THROWS_AS(verify_identity("no_such_identity"), zetalab::InputError);
}

TEST_CASE("broken registry fixture fails") {
    Registry reg = Registry::builtin();
    reg.load_json(std::string(ZETALAB_FIXTURES) + "/broken_registry.json");
    bool any_failed = false;
    for (const auto& r : reg.verify_all()) any_failed = any_failed || !r.holds;
    CHECK(any_failed);
}

TEST_CASE("ceiling exponents") {
    auto [t7, l7] = h_ceiling_exponents(7);
    CHECK(t7 == Rat(643, 2048));
    CHECK(l7 == Rat(969, 40960));
    CHECK(h_ceiling_exponents(8).first == Rat(99, 314));
    CHECK(h_ceiling_exponents(6).first == Rat(247, 792));
    CHECK(h_ceiling_exponents(6).second == Rat(323, 12320));
}

TEST_CASE("Rat canonical form and algebra") {
    Rat a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rat::parse("10/4") == Rat(5, 2));
    CHECK_THROWS_AS(Rat::parse("x/3"), zetalab::InputError);
    CHECK_THROWS_AS(Rat(1) / Rat(0), zetalab::DomainError);
    zetalab::CounterRng rng(12345);
    for (int i = 0; i < 300; ++i) {
        auto pick = [&] {
            long n = static_cast<long>(rng.below(2001)) - 1000;
            long d = static_cast<long>(rng.below(999)) + 1;
            return Rat(n, d);
        };
        Rat x = pick(), y = pick(), z = pick();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        Rat s = x * y + z;
        CHECK(gcd(s.num(), s.den()) == 1);
        CHECK(s.den() > 0);
    }
}

TEST_CASE("ExponentVector operations") {
    ExponentVector a = ExponentVector::T(Rat(1, 2)) * ExponentVector::of(Var::M, Rat(1));
    ExponentVector b = a.pow(Rat(2));
    CHECK(b[Var::T] == Rat(1));
    CHECK(b[Var::M] == Rat(2));
    CHECK((a / a) == ExponentVector());
    ExponentVector s = b.substitute(Var::M, ExponentVector::T(Rat(1, 3)));
    CHECK(s == ExponentVector::T(Rat(5, 3)));
}

TEST_CASE("compare_bounds") {
    using O = std::strong_ordering;
    CHECK(compare_bounds(ExponentVector::T(Rat(1, 2)), ExponentVector::T(Rat(1, 3)), {}) == O::greater);
    ExponentVector withM = ExponentVector::of(Var::M, Rat(1));
    CHECK_THROWS_AS(compare_bounds(withM, ExponentVector::T(Rat(1)), {}), zetalab::InputError);

    // bound terms under M = T^{1/2}, H = M T^{-1/3}
    std::map<Var, Rat> regime{{Var::M, Rat(1, 2)}, {Var::H, Rat(1, 6)}};
    auto mono = [](Rat t, Rat m, Rat h) {
        ExponentVector e;
        e[Var::T] = t;
        e[Var::M] = m;
        e[Var::H] = h;
        return e;
    };
    ExponentVector first = mono(Rat(397, 2400), Rat(277, 600), Rat(1) - Rat(277, 600));
    ExponentVector second = mono(Rat(1133, 2600), Rat(-19, 50), Rat(1) + Rat(19, 50));
    // by hand: first → 397/2400 + 277/1200 + 323/3600, second → 1133/2600 − 19/100 + 23/100
    Frac f = Frac(397, 2400) + Frac(277, 600) * Frac(1, 2) + Frac(323, 600) * Frac(1, 6);
    Frac g = Frac(1133, 2600) - Frac(19, 50) * Frac(1, 2) + Frac(69, 50) * Frac(1, 6);
    CHECK(same(reduce(first, regime).t, f));
    CHECK(same(reduce(second, regime).t, g));
    CHECK(compare_bounds(first, second, regime) == O::greater);

    ExponentVector with_log = ExponentVector::T(Rat(1, 2));
    with_log[Var::logT] = Rat(1);
    CHECK(compare_bounds(with_log, ExponentVector::T(Rat(1, 2)), {}) == O::greater);
    ExponentVector with_eps = ExponentVector::T(Rat(1, 2));
    with_eps.eps() = Rat(1);
    CHECK(compare_bounds(with_eps, with_log, {}) == O::greater);
}

TEST_CASE("case evaluation") {
    ConditionParams p;
    p.nu = 7;
    double T = 1e12, M = 1e6, H = M * std::pow(T, -0.33);
    CaseReport r = theorem2_case_eval(T, M, H, p);
    // direct long double evaluation of each predicate from its printed form
    long double lT = std::log((long double)T), llT = std::log(lT), lM = std::log((long double)M),
                lH = std::log((long double)H);
    CHECK(r.conditions.at("6.4").vacuous == !(lM <= 7.0L / 16 * lT + 57.0L / 448 * llT));
    CHECK(r.conditions.at("6.5").vacuous == !(lM >= 9.0L / 16 * lT - 57.0L / 448 * llT));
    long double c66 = lM - 643.0L / 2048 * lT + 969.0L / 40960 * llT;
    CHECK(double(r.conditions.at("6.6").rhs) == doctest::Approx(double(c66)).epsilon(1e-15));
    CHECK(r.conditions.at("6.6").holds == (lH <= c66));
    long double c67 = lM - 149.0L / 464 * lT + 969.0L / 64960 * llT;
    CHECK(r.conditions.at("6.7").holds == (lH <= c67));
    CHECK(r.conditions.at("6.10").holds == (lM <= std::log(2.0L) + 0.5L * lT));
    long double a = (1.0L / (189 * 7 - 480)) * ((155 * 7 - 480) * lM + 969.0L / 140 * 7 * llT - (46 * 7 - 160) * lT);
    long double b = (23.0L / 55) * (3 * lM - lT);
    CHECK(double(r.conditions.at("6.11").rhs) == doctest::Approx(double(std::min(a, b))).epsilon(1e-15));
    CHECK(r.applicable_part == Part::A);
    CHECK(!r.bound_terms.empty());

    // push H above the ceiling
    double H_bad = M * std::pow(T, -0.30);
    CaseReport bad = theorem2_case_eval(T, M, H_bad, p);
    CHECK(!bad.conditions.at("6.6").holds);
    CHECK(bad.applicable_part != Part::A);
}
