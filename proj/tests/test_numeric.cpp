#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zetalab/numeric.hpp"

using namespace zetalab;

TEST_CASE("two_prod is exact") {
    double a = 1.0 + 0x1p-30, b = 1.0 - 0x1p-29;
    DD p = two_prod(a, b);
    long double exact = static_cast<long double>(a) * b;
    CHECK(static_cast<long double>(p.hi) + p.lo == exact);
}

TEST_CASE("dd_frac reduces large phases") {
    // 10^6 · log(7) / 2π against a long double reference
    DD x = dd_mul(dd_mul(dd_log(7.0), 1e6), dd_inv_two_pi());
    long double ref = 1e6L * std::log(7.0L) / (2 * std::numbers::pi_v<long double>);
    ref -= std::nearbyint(ref);
    CHECK(std::abs(dd_frac(x) - static_cast<double>(ref)) < 1e-12);
    CHECK(std::abs(dd_frac(x)) <= 0.5);
    CHECK(dd_frac(dd_neg(x)) == -dd_frac(x));
}

TEST_CASE("Neumaier recovers cancelled terms") {
    Neumaier s;
    for (double v : {1.0, 1e100, 1.0, -1e100}) s.add(v);
    CHECK(s.value() == 2.0);
}

TEST_CASE("chunked_sum does not depend on thread count") {
    auto f = [](std::size_t i) { return std::sin(double(i)) / (1.0 + double(i)); };
    double one = chunked_sum<double>(100000, 64, 1, f);
    for (unsigned t : {2u, 3u, 8u}) CHECK(chunked_sum<double>(100000, 64, t, f) == one);
    auto g = [](std::size_t i) { return e_turns(0.001 * double(i)); };
    cplx c1 = chunked_sum<cplx>(5000, 16, 1, g);
    CHECK(chunked_sum<cplx>(5000, 16, 4, g) == c1);
}

TEST_CASE("CounterRng is a pure function of seed, stream and counter") {
    CounterRng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    CHECK(a.at(3) == CounterRng(42).at(3));
    CHECK(a.split(1).at(0) != a.split(2).at(0));
    CounterRng u(7);
    for (int i = 0; i < 1000; ++i) {
        double x = u.uniform();
        CHECK((x >= 0 && x < 1));
    }
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1") {
    for (int n : {1, 2, 5, 8, 16}) {
        GaussRule r = gauss_legendre(n);
        double wsum = 0;
        for (double w : r.w) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        int deg = 2 * n - 2;  // even degree, exact
        double s = 0;
        for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], deg);
        CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-13));
    }
}

TEST_CASE("e_turns") {
    CHECK(std::abs(e_turns(0.25) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(e_turns(-0.5) - cplx(-1, 0)) < 1e-15);
}
