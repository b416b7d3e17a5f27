#pragma once

#include <optional>
#include <string>

#include "zetalab/numeric.hpp"

namespace zetalab::zeta {

enum class Method { riemann_siegel, euler_maclaurin };

const char* method_name(Method m);
Method parse_method(const std::string& s);

/// ζ(1/2+it) with the method that produced it.
struct ZetaPoint {
    double t = 0;
    cplx value;
    Method method = Method::euler_maclaurin;
    double error_estimate = 0;
};

/// Smallest |t| accepted by the Riemann–Siegel evaluator (main sum of length ≥ 1).
inline constexpr double kRiemannSiegelMinT = 2.0 * std::numbers::pi;

/// Euler–Maclaurin truncation point: max(⌈10 + |t|/2⌉, 50).
long em_cutoff(double t);

ZetaPoint euler_maclaurin(double t);
/// Riemann–Siegel with adaptively many correction terms (at most max_terms).
ZetaPoint riemann_siegel(double t, int max_terms = 24);
ZetaPoint zeta_half_line(double t, Method method);

/// Riemann–Siegel theta function by its asymptotic expansion (t ≥ 2π).
double riemann_siegel_theta(double t);

}  // namespace zetalab::zeta
