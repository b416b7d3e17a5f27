#pragma once

#include <optional>
#include <string>

#include "zetalab/zeta.hpp"

namespace zetalab::zeta {

/// Euler–Mascheroni constant, 30 significant digits.
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082L;

/// Below this ordinate the quadrature always evaluates ζ by Euler–Maclaurin.
inline constexpr double kSwitchT = 10.0;

enum class Kind { E_of_T, I_of_tU };
enum class Rule { gauss_panels, adaptive_simpson };

const char* kind_name(Kind k);
const char* rule_name(Rule r);
Rule parse_rule(const std::string& s);

struct MeanSquareResult {
    Kind kind = Kind::E_of_T;
    double t_or_T = 0;
    std::optional<double> U;
    double value = 0;
    long nodes = 0;
    int quadrature_order = 0;
    Rule rule = Rule::gauss_panels;
    /// |value at these nodes − value at half the node spacing| (Gauss) or the summed local error (Simpson).
    double error_estimate = 0;
};

struct QuadratureOptions {
    Rule rule = Rule::gauss_panels;
    /// Gauss points per panel.
    int order = 8;
    /// Absolute tolerance for the adaptive rule over the whole interval.
    double tolerance = 1e-6;
    unsigned threads = 1;
    /// Evaluate a second time at doubled nodes to fill error_estimate (Gauss only).
    bool estimate_error = true;
};

/// (log(T/2π) + 2γ − 1) T
double mean_square_main_term(double T);

/// Minimum node count for an interval of the given length: spacing below 1/log(scale+3).
long resolution_floor(double length, double scale);
/// The `--nodes auto` choice: four times the floor.
long auto_nodes(double length, double scale);

/// ∫_a^b |ζ(1/2+it)|² dt.
MeanSquareResult integrate_square(double a, double b, long nodes, double scale, const QuadratureOptions& opt);

MeanSquareResult mean_square_E(double T, long nodes, const QuadratureOptions& opt = {});
MeanSquareResult local_mean_I(double t, double U, long nodes, const QuadratureOptions& opt = {});

}  // namespace zetalab::zeta
