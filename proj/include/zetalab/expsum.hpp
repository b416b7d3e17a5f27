#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::expsum {

/// Constant c in ω(k,ℓ) = k^{1/2}ℓ + c·ℓ³k^{-3/2} + O(ℓ⁵k^{-7/2}).
/// Expanding (1±ℓ/k)^{3/2} to fifth order gives c = −1/24.
inline constexpr double kOmegaExpansionC = -1.0 / 24.0;

/// ((k+ℓ)^{3/2} − (k−ℓ)^{3/2}) / 3
double omega(double k, double l);
/// j-th derivative of ω in its first argument, j = 0, 1, 2.
double omega_deriv(double u, double l, int j);
/// u − √(u² − ℓ²), evaluated as ℓ² / (u + √(u² − ℓ²)).
double phi(double u, double l);

enum class PhaseKind { log_minus_quadratic, pure_log, custom_table };

const char* phase_kind_name(PhaseKind k);

class PhaseFunction {
public:
    using Table = std::array<std::function<double(double)>, 6>;

    static PhaseFunction pure_log();
    /// F(x) = log x − b M² x² / (8T)
    static PhaseFunction log_minus_quadratic(long b, double M, double T);
    /// F and its first five derivatives supplied as callables.
    static PhaseFunction custom_table(Table derivatives);

    PhaseKind kind() const { return kind_; }
    long b() const { return b_; }
    double M() const { return M_; }
    double T() const { return T_; }

    /// F^{(r)}(x), r = 0..5, x ∈ [1/3, 3].
    double derivative(int r, double x) const;
    double operator()(double x) const { return derivative(0, x); }

    /// T·(F((m+h)/M) − F((m−h)/M)) reduced to [−1/2, 1/2].
    double difference_turns(double T, long m, long h, double M) const;

private:
    PhaseKind kind_ = PhaseKind::pure_log;
    long b_ = 0;
    double M_ = 1, T_ = 1;
    Table table_;
};

struct ExpSumParams {
    double T = 1, H = 0, H1 = 0, M = 1, M1 = 0;

    /// Checked constructor: T > 0, H/2 ≤ H1 ≤ H, M/2 ≤ M1 ≤ M.
    static ExpSumParams make(double T, double H, double H1, double M, double M1);
    /// Arbitrary half-open ranges H1 < h ≤ H, M1 < m ≤ M; T any nonzero real.
    static ExpSumParams ranges(double T, double H, double H1, double M, double M1);
};

struct SumValue {
    cplx value;
    long term_count = 0;
};

/// Integers in the half-open interval (lo, hi].
struct IntRange {
    long first = 1, last = 0;
    long size() const { return last >= first ? last - first + 1 : 0; }
};
IntRange half_open(double lo, double hi);

SumValue s_f(const ExpSumParams& p, const PhaseFunction& F, unsigned threads = 1);
SumValue s_star(double T, double U, double M, double M1, unsigned threads = 1);
SumValue g_plus(double t, double delta);
double w_h_ratio(double T, double M, double M1, long h);

struct ConditionCheck {
    std::string id;  // "6.1", "6.2", "6.3"
    int r = 0;       // derivative order, 0 for the mixed check
    double observed = 0;
    double bound = 0;
    double witness = 0;
    bool holds = false;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_hold() const;
};

/// Derivative bounds, lower bounds and the F″F⁗ − 3F‴² check on a 1000-point grid over [1/3, 3] with C = (C2, C3, C4, C5).
ConditionReport condition_report(const PhaseFunction& F, const std::array<double, 4>& C);

}  // namespace zetalab::expsum
