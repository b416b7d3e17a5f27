#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::spacing {

/// Counting problem with k ∈ (K, 2K], ℓ ∈ (L, 2L].
struct SpacingInstance {
    long K = 1, L = 1;
    double eta = 1;
    std::optional<int> nu;
    double window_constant = 1;

    void validate() const;
};

struct SolutionCount {
    std::uint64_t exact = 0;
    std::uint64_t diagonal = 0;
    double analytic_bound = 0;
    double ratio = 0;
};

/// Largest admissible K·L for system A: (KL)⁴ ≤ 10¹⁰.
inline constexpr long kMaxPairsA = 316;
/// Largest naive enumeration size accepted by system B.
inline constexpr double kMaxEnumerationB = 1e10;

/// Solutions of ℓ₁+ℓ₂=ℓ₃+ℓ₄, ℓ₁k₁+ℓ₂k₂=ℓ₃k₃+ℓ₄k₄ with the ω window and both diameter limits.
SolutionCount count_system_A(const SpacingInstance& inst, unsigned threads = 1);

/// Solutions of Σuᵢℓᵢ = 0, |Σ ω(kᵢ+uᵢ,ℓᵢ) − ω(kᵢ,ℓᵢ)| ≤ c·√K·L·η with |uᵢ| ≤ L²/K, ν ≤ 4.
SolutionCount count_system_B(const SpacingInstance& inst);

enum class Bound { prop7, prop9, prop10_rhs, prop10prime_rhs, system_b };

Bound parse_bound(const std::string& s);
const char* bound_name(Bound b);

/// Closed-form bound at the instance; K^{0+} and K^ε factors are taken as 1.
double analytic_bound_formula(Bound which, const SpacingInstance& inst);

struct L4Identity {
    double moment_parseval = 0;
    double moment_quadrature = 0;
    std::uint64_t count = 0;
    std::array<long, 2> grid{};
};

/// ∬_{[0,1]²} |Σ a_{kℓ} e(ℓx₁ + kℓx₂)|⁴ by difference multiplicities and by a periodic grid,
/// next to the number of solutions of ℓ₁+ℓ₂=ℓ₃+ℓ₄, ℓ₁k₁+ℓ₂k₂=ℓ₃k₃+ℓ₄k₄.
/// Coefficients are indexed (k−K−1)·L + (ℓ−L−1); empty means all ones.
L4Identity l4_count_identity(long K, long L, const std::vector<cplx>& coefficients = {});

struct MomentGrid {
    long n1 = 0, n2 = 0, n3 = 0;
    /// Replace the x₃ integral by the single slice x₃ = 0.
    bool x3_disabled = false;
};

struct MomentEstimate {
    double q = 2;
    MomentGrid grid;
    double value = 0;
};

/// Grid floor: four times the number of distinct frequencies on each axis.
MomentGrid moment_grid_floor(const SpacingInstance& inst);
/// Floor raised so that x₁, x₂ resolve twice the frequency span.
MomentGrid moment_grid_auto(const SpacingInstance& inst);

/// Averaged L^q norm of Σ a_{kℓ} e(ℓx₁+kℓx₂+ω(k,ℓ)x₃) over [−1,1]²×[−1/(ηL√K), 1/(ηL√K)].
MomentEstimate moment_estimate(const SpacingInstance& inst, double q, const std::vector<cplx>& coefficients,
                               const MomentGrid& grid, unsigned threads = 1);

/// Unimodular coefficients with uniformly random phases.
std::vector<cplx> random_coefficients(long K, long L, std::uint64_t seed);

}  // namespace zetalab::spacing
