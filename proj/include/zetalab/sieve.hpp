#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/numeric.hpp"

namespace zetalab::sieve {

/// Finite subset of R^d, 1 ≤ d ≤ 5, inside the open box Π(−bounds_i, bounds_i).
class PointSet {
public:
    PointSet(int d, std::vector<double> bounds, std::vector<std::vector<double>> points = {});

    int d() const { return d_; }
    std::size_t size() const { return n_; }
    const std::vector<double>& bounds() const { return bounds_; }
    /// i-th coordinate of point p.
    double at(std::size_t p, int i) const { return coords_[p * d_ + i]; }
    const double* point(std::size_t p) const { return coords_.data() + p * d_; }

    void add(const std::vector<double>& x);
    /// Multiset union with a copy of itself.
    PointSet doubled() const;
    /// Every point sent to −x.
    PointSet negated() const;

    static PointSet uniform(int d, std::vector<double> bounds, std::size_t n, CounterRng& rng);

private:
    int d_;
    std::size_t n_ = 0;
    std::vector<double> bounds_;
    std::vector<double> coords_;
};

/// Σ_{x∈X} Σ_{y∈Y} e(x·y)
cplx bilinear_sum(const PointSet& X, const PointSet& Y);

/// |{(x,x') ∈ X×X : |x_i − x'_i| < 1/V_i for all i}|, ordered pairs.
std::uint64_t close_pair_count(const PointSet& X, const std::vector<double>& V);

/// Monte Carlo sample count used for d ≥ 4.
inline constexpr std::uint64_t kMonteCarloSamples = 1u << 20;

struct MomentBox {
    double value = 0;
    /// Relative change against the coarser grid (or half the samples).
    double refinement_change = 0;
    /// Refinement changed the value by more than 5%.
    bool flagged = false;
    long nodes_per_axis = 0;
    std::uint64_t samples = 0;
};

/// Average of |Σ_y e(x·y)|^q over Π[−U_i, U_i].
/// d ≤ 3: composite Gauss–Legendre per axis at nodes_per_axis, then at twice that, reporting the finer value.
/// d ∈ {4, 5}: Monte Carlo in batches with seeds split from `seed`.
MomentBox moment_box(const PointSet& Y, const std::vector<double>& U, double q, long nodes_per_axis,
                     std::uint64_t seed = 0, unsigned threads = 1);

struct SieveReport {
    int d = 0;
    std::size_t size_x = 0, size_y = 0;
    std::vector<double> U, V;
    double q = 0;
    double lhs = 0;
    double product_factor = 0;
    double cardinality_factor = 0;
    std::uint64_t pair_count = 0;
    double moment_factor = 0;
    double rhs = 0;
    double constant = 0;
    bool moment_flagged = false;
    std::uint64_t seed = 0;
};

/// Both sides of the double large sieve bound with q > 2; U, V are the boxes of X and Y.
SieveReport check_sieve_bound(const PointSet& X, const PointSet& Y, double q, std::uint64_t seed,
                              long nodes_per_axis = 32, unsigned threads = 1);

struct SuiteResult {
    std::vector<SieveReport> reports;
    double max_constant = 0;
    std::size_t worst = 0;
};

/// Seeded random instances: d ∈ {1,2,3} cycling, q alternating 5 and 24/5, U_i and V_i in [1/2, 2].
SuiteResult random_suite(std::size_t instances, std::uint64_t seed, unsigned threads = 1);

}  // namespace zetalab::sieve
