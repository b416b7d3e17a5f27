#include "zetalab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zetalab::sieve {

namespace {

void check_dim(int d) {
    if (d < 1 || d > 5) throw InputError("dimension must be in 1..5");
}

void check_box(const std::vector<double>& b, int d, const char* what) {
    if (static_cast<int>(b.size()) != d) throw InputError(std::string(what) + " must have one entry per dimension");
    for (double v : b) {
        require_finite(v, what);
        if (!(v > 0)) throw InputError(std::string(what) + " entries must be positive");
    }
}

double phase(const double* x, const double* y, int d) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += x[i] * y[i];
    return s - std::nearbyint(s);
}

}  // namespace

PointSet::PointSet(int d, std::vector<double> bounds, std::vector<std::vector<double>> points)
    : d_(d), bounds_(std::move(bounds)) {
    check_dim(d);
    check_box(bounds_, d, "bounds");
    for (const auto& p : points) add(p);
}

void PointSet::add(const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != d_) throw InputError("point dimension mismatch");
    for (int i = 0; i < d_; ++i) {
        require_finite(x[i], "point coordinate");
        if (!(std::abs(x[i]) < bounds_[i])) throw InputError("point outside its box");
    }
    coords_.insert(coords_.end(), x.begin(), x.end());
    ++n_;
}

PointSet PointSet::doubled() const {
    PointSet out = *this;
    out.coords_.insert(out.coords_.end(), coords_.begin(), coords_.end());
    out.n_ *= 2;
    return out;
}

PointSet PointSet::negated() const {
    PointSet out = *this;
    for (double& c : out.coords_) c = -c;
    return out;
}

PointSet PointSet::uniform(int d, std::vector<double> bounds, std::size_t n, CounterRng& rng) {
    PointSet s(d, std::move(bounds));
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t p = 0; p < n; ++p) {
        for (int i = 0; i < d; ++i) x[i] = s.bounds_[i] * (2 * rng.uniform() - 1);
        s.add(x);
    }
    return s;
}

cplx bilinear_sum(const PointSet& X, const PointSet& Y) {
    if (X.d() != Y.d()) throw InputError("dimension mismatch between X and Y");
    NeumaierC acc;
    for (std::size_t a = 0; a < X.size(); ++a)
        for (std::size_t b = 0; b < Y.size(); ++b) acc.add(e_turns(phase(X.point(a), Y.point(b), X.d())));
    return acc.value();
}

std::uint64_t close_pair_count(const PointSet& X, const std::vector<double>& V) {
    check_box(V, X.d(), "V");
    const int d = X.d();
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return X.at(a, 0) < X.at(b, 0); });
    std::uint64_t count = X.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double* x = X.point(order[i]);
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const double* y = X.point(order[j]);
            if (!(y[0] - x[0] < 1 / V[0])) break;
            bool close = true;
            for (int k = 1; k < d && close; ++k) close = std::abs(y[k] - x[k]) < 1 / V[k];
            if (close) count += 2;
        }
    }
    return count;
}

namespace {

constexpr int kPanelOrder = 8;
constexpr std::uint64_t kBatch = 1u << 16;

struct Axis {
    std::vector<double> w;
    std::vector<cplx> e;  // node-major table of e(x_i·y_i)
};

Axis axis_table(const PointSet& Y, int i, double U, long nodes) {
    const GaussRule rule = gauss_legendre(kPanelOrder);
    const long panels = nodes / kPanelOrder;
    const double h = 2 * U / double(panels);
    Axis ax;
    for (long p = 0; p < panels; ++p) {
        double mid = -U + h * (double(p) + 0.5);
        for (int j = 0; j < kPanelOrder; ++j) {
            double x = mid + 0.5 * h * rule.x[j];
            ax.w.push_back(rule.w[j] / (2.0 * double(panels)));
            for (std::size_t b = 0; b < Y.size(); ++b) {
                double t = x * Y.at(b, i);
                ax.e.push_back(e_turns(t - std::nearbyint(t)));
            }
        }
    }
    return ax;
}

double tensor_average(const PointSet& Y, const std::vector<double>& U, double q, long nodes, unsigned threads) {
    const int d = Y.d();
    const std::size_t ny = Y.size();
    std::vector<Axis> ax;
    for (int i = 0; i < d; ++i) ax.push_back(axis_table(Y, i, U[i], nodes));
    const std::size_t n = ax[0].w.size();
    const std::size_t n1 = d > 1 ? n : 1, n2 = d > 2 ? n : 1;
    return chunked_sum<double>(n, 1, threads, [&](std::size_t i0) {
        std::vector<cplx> row(ny), cell(ny);
        Neumaier acc;
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            double w01 = ax[0].w[i0] * (d > 1 ? ax[1].w[i1] : 1.0);
            for (std::size_t b = 0; b < ny; ++b)
                row[b] = ax[0].e[i0 * ny + b] * (d > 1 ? ax[1].e[i1 * ny + b] : cplx(1));
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                cplx s = 0;
                if (d > 2)
                    for (std::size_t b = 0; b < ny; ++b) s += row[b] * ax[2].e[i2 * ny + b];
                else
                    for (std::size_t b = 0; b < ny; ++b) s += row[b];
                acc.add(w01 * (d > 2 ? ax[2].w[i2] : 1.0) * std::pow(std::abs(s), q));
            }
        }
        return acc.value();
    });
}

double monte_carlo_sum(const PointSet& Y, const std::vector<double>& U, double q, std::uint64_t batches,
                       std::uint64_t seed, unsigned threads) {
    const int d = Y.d();
    const CounterRng master(seed);
    return chunked_sum<double>(batches, 1, threads, [&](std::size_t b) {
        CounterRng rng = master.split(b);
        std::vector<double> x(static_cast<std::size_t>(d));
        Neumaier acc;
        for (std::uint64_t s = 0; s < kBatch; ++s) {
            for (int i = 0; i < d; ++i) x[i] = U[i] * (2 * rng.uniform() - 1);
            cplx sum = 0;
            for (std::size_t p = 0; p < Y.size(); ++p) sum += e_turns(phase(x.data(), Y.point(p), d));
            acc.add(std::pow(std::abs(sum), q));
        }
        return acc.value();
    });
}

}  // namespace

MomentBox moment_box(const PointSet& Y, const std::vector<double>& U, double q, long nodes_per_axis,
                     std::uint64_t seed, unsigned threads) {
    check_box(U, Y.d(), "U");
    require_finite(q, "q");
    if (!(q > 2)) throw InputError("q must exceed 2");
    if (nodes_per_axis < kPanelOrder) throw RefusalError("nodes_per_axis must be at least 8");
    threads = resolve_threads(threads);
    MomentBox out;
    double coarse;
    if (Y.d() <= 3) {
        long n = (nodes_per_axis + kPanelOrder - 1) / kPanelOrder * kPanelOrder;
        coarse = tensor_average(Y, U, q, n, threads);
        out.value = tensor_average(Y, U, q, 2 * n, threads);
        out.nodes_per_axis = 2 * n;
    } else {
        const std::uint64_t batches = kMonteCarloSamples / kBatch;
        double half = monte_carlo_sum(Y, U, q, batches / 2, seed, threads);
        double rest = monte_carlo_sum(Y, U, q, batches, seed, threads);
        coarse = half / double(batches / 2 * kBatch);
        out.value = rest / double(batches * kBatch);
        out.samples = batches * kBatch;
    }
    out.refinement_change = out.value > 0 ? std::abs(out.value - coarse) / out.value : std::abs(coarse);
    out.flagged = out.refinement_change > 0.05;
    return out;
}

SieveReport check_sieve_bound(const PointSet& X, const PointSet& Y, double q, std::uint64_t seed,
                              long nodes_per_axis, unsigned threads) {
    if (X.d() != Y.d()) throw InputError("dimension mismatch between X and Y");
    require_finite(q, "q");
    if (!(q > 2)) throw InputError("q must exceed 2");
    if (X.size() == 0) throw InputError("X must be nonempty");
    SieveReport r;
    r.d = X.d();
    r.size_x = X.size();
    r.size_y = Y.size();
    r.U = X.bounds();
    r.V = Y.bounds();
    r.q = q;
    r.seed = seed;
    r.lhs = std::abs(bilinear_sum(X, Y));
    r.product_factor = 1;
    for (int i = 0; i < r.d; ++i) r.product_factor *= std::pow(1 + r.U[i] * r.V[i], 1 / q);
    r.cardinality_factor = std::pow(double(X.size()), 1 - 2 / q);
    r.pair_count = close_pair_count(X, r.V);
    MomentBox m = moment_box(Y, r.U, q, nodes_per_axis, seed, threads);
    r.moment_factor = std::pow(m.value, 1 / q);
    r.moment_flagged = m.flagged;
    r.rhs = r.product_factor * r.cardinality_factor * std::pow(double(r.pair_count), 1 / q) * r.moment_factor;
    r.constant = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
    return r;
}

SuiteResult random_suite(std::size_t instances, std::uint64_t seed, unsigned threads) {
    SuiteResult out;
    const CounterRng master(seed);
    for (std::size_t k = 0; k < instances; ++k) {
        CounterRng rng = master.split(k);
        const int d = 1 + static_cast<int>(k % 3);
        const double q = (k % 2 == 0) ? 5.0 : 24.0 / 5.0;
        std::vector<double> U(static_cast<std::size_t>(d)), V(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            U[i] = rng.uniform(0.5, 2.0);
            V[i] = rng.uniform(0.5, 2.0);
        }
        std::size_t nx = 8 + rng.below(33), ny = 8 + rng.below(33);
        PointSet X = PointSet::uniform(d, U, nx, rng);
        PointSet Y = PointSet::uniform(d, V, ny, rng);
        out.reports.push_back(check_sieve_bound(X, Y, q, rng.at(1u << 30), 32, threads));
        if (out.reports.back().constant > out.max_constant) {
            out.max_constant = out.reports.back().constant;
            out.worst = k;
        }
    }
    return out;
}

}  // namespace zetalab::sieve
