#include "zetalab/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "zetalab/expsum.hpp"

namespace zetalab::spacing {

namespace {

/// ω(k,ℓ) continued past ℓ > k by the odd power sgn(y)|y|^{3/2}.
double omega_ext(double k, double l) {
    if (l <= k) return expsum::omega(k, l);
    double a = k + l, b = l - k;
    if (a < 0) throw DomainError("k + l < 0 in omega");
    return (a * std::sqrt(a) + b * std::sqrt(b)) / 3.0;
}

struct Point {
    long k, l;
    double w;
};

std::vector<Point> points(long K, long L) {
    std::vector<Point> p;
    p.reserve(static_cast<std::size_t>(K * L));
    for (long k = K + 1; k <= 2 * K; ++k)
        for (long l = L + 1; l <= 2 * L; ++l) p.push_back({k, l, omega_ext(double(k), double(l))});
    return p;
}

void check_sizes(long K, long L) {
    if (K < 1 || L < 1) throw InputError("K and L must be at least 1");
}

}  // namespace

void SpacingInstance::validate() const {
    check_sizes(K, L);
    require_finite(eta, "eta");
    require_finite(window_constant, "window_constant");
    if (!(eta > 0)) throw InputError("eta must be positive");
    if (!(window_constant > 0)) throw InputError("window_constant must be positive");
    if (nu && *nu < 3) throw InputError("nu must be at least 3");
}

SolutionCount count_system_A(const SpacingInstance& inst, unsigned threads) {
    inst.validate();
    if (inst.K * inst.L > kMaxPairsA)
        throw RefusalError("system A enumeration exceeds (KL)^4 <= 1e10; K*L must be at most " +
                           std::to_string(kMaxPairsA));
    const auto pts = points(inst.K, inst.L);
    const std::size_t n = pts.size();
    const double window = inst.window_constant * inst.eta * std::sqrt(double(inst.K)) * double(inst.L);
    const double diam = std::sqrt(inst.eta) * double(inst.K);

    struct Pair {
        long s, t;
        double w;
        std::uint32_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            pairs.push_back({pts[i].l + pts[j].l, pts[i].l * pts[i].k + pts[j].l * pts[j].k, pts[i].w + pts[j].w, i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return a.s != b.s ? a.s < b.s : a.t != b.t ? a.t < b.t : a.w < b.w;
    });
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (i == 0 || pairs[i].s != pairs[i - 1].s || pairs[i].t != pairs[i - 1].t) starts.push_back(i);
    starts.push_back(pairs.size());

    const std::size_t groups = starts.size() - 1;
    std::vector<std::uint64_t> exact(groups), diagonal(groups);
    for_each_chunk(groups, resolve_threads(threads), [&](std::size_t g) {
        std::uint64_t e = 0, d = 0;
        for (std::size_t a = starts[g]; a < starts[g + 1]; ++a) {
            const Pair& p = pairs[a];
            for (std::size_t b = starts[g]; b < starts[g + 1]; ++b) {
                const Pair& r = pairs[b];
                if (std::abs(p.w - r.w) > window) continue;
                const Point* four[4] = {&pts[p.i], &pts[p.j], &pts[r.i], &pts[r.j]};
                long kmin = four[0]->k, kmax = kmin, lmin = four[0]->l, lmax = lmin;
                for (const Point* q : four) {
                    kmin = std::min(kmin, q->k);
                    kmax = std::max(kmax, q->k);
                    lmin = std::min(lmin, q->l);
                    lmax = std::max(lmax, q->l);
                }
                if (double(kmax - kmin) > diam || double(lmax - lmin) > diam) continue;
                ++e;
                if ((p.i == r.i && p.j == r.j) || (p.i == r.j && p.j == r.i)) ++d;
            }
        }
        exact[g] = e;
        diagonal[g] = d;
    });

    SolutionCount out;
    for (std::size_t g = 0; g < groups; ++g) {
        out.exact += exact[g];
        out.diagonal += diagonal[g];
    }
    out.analytic_bound = analytic_bound_formula(Bound::prop7, inst);
    out.ratio = double(out.exact) / out.analytic_bound;
    return out;
}

SolutionCount count_system_B(const SpacingInstance& inst) {
    inst.validate();
    if (!inst.nu) throw InputError("system B needs nu");
    const int nu = *inst.nu;
    if (nu > 4) throw RefusalError("system B enumeration supports nu <= 4");
    const long K = inst.K, L = inst.L;
    const long umax = (L * L) / K;
    const double singles = double(K) * double(L) * double(2 * umax + 1);
    if (std::pow(singles, nu) > kMaxEnumerationB)
        throw RefusalError("system B enumeration exceeds 1e10 tuples");
    const double window = inst.window_constant * std::sqrt(double(K)) * double(L) * inst.eta;

    struct Item {
        long key;
        double d;
    };
    std::vector<Item> one;
    for (long k = K + 1; k <= 2 * K; ++k)
        for (long l = L + 1; l <= 2 * L; ++l) {
            double base = omega_ext(double(k), double(l));
            for (long u = -umax; u <= umax; ++u)
                one.push_back({u * l, u == 0 ? 0.0 : omega_ext(double(k + u), double(l)) - base});
        }
    auto power = [&](int m) {
        std::vector<Item> out{{0, 0.0}};
        for (int r = 0; r < m; ++r) {
            std::vector<Item> next;
            next.reserve(out.size() * one.size());
            for (const Item& a : out)
                for (const Item& b : one) next.push_back({a.key + b.key, a.d + b.d});
            out.swap(next);
        }
        return out;
    };
    const int left_n = (nu + 1) / 2;
    const auto left = power(left_n);
    std::unordered_map<long, std::vector<double>> right;
    for (const Item& it : power(nu - left_n)) right[it.key].push_back(it.d);
    for (auto& [key, v] : right) std::sort(v.begin(), v.end());

    SolutionCount out;
    for (const Item& a : left) {
        auto f = right.find(-a.key);
        if (f == right.end()) continue;
        const auto& v = f->second;
        auto lo = std::lower_bound(v.begin(), v.end(), -window - a.d);
        auto hi = std::upper_bound(v.begin(), v.end(), window - a.d);
        if (hi > lo) out.exact += static_cast<std::uint64_t>(hi - lo);
    }
    out.diagonal = static_cast<std::uint64_t>(std::llround(std::pow(double(K * L), nu)));
    out.analytic_bound = analytic_bound_formula(Bound::system_b, inst);
    out.ratio = double(out.exact) / out.analytic_bound;
    return out;
}

Bound parse_bound(const std::string& s) {
    if (s == "prop7") return Bound::prop7;
    if (s == "prop9") return Bound::prop9;
    if (s == "prop10_rhs") return Bound::prop10_rhs;
    if (s == "prop10prime_rhs") return Bound::prop10prime_rhs;
    if (s == "system_b") return Bound::system_b;
    throw InputError("unknown bound formula: " + s);
}

const char* bound_name(Bound b) {
    switch (b) {
        case Bound::prop7: return "prop7";
        case Bound::prop9: return "prop9";
        case Bound::prop10_rhs: return "prop10_rhs";
        case Bound::prop10prime_rhs: return "prop10prime_rhs";
        case Bound::system_b: return "system_b";
    }
    return "?";
}

double analytic_bound_formula(Bound which, const SpacingInstance& inst) {
    inst.validate();
    const double K = double(inst.K), L = double(inst.L), eta = inst.eta;
    if (which == Bound::prop7) return eta * eta * std::pow(K, 5) + eta * K * K * K * L;
    if (which == Bound::prop10prime_rhs)
        return std::pow(1 + eta * K * L, 1.0 / 48) * std::pow(1 + eta * K * K / L, 5.0 / 24) * std::sqrt(K * L);
    if (!inst.nu) throw InputError(std::string(bound_name(which)) + " needs nu");
    const double nu = *inst.nu;
    const double bracket = 1 + std::pow(L, 2 * nu - 3) / std::pow(K, nu) +
                           eta * K * L * std::pow(L, 2 * nu - 6) / std::pow(K, nu - 2);
    switch (which) {
        case Bound::system_b: return std::pow(K, nu) * std::pow(L, nu) * bracket;
        case Bound::prop9:
            return std::pow(1 + L * L * L / (K * K), 0.5 - 0.5 / nu) * std::pow(bracket, 0.5 / nu) * std::sqrt(K * L);
        case Bound::prop10_rhs: {
            const double d = 13 * nu - 12;
            return std::pow(1 + eta * K * K / L, 3 * (nu - 1) / d) * std::pow(1 + L * L * L / (K * K), (nu - 1) / (2 * d)) *
                   std::pow(bracket, 1 / (2 * d)) * std::sqrt(K * L);
        }
        default: break;
    }
    throw InputError("unknown bound formula");
}

namespace {

const std::vector<cplx>& unit_or(const std::vector<cplx>& a, std::size_t n, std::vector<cplx>& store) {
    if (a.empty()) {
        store.assign(n, cplx(1, 0));
        return store;
    }
    if (a.size() != n) throw InputError("coefficient count must equal K*L");
    for (const auto& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("coefficients must be finite");
    return a;
}

/// e(f·i/n) for integer f, reduced exactly before scaling.
cplx root(long f, long i, long n) {
    long r = static_cast<long>((static_cast<__int128>(f) * i) % n);
    if (r < 0) r += n;
    return e_turns(double(r) / double(n));
}

}  // namespace

L4Identity l4_count_identity(long K, long L, const std::vector<cplx>& coefficients) {
    check_sizes(K, L);
    const double kl = double(K) * double(L);
    if (kl * kl > 1e8) throw RefusalError("l4 identity needs (KL)^2 <= 1e8");
    std::vector<cplx> store;
    const auto& a = unit_or(coefficients, static_cast<std::size_t>(K * L), store);
    std::vector<std::array<long, 2>> f;
    for (long k = K + 1; k <= 2 * K; ++k)
        for (long l = L + 1; l <= 2 * L; ++l) f.push_back({l, k * l});
    const std::size_t n = f.size();

    L4Identity out;
    std::map<std::array<long, 2>, cplx> diff;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) diff[{f[i][0] - f[j][0], f[i][1] - f[j][1]}] += a[i] * std::conj(a[j]);
    Neumaier m;
    for (const auto& [g, c] : diff) m.add(std::norm(c));
    out.moment_parseval = m.value();

    std::map<std::array<long, 2>, std::uint64_t> sums;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ++sums[{f[i][0] + f[j][0], f[i][1] + f[j][1]}];
    for (const auto& [s, r] : sums) out.count += r * r;

    // |S|⁴ has frequencies within twice the span; a periodic grid with more points integrates it exactly
    long span1 = L - 1, span2 = 4 * K * L - (K + 1) * (L + 1);
    long n1 = 2 * span1 + 1, n2 = 2 * span2 + 1;
    out.grid = {n1, n2};
    Neumaier q;
    for (long i1 = 0; i1 < n1; ++i1)
        for (long i2 = 0; i2 < n2; ++i2) {
            cplx s = 0;
            for (std::size_t p = 0; p < n; ++p) s += a[p] * root(f[p][0], i1, n1) * root(f[p][1], i2, n2);
            double s2 = std::norm(s);
            q.add(s2 * s2);
        }
    out.moment_quadrature = q.value() / (double(n1) * double(n2));
    return out;
}

namespace {

struct Axes {
    std::vector<long> l, kl;
    std::vector<double> w;
    std::size_t distinct1, distinct2, distinct3;
    long span1, span2;
    double span3;
};

Axes axes(const SpacingInstance& inst) {
    Axes ax;
    for (long k = inst.K + 1; k <= 2 * inst.K; ++k)
        for (long l = inst.L + 1; l <= 2 * inst.L; ++l) {
            ax.l.push_back(l);
            ax.kl.push_back(k * l);
            ax.w.push_back(omega_ext(double(k), double(l)));
        }
    auto distinct = [](auto v) {
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    ax.distinct1 = distinct(ax.l);
    ax.distinct2 = distinct(ax.kl);
    ax.distinct3 = distinct(ax.w);
    ax.span1 = inst.L - 1;
    ax.span2 = *std::max_element(ax.kl.begin(), ax.kl.end()) - *std::min_element(ax.kl.begin(), ax.kl.end());
    ax.span3 = *std::max_element(ax.w.begin(), ax.w.end()) - *std::min_element(ax.w.begin(), ax.w.end());
    return ax;
}

constexpr int kPanelOrder = 8;

long round_up(long n, long m) { return (n + m - 1) / m * m; }

double x3_extent(const SpacingInstance& inst) {
    return 1.0 / (inst.eta * double(inst.L) * std::sqrt(double(inst.K)));
}

}  // namespace

MomentGrid moment_grid_floor(const SpacingInstance& inst) {
    inst.validate();
    Axes ax = axes(inst);
    return {long(4 * ax.distinct1), long(4 * ax.distinct2), long(4 * ax.distinct3), false};
}

MomentGrid moment_grid_auto(const SpacingInstance& inst) {
    MomentGrid g = moment_grid_floor(inst);
    Axes ax = axes(inst);
    g.n1 = std::max(g.n1, 2 * ax.span1 + 1);
    g.n2 = std::max(g.n2, 2 * ax.span2 + 1);
    long osc = static_cast<long>(std::ceil(2 * x3_extent(inst) * ax.span3));
    g.n3 = round_up(std::max(g.n3, 4 * osc + kPanelOrder), kPanelOrder);
    return g;
}

MomentEstimate moment_estimate(const SpacingInstance& inst, double q, const std::vector<cplx>& coefficients,
                               const MomentGrid& grid, unsigned threads) {
    inst.validate();
    require_finite(q, "q");
    if (q < 1) throw InputError("q must be at least 1");
    const MomentGrid fl = moment_grid_floor(inst);
    if (grid.n1 < fl.n1 || grid.n2 < fl.n2 || (!grid.x3_disabled && grid.n3 < fl.n3))
        throw RefusalError("moment grid below floor; need at least " + std::to_string(fl.n1) + "x" +
                           std::to_string(fl.n2) + "x" + std::to_string(fl.n3));
    Axes ax = axes(inst);
    const std::size_t n = ax.l.size();
    std::vector<cplx> store;
    const auto& a = unit_or(coefficients, n, store);

    // x₁, x₂ have period 1, so the average over [−1,1] is the average over one period
    std::vector<double> x3, w3;
    if (grid.x3_disabled) {
        x3 = {0.0};
        w3 = {1.0};
    } else {
        const long panels = round_up(grid.n3, kPanelOrder) / kPanelOrder;
        const GaussRule rule = gauss_legendre(kPanelOrder);
        const double R = x3_extent(inst), h = 2 * R / double(panels);
        for (long p = 0; p < panels; ++p) {
            double mid = -R + h * (double(p) + 0.5);
            for (int j = 0; j < kPanelOrder; ++j) {
                x3.push_back(mid + 0.5 * h * rule.x[j]);
                w3.push_back(0.5 * h * rule.w[j] / (2 * R));
            }
        }
    }
    const long L = inst.L;
    std::vector<cplx> e1(static_cast<std::size_t>(grid.n1 * L));
    for (long i1 = 0; i1 < grid.n1; ++i1)
        for (long l = 0; l < L; ++l) e1[i1 * L + l] = root(inst.L + 1 + l, i1, grid.n1);

    const double num = chunked_sum<double>(x3.size(), 1, resolve_threads(threads), [&](std::size_t i3) {
        std::vector<cplx> b(n), d(static_cast<std::size_t>(L));
        for (std::size_t p = 0; p < n; ++p) b[p] = a[p] * e_turns(dd_frac(two_prod(ax.w[p], x3[i3])));
        Neumaier acc;
        for (long i2 = 0; i2 < grid.n2; ++i2) {
            std::fill(d.begin(), d.end(), cplx(0));
            for (std::size_t p = 0; p < n; ++p) d[ax.l[p] - inst.L - 1] += b[p] * root(ax.kl[p], i2, grid.n2);
            for (long i1 = 0; i1 < grid.n1; ++i1) {
                cplx s = 0;
                for (long l = 0; l < L; ++l) s += d[l] * e1[i1 * L + l];
                acc.add(std::pow(std::abs(s), q));
            }
        }
        return w3[i3] * acc.value() / (double(grid.n1) * double(grid.n2));
    });
    Neumaier wsum;
    for (double w : w3) wsum.add(w);
    return {q, grid, std::pow(num / wsum.value(), 1.0 / q)};
}

std::vector<cplx> random_coefficients(long K, long L, std::uint64_t seed) {
    check_sizes(K, L);
    CounterRng rng(seed);
    std::vector<cplx> a(static_cast<std::size_t>(K * L));
    for (auto& z : a) z = e_turns(rng.uniform() - 0.5);
    return a;
}

}  // namespace zetalab::spacing
