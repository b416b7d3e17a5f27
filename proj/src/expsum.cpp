#include "zetalab/expsum.hpp"

#include <cmath>

namespace zetalab::expsum {

double omega(double k, double l) {
    require_finite(k, "k");
    require_finite(l, "l");
    if (l < 0 || l > k) throw DomainError("omega requires 0 <= l <= k");
    // difference of 3/2-powers without cancellation: A^{3/2} − B^{3/2} = (A³ − B³)/(A^{3/2} + B^{3/2})
    double a = k + l, b = k - l;
    double ra = std::sqrt(a), rb = std::sqrt(b);
    double num = 2 * l * (a * a + a * b + b * b);
    double den = a * ra + b * rb;
    return den == 0 ? 0.0 : num / den / 3.0;
}

double omega_deriv(double u, double l, int j) {
    require_finite(u, "u");
    require_finite(l, "l");
    if (!(u > l && l > 0)) throw DomainError("omega_deriv requires u > l > 0");
    double ra = std::sqrt(u + l), rb = std::sqrt(u - l);
    switch (j) {
        case 0: return omega(u, l);
        case 1: return (2 * l / (ra + rb)) / 2.0;
        case 2: return (1.0 / ra - 1.0 / rb) / 4.0;
        default: throw DomainError("omega_deriv supports j = 0, 1, 2");
    }
}

double phi(double u, double l) {
    require_finite(u, "u");
    require_finite(l, "l");
    if (l < 0 || u < l) throw DomainError("phi requires u >= l >= 0");
    if (u == 0) return 0.0;
    return l * l / (u + std::sqrt((u - l) * (u + l)));
}

const char* phase_kind_name(PhaseKind k) {
    switch (k) {
        case PhaseKind::log_minus_quadratic: return "log_minus_quadratic";
        case PhaseKind::pure_log: return "pure_log";
        case PhaseKind::custom_table: return "custom_table";
    }
    return "?";
}

PhaseFunction PhaseFunction::pure_log() { return {}; }

PhaseFunction PhaseFunction::log_minus_quadratic(long b, double M, double T) {
    require_finite(M, "M");
    require_finite(T, "T");
    if (!(M > 0) || T == 0) throw DomainError("log_minus_quadratic needs M > 0 and T != 0");
    PhaseFunction f;
    f.kind_ = PhaseKind::log_minus_quadratic;
    f.b_ = b;
    f.M_ = M;
    f.T_ = T;
    return f;
}

PhaseFunction PhaseFunction::custom_table(Table derivatives) {
    for (const auto& d : derivatives)
        if (!d) throw InputError("custom phase needs all six derivative callables");
    PhaseFunction f;
    f.kind_ = PhaseKind::custom_table;
    f.table_ = std::move(derivatives);
    return f;
}

double PhaseFunction::derivative(int r, double x) const {
    if (r < 0 || r > 5) throw DomainError("derivative order must be 0..5");
    if (kind_ == PhaseKind::custom_table) return table_[r](x);
    double v;
    if (r == 0) {
        v = std::log(x);
    } else {
        double f = 1;
        for (int i = 2; i < r; ++i) f *= i;
        v = ((r % 2) ? f : -f) / std::pow(x, r);
    }
    if (kind_ == PhaseKind::log_minus_quadratic) {
        double c = static_cast<double>(b_) * M_ * M_ / (8 * T_);
        double q = r == 0 ? x * x : r == 1 ? 2 * x : r == 2 ? 2.0 : 0.0;
        v -= c * q;
    }
    return v;
}

double PhaseFunction::difference_turns(double T, long m, long h, double M) const {
    if (kind_ == PhaseKind::custom_table) {
        double d = derivative(0, (m + h) / M) - derivative(0, (m - h) / M);
        return dd_frac(two_prod(T, d));
    }
    // log((m+h)/(m−h)) does not depend on M
    long double ratio = std::log1p(2.0L * h / static_cast<long double>(m - h));
    DD turns = dd_mul(dd_from_ld(ratio), T);
    if (kind_ == PhaseKind::log_minus_quadratic && b_ != 0) {
        // T·b·M_F²·((m+h)² − (m−h)²)/(8 T_F M²) = T·b·M_F²·m·h / (2 T_F M²)
        long double q = static_cast<long double>(T) * b_ * M_ * M_ * m * h /
                        (2.0L * T_ * static_cast<long double>(M) * M);
        turns = dd_add(turns, dd_neg(dd_from_ld(q)));
    }
    return dd_frac(turns);
}

ExpSumParams ExpSumParams::make(double T, double H, double H1, double M, double M1) {
    for (double v : {T, H, H1, M, M1}) require_finite(v, "sum parameter");
    if (!(T > 0)) throw InputError("T must be positive");
    if (!(M > 0)) throw InputError("M must be positive");
    if (H < 0) throw InputError("H must be non-negative");
    if (!(H / 2 <= H1 && H1 <= H)) throw InputError("need H/2 <= H1 <= H");
    if (!(M / 2 <= M1 && M1 <= M)) throw InputError("need M/2 <= M1 <= M");
    return {T, H, H1, M, M1};
}

ExpSumParams ExpSumParams::ranges(double T, double H, double H1, double M, double M1) {
    for (double v : {T, H, H1, M, M1}) require_finite(v, "sum parameter");
    if (T == 0) throw InputError("T must be nonzero");
    if (!(M > 0)) throw InputError("M must be positive");
    return {T, H, H1, M, M1};
}

IntRange half_open(double lo, double hi) {
    return {static_cast<long>(std::floor(lo)) + 1, static_cast<long>(std::floor(hi))};
}

namespace {

constexpr std::size_t kRowChunk = 16;

SumValue log_ratio_sum(double T, IntRange hr, IntRange mr, unsigned threads,
                       const std::function<double(long, long)>& turns) {
    SumValue out;
    out.term_count = hr.size() * mr.size();
    if (out.term_count == 0) return out;
    out.value = chunked_sum<cplx>(static_cast<std::size_t>(hr.size()), kRowChunk, threads, [&](std::size_t i) {
        long h = hr.first + static_cast<long>(i);
        NeumaierC row;
        for (long m = mr.first; m <= mr.last; ++m) row.add(e_turns(turns(m, h)));
        return row.value();
    });
    (void)T;
    return out;
}

}  // namespace

SumValue s_f(const ExpSumParams& p, const PhaseFunction& F, unsigned threads) {
    IntRange hr = half_open(p.H1, p.H), mr = half_open(p.M1, p.M);
    if (hr.size() == 0 || mr.size() == 0) return {};
    // extreme arguments of F: (m_min − h_max)/M and (m_max + h_max)/M, with h ≥ h_min
    double lo = static_cast<double>(mr.first - hr.last) / p.M;
    double hi = static_cast<double>(mr.last + hr.last) / p.M;
    double lo2 = static_cast<double>(mr.first - hr.first) / p.M;
    if (std::min(lo, lo2) < 1.0 / 3 * (1 - 1e-15) || hi > 3.0 * (1 + 1e-15))
        throw DomainError("(m±h)/M leaves [1/3, 3]");
    return log_ratio_sum(p.T, hr, mr, resolve_threads(threads),
                         [&](long m, long h) { return F.difference_turns(p.T, m, h, p.M); });
}

SumValue s_star(double T, double U, double M, double M1, unsigned threads) {
    for (double v : {T, U, M, M1}) require_finite(v, "s_star parameter");
    if (U < 1) throw DomainError("s_star requires U >= 1");
    if (!(M / 2 <= M1 && M1 <= M)) throw DomainError("s_star requires M/2 <= M1 <= M");
    IntRange hr = half_open(0.0, std::expm1(1.0 / U) * M / 2);
    IntRange mr = half_open(M1, M);
    if (hr.size() && mr.size() && mr.first - hr.last <= 0) throw DomainError("m - h <= 0 in s_star");
    // ((m+h)/(m−h))^{2πiT} = e(T·log((m+h)/(m−h)))
    return log_ratio_sum(T, hr, mr, resolve_threads(threads), [&](long m, long h) {
        long double x = static_cast<long double>(m + h) / static_cast<long double>(m - h);
        return dd_frac(dd_mul(dd_from_ld(std::log1p(x - 1)), T));
    });
}

SumValue g_plus(double t, double delta) {
    require_finite(t, "t");
    require_finite(delta, "delta");
    if (t < 8 * std::numbers::pi) throw DomainError("g_plus requires t >= 8*pi");
    if (delta < 1) throw DomainError("g_plus requires delta >= 1");
    const double limit = t / (2 * std::numbers::pi);
    const double log_t = std::log(t);
    SumValue out;
    NeumaierC acc;
    const DD t_turns = dd_mul(DD{t, 0}, dd_inv_two_pi());
    for (long n = 1; static_cast<double>(n) * static_cast<double>(n + 1) <= limit; ++n) {
        for (long m = n + 1; static_cast<double>(m) * static_cast<double>(n) <= limit; ++m) {
            long double lr = std::log1p(static_cast<long double>(m - n) / n);
            double l = static_cast<double>(lr);
            if (delta * l > log_t) break;
            double weight = std::exp(-0.25 * delta * delta * l * l) / (std::sqrt(double(m) * double(n)) * l);
            acc.add(weight * e_turns(dd_frac(dd_mul(dd_from_ld(lr), t_turns))));
            ++out.term_count;
        }
    }
    out.value = acc.value();
    return out;
}

double w_h_ratio(double T, double M, double M1, long h) {
    for (double v : {T, M, M1}) require_finite(v, "w_h_ratio parameter");
    if (h < 1) throw DomainError("h must be at least 1");
    if (static_cast<double>(h) >= M1) throw DomainError("w_h_ratio requires h < M1");
    IntRange mr = half_open(M1, M);
    NeumaierC acc;
    for (long m = mr.first; m <= mr.last; ++m) {
        long double lr = std::log1p(2.0L * h / static_cast<long double>(m - h));
        acc.add(e_turns(dd_frac(dd_mul(dd_from_ld(lr), T))));
    }
    return std::abs(acc.value()) / std::pow(static_cast<double>(h) * T, 2.0 / 7.0);
}

bool ConditionReport::all_hold() const {
    for (const auto& c : checks)
        if (!c.holds) return false;
    return true;
}

ConditionReport condition_report(const PhaseFunction& F, const std::array<double, 4>& C) {
    for (double c : C)
        if (!(c >= 2)) throw InputError("condition constants must be at least 2");
    constexpr int kGrid = 1000;
    constexpr double kRel = 1e-12;  // grid endpoints are not exactly representable
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i) xs[i] = 1.0 / 3 + (3.0 - 1.0 / 3) * i / (kGrid - 1);
    xs.back() = 3.0;

    ConditionReport rep;
    for (int r = 2; r <= 5; ++r) {
        ConditionCheck c{"6.1", r, -1, C[r - 2], 0, false};
        for (double x : xs) {
            double v = std::abs(F.derivative(r, x));
            if (v > c.observed) { c.observed = v; c.witness = x; }
        }
        c.holds = c.observed <= c.bound * (1 + kRel);
        rep.checks.push_back(c);
    }
    for (int r = 2; r <= 4; ++r) {
        ConditionCheck c{"6.2", r, INFINITY, 1.0 / C[r - 2], 0, false};
        for (double x : xs) {
            double v = std::abs(F.derivative(r, x));
            if (v < c.observed) { c.observed = v; c.witness = x; }
        }
        c.holds = c.observed >= c.bound * (1 - kRel);
        rep.checks.push_back(c);
    }
    ConditionCheck c{"6.3", 0, INFINITY, 1.0 / C[3], 0, false};
    for (double x : xs) {
        double f2 = F.derivative(2, x), f3 = F.derivative(3, x), f4 = F.derivative(4, x);
        double v = std::abs(f2 * f4 - 3 * f3 * f3);
        if (v < c.observed) { c.observed = v; c.witness = x; }
    }
    c.holds = c.observed >= c.bound * (1 - kRel);
    rep.checks.push_back(c);
    return rep;
}

}  // namespace zetalab::expsum
