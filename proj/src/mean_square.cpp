#include "zetalab/mean_square.hpp"

#include <cmath>
#include <string>

namespace zetalab::zeta {

const char* kind_name(Kind k) { return k == Kind::E_of_T ? "E_of_T" : "I_of_tU"; }

const char* rule_name(Rule r) { return r == Rule::gauss_panels ? "gauss_panels" : "adaptive_simpson"; }

Rule parse_rule(const std::string& s) {
    if (s == "gauss_panels" || s == "gauss") return Rule::gauss_panels;
    if (s == "adaptive_simpson" || s == "simpson") return Rule::adaptive_simpson;
    throw InputError("unknown quadrature rule: " + s);
}

double mean_square_main_term(double T) {
    long double lT = T;
    return static_cast<double>((std::log(lT / (2 * std::numbers::pi_v<long double>)) + 2 * kEulerGamma - 1) * lT);
}

long resolution_floor(double length, double scale) {
    return static_cast<long>(std::floor(length * std::log(scale + 3.0))) + 1;
}

long auto_nodes(double length, double scale) { return 4 * resolution_floor(length, scale); }

namespace {

constexpr std::size_t kPanelChunk = 256;

double square_gauss_stack(double t) {
    cplx z = t < kSwitchT ? euler_maclaurin(t).value : riemann_siegel(t).value;
    return std::norm(z);
}

double square_simpson_stack(double t) { return std::norm(euler_maclaurin(t).value); }

double gauss_pass(double a, double b, long panels, const GaussRule& rule, unsigned threads) {
    const double h = (b - a) / static_cast<double>(panels);
    return chunked_sum<double>(static_cast<std::size_t>(panels), kPanelChunk, threads, [&](std::size_t i) {
        double lo = a + h * static_cast<double>(i);
        double hi = (i + 1 == static_cast<std::size_t>(panels)) ? b : a + h * static_cast<double>(i + 1);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        Neumaier acc;
        for (std::size_t k = 0; k < rule.x.size(); ++k) acc.add(rule.w[k] * square_gauss_stack(mid + half * rule.x[k]));
        return half * acc.value();
    });
}

struct SimpsonOut {
    double value = 0, error = 0;
    long evals = 0;
};

void simpson_step(double a, double fa, double m, double fm, double b, double fb, double whole, double tol, int depth,
                  SimpsonOut& out) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = square_simpson_stack(lm), frm = square_simpson_stack(rm);
    out.evals += 2;
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        out.value += left + right + delta / 15;
        out.error += std::abs(delta) / 15;
        return;
    }
    simpson_step(a, fa, lm, flm, m, fm, left, tol / 2, depth - 1, out);
    simpson_step(m, fm, rm, frm, b, fb, right, tol / 2, depth - 1, out);
}

}  // namespace

MeanSquareResult integrate_square(double a, double b, long nodes, double scale, const QuadratureOptions& opt) {
    require_finite(a, "lower limit");
    require_finite(b, "upper limit");
    if (!(b > a)) throw DomainError("empty integration interval");
    if (a < 0) throw DomainError("integration interval must lie in t >= 0");
    const long floor_nodes = resolution_floor(b - a, scale);
    if (nodes < floor_nodes)
        throw RefusalError("node count " + std::to_string(nodes) + " below resolution floor; need at least " +
                           std::to_string(floor_nodes));

    MeanSquareResult r;
    r.rule = opt.rule;
    const unsigned threads = resolve_threads(opt.threads);
    const double log_scale = std::log(scale + 3.0);

    if (opt.rule == Rule::gauss_panels) {
        if (opt.order < 2) throw InputError("Gauss order must be at least 2");
        const GaussRule rule = gauss_legendre(opt.order);
        const long design = static_cast<long>(std::ceil((b - a) * 2 * log_scale));
        const long panels = std::max(design, (nodes + opt.order - 1) / opt.order);
        r.value = gauss_pass(a, b, panels, rule, threads);
        r.nodes = panels * opt.order;
        r.quadrature_order = opt.order;
        if (opt.estimate_error) {
            double fine = gauss_pass(a, b, 2 * panels, rule, threads);
            r.error_estimate = 2 * std::abs(fine - r.value) + 1e-13 * std::abs(fine);
        }
        return r;
    }

    const long panels = std::max<long>((nodes + 1) / 2, 1);
    const double h = (b - a) / static_cast<double>(panels);
    const double panel_tol = opt.tolerance / static_cast<double>(panels);
    std::vector<SimpsonOut> outs(static_cast<std::size_t>(panels));
    for_each_chunk(outs.size(), threads, [&](std::size_t i) {
        double lo = a + h * static_cast<double>(i);
        double hi = (i + 1 == outs.size()) ? b : a + h * static_cast<double>(i + 1);
        double mid = 0.5 * (lo + hi);
        double flo = square_simpson_stack(lo), fmid = square_simpson_stack(mid), fhi = square_simpson_stack(hi);
        SimpsonOut& o = outs[i];
        o.evals = 3;
        simpson_step(lo, flo, mid, fmid, hi, fhi, (hi - lo) / 6 * (flo + 4 * fmid + fhi), panel_tol, 40, o);
    });
    Neumaier total, err;
    for (const auto& o : outs) {
        total.add(o.value);
        err.add(o.error);
        r.nodes += o.evals;
    }
    r.value = total.value();
    r.error_estimate = err.value();
    r.quadrature_order = 4;
    return r;
}

MeanSquareResult mean_square_E(double T, long nodes, const QuadratureOptions& opt) {
    require_finite(T, "T");
    if (T < 1) throw DomainError("E(T) requires T >= 1");
    MeanSquareResult r = integrate_square(0.0, T, nodes, T, opt);
    r.kind = Kind::E_of_T;
    r.t_or_T = T;
    r.value -= mean_square_main_term(T);
    return r;
}

MeanSquareResult local_mean_I(double t, double U, long nodes, const QuadratureOptions& opt) {
    require_finite(t, "t");
    require_finite(U, "U");
    if (!(t > 0) || !(U > 0)) throw DomainError("I(t,U) requires t > 0 and U > 0");
    if (t - U < 0) throw DomainError("I(t,U) requires t - U >= 0");
    MeanSquareResult r = integrate_square(t - U, t + U, nodes, t, opt);
    r.kind = Kind::I_of_tU;
    r.t_or_T = t;
    r.U = U;
    r.value /= 2 * U;
    r.error_estimate /= 2 * U;
    return r;
}

}  // namespace zetalab::zeta
