#include "zetalab/zeta.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace zetalab::zeta {

const char* method_name(Method m) {
    return m == Method::riemann_siegel ? "riemann_siegel" : "euler_maclaurin";
}

Method parse_method(const std::string& s) {
    if (s == "riemann_siegel" || s == "rs") return Method::riemann_siegel;
    if (s == "euler_maclaurin" || s == "em") return Method::euler_maclaurin;
    throw InputError("unknown zeta method: " + s);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2k} for k = 1..11
constexpr std::array<double, 11> kBernoulli2k{
    1.0 / 6,          -1.0 / 30,          1.0 / 42,        -1.0 / 30,
    5.0 / 66,         -691.0 / 2730,      7.0 / 6,         -3617.0 / 510,
    43867.0 / 798,    -174611.0 / 330,    854513.0 / 138};

constexpr int kEmTerms = 10;

/// n^{-1/2-it} for n ≥ 1; the phase goes through double-double when |t| is large.
cplx power_minus_s(double n, double t, bool precise) {
    double turns;
    if (precise)
        turns = dd_frac(dd_mul(dd_mul(dd_log(n), t), dd_inv_two_pi()));
    else
        turns = t * std::log(n) * (0.5 / std::numbers::pi);
    return e_turns(-turns) / std::sqrt(n);
}

/// Smallest-prime-factor table, grown on demand and shared read-only.
std::shared_ptr<const std::vector<std::uint32_t>> spf_table(std::size_t n) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->size() <= n) {
        std::size_t size = std::max<std::size_t>(n + 1, table ? 2 * table->size() : 1024);
        auto spf = std::make_shared<std::vector<std::uint32_t>>(size, 0);
        for (std::size_t i = 2; i < size; ++i) {
            if ((*spf)[i]) continue;
            for (std::size_t j = i; j < size; j += i)
                if (!(*spf)[j]) (*spf)[j] = static_cast<std::uint32_t>(i);
        }
        table = std::move(spf);
    }
    return table;
}

}  // namespace

long em_cutoff(double t) {
    return std::max<long>(static_cast<long>(std::ceil(10.0 + std::abs(t) / 2.0)), 50);
}

ZetaPoint euler_maclaurin(double t_in) {
    require_finite(t_in, "t");
    const double t = std::abs(t_in);
    const bool precise = t > 1e4;
    const long N = em_cutoff(t);
    const cplx s(0.5, t);

    // n^{-s} is completely multiplicative: only primes need a fresh phase.
    const auto spf = spf_table(static_cast<std::size_t>(N));
    thread_local std::vector<cplx> pw;
    pw.assign(static_cast<std::size_t>(N), cplx(1.0, 0.0));
    NeumaierC head;
    head.add(pw[1]);
    for (long n = 2; n < N; ++n) {
        const long p = (*spf)[static_cast<std::size_t>(n)];
        pw[n] = (p == n) ? power_minus_s(static_cast<double>(n), t, precise) : pw[p] * pw[n / p];
        head.add(pw[n]);
    }
    const double magnitude = 2.0 * std::sqrt(static_cast<double>(N));

    const double Nd = static_cast<double>(N);
    const cplx Ns = power_minus_s(Nd, t, precise);  // N^{-s}
    NeumaierC tail;
    tail.add(Ns * Nd / (s - 1.0));
    tail.add(Ns * 0.5);

    // B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    cplx rising = s;
    double fact = 2.0;
    double npow = 1.0 / Nd;
    cplx next_term;
    for (int k = 1; k <= kEmTerms + 1; ++k) {
        cplx term = kBernoulli2k[k - 1] / fact * rising * Ns * npow;
        if (k <= kEmTerms)
            tail.add(term);
        else
            next_term = term;
        rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= double(2 * k + 1) * double(2 * k + 2);
        npow /= Nd * Nd;
    }

    ZetaPoint zp;
    zp.t = t_in;
    zp.method = Method::euler_maclaurin;
    cplx v = head.value() + tail.value();
    zp.value = t_in < 0 ? std::conj(v) : v;

    const double sigma = 0.5;
    const double K1 = 2 * kEmTerms + 1;
    double remainder = std::abs(next_term) * std::abs(s + K1) / (sigma + K1);
    double phase_err = precise ? 0.0 : magnitude * t * std::log(Nd) * kEps;
    zp.error_estimate = remainder + 8 * kEps * magnitude * (1.0 + std::log2(Nd)) + phase_err;
    return zp;
}

// ---------------------------------------------------------------------------
// Riemann–Siegel

namespace {

using HP = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;

struct HPc {
    HP re, im;
};

HPc mul(const HPc& a, const HPc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

constexpr int kMaxTerms = 24;
constexpr int kTaylorHalf = 115;  // F is even; keep z^0 .. z^{2·kTaylorHalf}

/// Per-order correction polynomials G_n(p), so that the n-th term is a^{-n} G_n(p).
struct RsTables {
    std::vector<std::vector<cplx>> g;
};

RsTables build_tables() {
    const HP pi = boost::math::constants::pi<HP>();
    const HP half_pi = pi / 2;
    const HP sqrt2 = sqrt(HP(2));
    const int J = 2 * kTaylorHalf;

    // F(z) = (exp(πi(z²/2 + 3/8)) − i√2 cos(πz/2)) / (2 cos(πz)), as a series in w = z².
    std::vector<HPc> num(kTaylorHalf + 1);
    std::vector<HP> den(kTaylorHalf + 1);
    const HPc rot{cos(3 * pi / 8), sin(3 * pi / 8)};
    HPc ipow{HP(1), HP(0)};  // (iπ/2)^n / n!
    HP cpow = 1;             // (π/2)^{2n} / (2n)!
    HP dpow = 1;             // π^{2n} / (2n)!
    for (int n = 0; n <= kTaylorHalf; ++n) {
        HPc a = mul(rot, ipow);
        HP sign = (n % 2) ? HP(-1) : HP(1);
        num[n] = {a.re, a.im - sqrt2 * sign * cpow};
        den[n] = 2 * sign * dpow;
        ipow = mul(ipow, HPc{HP(0), half_pi / (n + 1)});
        cpow *= half_pi * half_pi / ((2 * n + 1) * (2 * n + 2));
        dpow *= pi * pi / ((2 * n + 1) * (2 * n + 2));
    }
    std::vector<HPc> f(kTaylorHalf + 1);
    for (int n = 0; n <= kTaylorHalf; ++n) {
        HPc acc = num[n];
        for (int i = 1; i <= n; ++i) {
            acc.re -= den[i] * f[n - i].re;
            acc.im -= den[i] * f[n - i].im;
        }
        f[n] = {acc.re / den[0], acc.im / den[0]};
    }
    auto taylor = [&](int j) -> HPc { return (j % 2 || j > J) ? HPc{HP(0), HP(0)} : f[j / 2]; };

    // d-coefficients of the correction series on the critical line
    std::vector<std::vector<HP>> d(kMaxTerms);
    auto D = [&](int n, int k) -> HP {
        if (n < 0 || k < 0 || k >= static_cast<int>(d[n].size())) return HP(0);
        return d[n][k];
    };
    d[0] = {HP(1)};
    for (int n = 1; n < kMaxTerms; ++n) {
        d[n].assign(3 * n / 2 + 1, HP(0));
        for (int k = 0; k <= 3 * n / 2; ++k) {
            int m = 3 * n - 2 * k;
            if (m != 0) {
                d[n][k] = -HP(m + 1) * D(n - 1, k - 2) + D(n - 1, k) / (4 * m);
            } else {
                HP s = 0;
                for (int r = 0; r < k; ++r) {
                    HP ratio = 1;  // (2k-2r)! / (k-r)!
                    for (int i = k - r + 1; i <= 2 * k - 2 * r; ++i) ratio *= i;
                    s += (((k - r) % 2) ? HP(-1) : HP(1)) * ratio * d[n][r];
                }
                d[n][k] = -s;
            }
        }
    }

    RsTables tab;
    tab.g.resize(kMaxTerms);
    for (int n = 0; n < kMaxTerms; ++n) {
        // w_k = d[n,k] / (π^{2n-k} (2i)^k)
        std::vector<HPc> w(3 * n / 2 + 1);
        for (int k = 0; k <= 3 * n / 2; ++k) {
            HP mag = d[n][k] / (pow(pi, 2 * n - k) * pow(HP(2), k));
            switch (k % 4) {  // (-i)^k
                case 0: w[k] = {mag, HP(0)}; break;
                case 1: w[k] = {HP(0), -mag}; break;
                case 2: w[k] = {-mag, HP(0)}; break;
                default: w[k] = {HP(0), mag}; break;
            }
        }
        const int deg = J - 3 * n;
        std::vector<cplx> g(deg + 1);
        for (int e = 0; e <= deg; ++e) {
            HPc acc{HP(0), HP(0)};
            for (int k = 0; k <= 3 * n / 2; ++k) {
                int m = 3 * n - 2 * k;
                HPc c = taylor(e + m);
                if (c.re == 0 && c.im == 0) continue;
                HP falling = 1;  // (e+m)! / e!
                for (int i = e + 1; i <= e + m; ++i) falling *= i;
                HPc term = mul(w[k], HPc{c.re * falling, c.im * falling});
                acc.re += term.re;
                acc.im += term.im;
            }
            g[e] = {static_cast<double>(acc.re), static_cast<double>(acc.im)};
        }
        double peak = 0;
        for (auto& c : g) peak = std::max(peak, std::abs(c));
        while (g.size() > 1 && std::abs(g.back()) < 1e-22 * peak) g.pop_back();
        tab.g[n] = std::move(g);
    }
    return tab;
}

const RsTables& tables() {
    static std::once_flag once;
    static RsTables tab;
    std::call_once(once, [] { tab = build_tables(); });
    return tab;
}

cplx horner(const std::vector<cplx>& c, double x) {
    double re = 0, im = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        re = re * x + it->real();
        im = im * x + it->imag();
    }
    return {re, im};
}

// (1 - 2^{1-2k}) |B_{2k}| / (4k(2k-1)), the coefficients of t^{1-2k} in θ(t)
double theta_coefficient(int k) {
    return (1.0 - std::ldexp(1.0, 1 - 2 * k)) * std::abs(kBernoulli2k[k - 1]) / (4.0 * k * (2 * k - 1));
}

constexpr int kThetaTerms = 9;

double theta_tail(double t, double* next) {
    double acc = 0;
    double tp = t;
    for (int k = 1; k <= kThetaTerms; ++k) {
        acc += theta_coefficient(k) / tp;
        tp *= t * t;
    }
    if (next) *next = theta_coefficient(kThetaTerms + 1) / tp;
    return acc;
}

/// θ(t)/(2π) as a double-double; `tail` receives the small asymptotic part θ − arg.
DD theta_turns(double t, double* tail, double* next) {
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    long double lt = std::log(static_cast<long double>(t) / two_pi);
    long double inv4pi = 1 / (2 * two_pi);
    // (t/4π) log(t/2π) − t/4π − 1/16
    DD main = dd_mul(dd_from_ld(t * inv4pi), dd_from_ld(lt));
    main = dd_add(main, dd_neg(dd_from_ld(t * inv4pi)));
    main = dd_add(main, DD{-0.0625, 0});
    double small = theta_tail(t, next);
    if (tail) *tail = small;
    return dd_add(main, DD{small * (0.5 / std::numbers::pi), 0});
}

}  // namespace

double riemann_siegel_theta(double t) {
    if (!(t >= kRiemannSiegelMinT)) throw DomainError("theta expansion needs t >= 2*pi");
    DD turns = theta_turns(t, nullptr, nullptr);
    return 2 * std::numbers::pi * (turns.hi + turns.lo);
}

ZetaPoint riemann_siegel(double t_in, int max_terms) {
    require_finite(t_in, "t");
    const double t = std::abs(t_in);
    if (t < kRiemannSiegelMinT) throw DomainError("riemann_siegel requires |t| >= 2*pi");
    max_terms = std::clamp(max_terms, 2, kMaxTerms);
    const RsTables& tab = tables();

    const long double a = std::sqrt(static_cast<long double>(t) / (2 * std::numbers::pi_v<long double>));
    const long N = static_cast<long>(std::floor(a));
    const long double p = 1 - 2 * (a - N);

    double tail = 0, theta_next = 0;
    const DD th = theta_turns(t, &tail, &theta_next);

    // e^{iθ} R with R = Σ n^{-s} + (−1)^{N−1} a^{-1/2} e^{-i·arg} Σ_n a^{-n} G_n(p)
    NeumaierC acc;
    double magnitude = 0;
    const DD t_turns = dd_mul(DD{t, 0}, dd_inv_two_pi());
    for (long n = 1; n <= N; ++n) {
        DD phase = dd_add(th, dd_neg(dd_mul(dd_log(static_cast<double>(n)), t_turns)));
        double w = 1.0 / std::sqrt(static_cast<double>(n));
        acc.add(w * e_turns(dd_frac(phase)));
        magnitude += w;
    }

    cplx corr = 0;
    double apow = 1;
    double last = 0, before_last = 0;
    int used = 0;
    for (int n = 0; n < max_terms; ++n) {
        cplx term = apow * horner(tab.g[n], static_cast<double>(p));
        corr += term;
        before_last = last;
        last = std::abs(term);
        used = n + 1;
        apow /= static_cast<double>(a);
        if (n >= 2 && last < 1e-17 && before_last < 1e-17) break;
    }
    const double sign = (N % 2) ? 1.0 : -1.0;  // (−1)^{N−1}
    const cplx rot = e_turns(tail * (0.5 / std::numbers::pi));
    const double scale = sign / std::sqrt(static_cast<double>(a));
    acc.add(scale * rot * corr);

    const double Z = 2.0 * acc.value().real();
    cplx v = Z * e_turns(-dd_frac(th));

    ZetaPoint zp;
    zp.t = t_in;
    zp.method = Method::riemann_siegel;
    zp.value = t_in < 0 ? std::conj(v) : v;
    double truncation = used == max_terms ? 2.0 * std::abs(scale) * (last + before_last) : 0.0;
    // log n carries a long double rounding of about 2^-64 relative
    const double log_err = 2.0 * magnitude * t * std::log(std::max<double>(N, 2)) * 0x1p-63;
    zp.error_estimate = truncation + 2.0 * std::abs(scale) * 4e-17 + 16 * kEps * (magnitude + 1.0) +
                        std::abs(Z) * 2 * theta_next + log_err;
    return zp;
}

ZetaPoint zeta_half_line(double t, Method method) {
    return method == Method::riemann_siegel ? riemann_siegel(t) : euler_maclaurin(t);
}

}  // namespace zetalab::zeta
