#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zetalab {

using cplx = std::complex<double>;

/// Raised when an argument lies outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised for malformed or non-finite input.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request would exceed the enumeration or resolution budget.
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw InputError(std::string(name) + " must be finite");
}

// ---------------------------------------------------------------------------
// double-double

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

static_assert(std::numeric_limits<long double>::digits >= 64,
              "extended long double required for double-double logarithms");

inline DD dd_from_ld(long double x) {
    double hi = static_cast<double>(x);
    return {hi, static_cast<double>(x - hi)};
}

/// log(x) to about 2^-64 relative accuracy, split into two doubles.
inline DD dd_log(double x) { return dd_from_ld(std::log(static_cast<long double>(x))); }

/// 1/(2π) as a double-double.
inline DD dd_inv_two_pi() {
    static const DD v = dd_from_ld(0.159154943091895335768883763372514362L);
    return v;
}

/// Fractional part of a double-double in [-1/2, 1/2].
inline double dd_frac(DD x) {
    double r = x.hi - std::nearbyint(x.hi);
    double s = r + x.lo;
    return s - std::nearbyint(s);
}

// ---------------------------------------------------------------------------

/// e(x) = exp(2πix), with x reduced modulo 1 first.
inline cplx e_turns(double x) {
    double r = x - std::nearbyint(x);
    double a = 2.0 * std::numbers::pi * r;
    return {std::cos(a), std::sin(a)};
}

/// Neumaier compensated accumulator.
struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct NeumaierC {
    Neumaier re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

/// Worker count: explicit value, else hardware concurrency, never zero.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

/// Runs fn(chunk_index) for every chunk in [0, n_chunks) on up to `threads` workers.
template <class Fn>
void for_each_chunk(std::size_t n_chunks, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n_chunks, 1))));
    if (threads == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < n_chunks; c = next++) fn(c);
        });
    for (auto& th : pool) th.join();
}

/// Sum of f(i) over [0, n): fixed chunks, per-chunk compensated partials, reduced in chunk order.
/// The result depends on chunk_size only, never on the thread count.
template <class T, class Fn>
T chunked_sum(std::size_t n, std::size_t chunk_size, unsigned threads, Fn&& f) {
    using Acc = std::conditional_t<std::is_same_v<T, cplx>, NeumaierC, Neumaier>;
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<T> partial(n_chunks);
    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        Acc acc;
        std::size_t end = std::min(n, (c + 1) * chunk_size);
        for (std::size_t i = c * chunk_size; i < end; ++i) acc.add(f(i));
        partial[c] = acc.value();
    });
    Acc total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

// ---------------------------------------------------------------------------

/// Counter-based generator: output i of stream s is a pure function of (seed, s, i).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t i) const { return mix(key_ + i * 0x9e3779b97f4a7c15ULL); }
    std::uint64_t next() { return at(counter_++); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    CounterRng split(std::uint64_t stream) const { return CounterRng(key_, stream); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
GaussRule gauss_legendre(int n);

}  // namespace zetalab
