#pragma once

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zetalab::exponents {

/// Exact rational in lowest terms with positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long n) : v_(n) {}
    Rat(int n) : v_(n) {}
    Rat(long n, long d);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    /// Parses "p/q" or an integer literal.
    static Rat parse(const std::string& s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }
    double to_double() const { return v_.get_d(); }
    long double to_long_double() const;
    std::string str() const;
    bool is_zero() const { return sgn(v_) == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    Rat inverse() const { return Rat(1) / *this; }
    Rat pow(long e) const;

private:
    mpq_class v_;
};

enum class Var { T, M, H, U, logT };
inline constexpr std::array<Var, 5> kAllVars{Var::T, Var::M, Var::H, Var::U, Var::logT};
const char* var_name(Var v);

/// Monomial T^a M^b H^c U^d (log T)^e · T^(k·ε).
class ExponentVector {
public:
    ExponentVector() = default;
    static ExponentVector of(Var v, const Rat& e = Rat(1));
    static ExponentVector T(const Rat& e) { return of(Var::T, e); }

    const Rat& operator[](Var v) const { return e_[static_cast<int>(v)]; }
    Rat& operator[](Var v) { return e_[static_cast<int>(v)]; }
    const Rat& eps() const { return eps_; }
    Rat& eps() { return eps_; }

    friend ExponentVector operator*(const ExponentVector& a, const ExponentVector& b);
    friend ExponentVector operator/(const ExponentVector& a, const ExponentVector& b);
    ExponentVector pow(const Rat& r) const;
    /// Replaces v by the monomial `by` (e.g. H -> T^4 M^-9).
    ExponentVector substitute(Var v, const ExponentVector& by) const;
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

    /// log of the monomial at a point; eps_value is the numeric ε.
    long double log_value(long double T, long double M, long double H, long double U,
                          long double eps_value = 0) const;
    std::string str() const;

private:
    std::array<Rat, 5> e_{};
    Rat eps_{};
};

/// Exponent of T, then ε, then log T, after binding M, H, U to powers of T.
struct Reduced {
    Rat t, eps, logt;
    friend bool operator==(const Reduced&, const Reduced&) = default;
};
Reduced reduce(const ExponentVector& e, const std::map<Var, Rat>& regime);

/// Asymptotic ordering of two monomials (T → ∞, then ε → 0⁺ slot, then log T).
std::strong_ordering compare_bounds(const ExponentVector& e1, const ExponentVector& e2,
                                    const std::map<Var, Rat>& regime);

Rat q_nu(long nu);
Rat a_of_q(const Rat& q);
Rat b_of_q(const Rat& q);
Rat holder_interpolate(const Rat& q0, const Rat& q1, const Rat& theta);

struct ThetaSolution {
    Rat theta, q;
};
/// Intersection of 1/q = (1-θ)/q0a + θ/q1a and 1/q = (1-θ)/q0b + θ/q1b.
ThetaSolution solve_theta(const Rat& q0a, const Rat& q1a, const Rat& q0b, const Rat& q1b);

/// T-exponent and log-exponent of the ceiling on H.
std::pair<Rat, Rat> h_ceiling_exponents(long nu);

// ---------------------------------------------------------------------------

struct IdentityResult {
    std::string id;
    bool holds = false;
    std::string lhs, rhs;
    std::string relation;  // "=", "<", ">", "in", ...
    std::string note;
};

using IdentityFn = std::function<IdentityResult()>;

class Registry {
public:
    static const Registry& builtin();
    void add(std::string id, IdentityFn fn);
    std::vector<std::string> ids() const;
    bool contains(const std::string& id) const { return fns_.count(id) > 0; }
    IdentityResult verify(const std::string& id) const;
    std::vector<IdentityResult> verify_all() const;

    /// Adds exact comparisons read from a JSON file: [{"id","lhs","rhs","relation"}].
    void load_json(const std::string& path);

private:
    std::vector<std::string> order_;
    std::map<std::string, IdentityFn> fns_;
};

IdentityResult verify_identity(const std::string& id);
IdentityResult compare_rats(std::string id, const Rat& lhs, const std::string& relation,
                            const Rat& rhs, std::string note = {});

// ---------------------------------------------------------------------------

struct ConditionParams {
    Rat C2{2}, C3{2}, C4{2}, C5{2}, C6{2};
    Rat B4{1}, B5{1};
    long nu = 7;
    Rat epsilon{1, 1000};
    Rat c{1, 3};
    Rat delta0{1, 2};
    void validate() const;
};

struct ConditionValue {
    bool holds = false;
    long double lhs = 0, rhs = 0;  // natural logs of both sides
    bool vacuous = false;          // hypothesis of a conditional clause not met
};

struct BoundTerm {
    std::string label;
    ExponentVector monomial;
    long double log_value = 0;
};

enum class Part { A, B, none };
const char* part_name(Part p);

struct CaseReport {
    std::map<std::string, ConditionValue> conditions;
    Part applicable_part = Part::none;
    std::vector<BoundTerm> bound_terms;
};

CaseReport theorem2_case_eval(double T, double M, double H, const ConditionParams& params);

}  // namespace zetalab::exponents
