#include "zetalab/cli.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "zetalab/exponents.hpp"
#include "zetalab/expsum.hpp"
#include "zetalab/mean_square.hpp"
#include "zetalab/records.hpp"
#include "zetalab/sieve.hpp"
#include "zetalab/spacing.hpp"

namespace zetalab::cli {

namespace fs = std::filesystem;
using records::OutputRecord;
using records::Value;
using json = nlohmann::ordered_json;

std::string version_string() { return std::string("zetalab ") + ZETALAB_VERSION + " (spec 1)"; }

namespace {

struct Globals {
    std::string out_dir;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::string format = "csv";
};

/// Collects what a command produced, then prints or writes it.
class Sink {
public:
    Sink(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

    void table(const std::string& name, const std::string& schema_id, const std::vector<OutputRecord>& rows) {
        const auto fmt = records::parse_format(g_.format);
        const std::string text =
            fmt == records::Format::csv ? records::to_csv(schema_id, rows) : records::to_json(schema_id, rows);
        if (g_.out_dir.empty()) {
            out_ << text;
            return;
        }
        write(name + (fmt == records::Format::csv ? ".csv" : ".json"), text);
    }

    void document(const std::string& name, const json& doc) {
        if (g_.out_dir.empty()) {
            out_ << doc.dump(2) << "\n";
            return;
        }
        write(name + ".json", doc.dump(2) + "\n");
    }

    const std::vector<std::string>& outputs() const { return outputs_; }

private:
    void write(const std::string& file, const std::string& text) {
        fs::path p = fs::path(g_.out_dir) / file;
        records::write_text(p, text);
        outputs_.push_back(p.string());
    }

    const Globals& g_;
    std::ostream& out_;
    std::vector<std::string> outputs_;
};

using Action = std::function<int(Sink&)>;

OutputRecord zeta_row(const zeta::ZetaPoint& p) {
    return records::make_record("zeta_point", {p.t, p.value.real(), p.value.imag(), std::abs(p.value),
                                               std::string(zeta::method_name(p.method)), p.error_estimate});
}

OutputRecord mean_square_row(const zeta::MeanSquareResult& r) {
    Value u = r.U ? Value{*r.U} : Value{std::monostate{}};
    return records::make_record("mean_square", {std::string(zeta::kind_name(r.kind)), r.t_or_T, u, r.value,
                                                std::int64_t{r.nodes}, std::string(zeta::rule_name(r.rule)),
                                                r.error_estimate});
}

OutputRecord expsum_row(const std::string& kind, double T, double H, double H1, double M, double M1,
                        const expsum::SumValue& s) {
    return records::make_record("expsum", {kind, T, H, H1, M, M1, s.value.real(), s.value.imag(), std::abs(s.value),
                                           std::int64_t{s.term_count}});
}

OutputRecord spacing_row(const std::string& system, const spacing::SpacingInstance& in, const spacing::SolutionCount& c) {
    Value nu = in.nu ? Value{std::int64_t{*in.nu}} : Value{std::monostate{}};
    return records::make_record("spacing", {system, std::int64_t{in.K}, std::int64_t{in.L}, in.eta, nu,
                                            std::int64_t(c.exact), std::int64_t(c.diagonal), c.analytic_bound, c.ratio});
}

OutputRecord sieve_row(const sieve::SieveReport& r) {
    return records::make_record("sieve", {std::int64_t{r.d}, std::int64_t(r.size_x), std::int64_t(r.size_y), r.q, r.lhs,
                                          r.rhs, std::int64_t(r.pair_count), r.constant, std::int64_t(r.seed)});
}

json sieve_json(const sieve::SieveReport& r) {
    json j;
    j["d"] = r.d;
    j["sizes"] = {r.size_x, r.size_y};
    j["U"] = r.U;
    j["V"] = r.V;
    j["q"] = r.q;
    j["lhs"] = r.lhs;
    j["rhs_factors"] = {{"product", r.product_factor},
                        {"cardinality", r.cardinality_factor},
                        {"pair_count", r.pair_count},
                        {"moment", r.moment_factor}};
    j["rhs"] = r.rhs;
    j["constant"] = r.constant;
    j["moment_flagged"] = r.moment_flagged;
    j["seed"] = r.seed;
    return j;
}

long parse_nodes(const std::string& s, double length, double scale) {
    if (s == "auto") return zeta::auto_nodes(length, scale);
    try {
        std::size_t n = 0;
        long v = std::stol(s, &n);
        if (n == s.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError("--nodes must be 'auto' or a positive integer");
}

expsum::PhaseFunction make_phase(const std::string& kind, long b, double M, double T) {
    if (kind == "pure_log") return expsum::PhaseFunction::pure_log();
    if (kind == "log_minus_quadratic") return expsum::PhaseFunction::log_minus_quadratic(b, M, T);
    throw InputError("phase must be pure_log or log_minus_quadratic");
}

// ---------------------------------------------------------------------------

void add_zeta(CLI::App& app, const Globals& g, Action& action) {
    auto* zeta_cmd = app.add_subcommand("zeta", "critical-line zeta values and mean squares");
    zeta_cmd->require_subcommand(1);

    struct EvalOpts {
        std::vector<double> t;
        std::string method = "both";
    };
    auto eo = std::make_shared<EvalOpts>();
    auto* ev = zeta_cmd->add_subcommand("eval", "zeta(1/2+it) at the given ordinates");
    ev->add_option("--t", eo->t, "ordinates")->required();
    ev->add_option("--method", eo->method, "rs, em or both")->capture_default_str();
    ev->callback([eo, &action] {
        action = [eo](Sink& sink) {
            std::vector<OutputRecord> rows;
            bool agree = true;
            for (double t : eo->t) {
                if (eo->method == "both") {
                    auto em = zeta::zeta_half_line(t, zeta::Method::euler_maclaurin);
                    rows.push_back(zeta_row(em));
                    if (std::abs(t) >= zeta::kRiemannSiegelMinT) {
                        auto rs = zeta::zeta_half_line(t, zeta::Method::riemann_siegel);
                        rows.push_back(zeta_row(rs));
                        double tol = std::max({1e-6, rs.error_estimate, em.error_estimate});
                        agree = agree && std::abs(rs.value - em.value) <= tol;
                    }
                } else {
                    rows.push_back(zeta_row(zeta::zeta_half_line(t, zeta::parse_method(eo->method))));
                }
            }
            sink.table("zeta_eval", "zeta_point", rows);
            return agree ? kExitOk : kExitVerificationFailed;
        };
    });

    struct MsOpts {
        double T = 0, t = 0, U = 0;
        std::string nodes = "auto", rule = "gauss_panels";
        double tol = 1e-6;
        int order = 8;
        bool no_error = false;
    };
    auto mo = std::make_shared<MsOpts>();
    auto quad = [mo](CLI::App* c) {
        c->add_option("--nodes", mo->nodes, "node count or auto")->capture_default_str();
        c->add_option("--rule", mo->rule, "gauss_panels or adaptive_simpson")->capture_default_str();
        c->add_option("--tol", mo->tol, "adaptive rule tolerance")->capture_default_str();
        c->add_option("--order", mo->order, "Gauss points per panel")->capture_default_str();
        c->add_flag("--no-error-estimate", mo->no_error, "skip the refinement pass");
    };
    auto options = [mo, &g] {
        zeta::QuadratureOptions o;
        o.rule = zeta::parse_rule(mo->rule);
        o.tolerance = mo->tol;
        o.order = mo->order;
        o.threads = g.threads;
        o.estimate_error = !mo->no_error;
        return o;
    };

    auto* E = zeta_cmd->add_subcommand("E", "mean-square error term E(T)");
    E->add_option("--T", mo->T, "upper limit")->required();
    quad(E);
    E->callback([mo, options, &action] {
        action = [mo, options](Sink& sink) {
            require_finite(mo->T, "T");
            auto r = zeta::mean_square_E(mo->T, parse_nodes(mo->nodes, mo->T, mo->T), options());
            sink.table("zeta_E", "mean_square", {mean_square_row(r)});
            return kExitOk;
        };
    });

    auto* I = zeta_cmd->add_subcommand("I", "local mean I(t,U)");
    I->add_option("--t", mo->t, "centre")->required();
    I->add_option("--U", mo->U, "half-width")->required();
    quad(I);
    I->callback([mo, options, &action] {
        action = [mo, options](Sink& sink) {
            require_finite(mo->t, "t");
            require_finite(mo->U, "U");
            auto r = zeta::local_mean_I(mo->t, mo->U, parse_nodes(mo->nodes, 2 * mo->U, mo->t), options());
            sink.table("zeta_I", "mean_square", {mean_square_row(r)});
            return r.value >= 0 ? kExitOk : kExitVerificationFailed;
        };
    });
}

void add_expsum(CLI::App& app, const Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("expsum", "exponential sums of the Bombieri-Iwaniec method");
    cmd->require_subcommand(1);

    struct Opts {
        double T = 0, H = 0, H1 = 0, M = 0, M1 = 0, U = 1, t = 0, delta = 1;
        std::string phase = "pure_log";
        long b = 0;
        std::optional<double> phase_M, phase_T;
        long h_max = 10;
        std::vector<double> C{2, 2, 2, 2};
    };
    auto o = std::make_shared<Opts>();
    auto phase_opts = [o](CLI::App* c) {
        c->add_option("--phase", o->phase, "pure_log or log_minus_quadratic")->capture_default_str();
        c->add_option("--b", o->b, "integer b of the quadratic phase")->capture_default_str();
        c->add_option("--phase-M", o->phase_M, "M inside the phase (default: the sum's M)");
        c->add_option("--phase-T", o->phase_T, "T inside the phase (default: the sum's T)");
    };

    auto* sf = cmd->add_subcommand("sf", "S_F(T; H, H1; M, M1)");
    for (auto [name, ptr] : {std::pair{"--T", &o->T}, {"--H", &o->H}, {"--H1", &o->H1}, {"--M", &o->M}, {"--M1", &o->M1}})
        sf->add_option(name, *ptr)->required();
    phase_opts(sf);
    sf->callback([o, &g, &action] {
        action = [o, &g](Sink& sink) {
            auto p = expsum::ExpSumParams::make(o->T, o->H, o->H1, o->M, o->M1);
            auto F = make_phase(o->phase, o->b, o->phase_M.value_or(o->M), o->phase_T.value_or(o->T));
            auto s = expsum::s_f(p, F, g.threads);
            sink.table("expsum_sf", "expsum", {expsum_row("s_f", o->T, o->H, o->H1, o->M, o->M1, s)});
            return std::abs(s.value) <= double(s.term_count) * (1 + 1e-12) ? kExitOk : kExitVerificationFailed;
        };
    });

    auto* ss = cmd->add_subcommand("sstar", "S*(T; U; M, M1)");
    for (auto [name, ptr] : {std::pair{"--T", &o->T}, {"--U", &o->U}, {"--M", &o->M}, {"--M1", &o->M1}})
        ss->add_option(name, *ptr)->required();
    ss->callback([o, &g, &action] {
        action = [o, &g](Sink& sink) {
            auto s = expsum::s_star(o->T, o->U, o->M, o->M1, g.threads);
            double H = std::expm1(1.0 / o->U) * o->M / 2;
            sink.table("expsum_sstar", "expsum", {expsum_row("s_star", o->T, H, 0.0, o->M, o->M1, s)});
            return kExitOk;
        };
    });

    auto* gp = cmd->add_subcommand("gplus", "G+(t, delta)");
    gp->add_option("--t", o->t)->required();
    gp->add_option("--delta", o->delta)->required();
    gp->callback([o, &action] {
        action = [o](Sink& sink) {
            auto s = expsum::g_plus(o->t, o->delta);
            sink.table("expsum_gplus", "expsum", {expsum_row("g_plus", o->t, o->delta, 0.0, 0.0, 0.0, s)});
            return kExitOk;
        };
    });

    auto* wh = cmd->add_subcommand("wh", "W_h / (hT)^{2/7} for h = 1..h-max");
    for (auto [name, ptr] : {std::pair{"--T", &o->T}, {"--M", &o->M}, {"--M1", &o->M1}}) wh->add_option(name, *ptr)->required();
    wh->add_option("--h-max", o->h_max)->capture_default_str();
    wh->callback([o, &action] {
        action = [o](Sink& sink) {
            std::vector<OutputRecord> rows;
            for (long h = 1; h <= o->h_max; ++h)
                rows.push_back(records::make_record(
                    "wh_ratio", {o->T, o->M, o->M1, std::int64_t{h}, expsum::w_h_ratio(o->T, o->M, o->M1, h)}));
            sink.table("expsum_wh", "wh_ratio", rows);
            return kExitOk;
        };
    });

    auto* cr = cmd->add_subcommand("conditions", "derivative conditions of the phase on [1/3, 3]");
    phase_opts(cr);
    cr->add_option("--M", o->M, "M of the quadratic phase")->capture_default_str();
    cr->add_option("--T", o->T, "T of the quadratic phase")->capture_default_str();
    cr->add_option("--C", o->C, "C2 C3 C4 C5")->expected(4)->capture_default_str();
    cr->callback([o, &action] {
        action = [o](Sink& sink) {
            auto F = make_phase(o->phase, o->b, o->phase_M.value_or(o->M), o->phase_T.value_or(o->T));
            auto rep = expsum::condition_report(F, {o->C[0], o->C[1], o->C[2], o->C[3]});
            json doc = json::array();
            for (const auto& c : rep.checks)
                doc.push_back({{"id", c.id}, {"r", c.r}, {"observed", c.observed}, {"bound", c.bound},
                               {"witness", c.witness}, {"holds", c.holds}});
            sink.document("expsum_conditions", doc);
            return kExitOk;
        };
    });
}

void add_spacing(CLI::App& app, const Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("spacing", "First Spacing Problem enumeration");
    cmd->require_subcommand(1);

    struct Opts {
        std::string system = "A";
        long K = 1, L = 1;
        double eta = 1, window = 1;
        std::optional<int> nu;
        std::vector<long> Ks, Ls;
        std::vector<double> etas;
    };
    auto o = std::make_shared<Opts>();
    auto common = [o](CLI::App* c) {
        c->add_option("--system", o->system, "A or B")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
        c->add_option("--nu", o->nu, "number of variables for system B");
        c->add_option("--window", o->window, "window constant")->capture_default_str();
    };
    auto run = [o, &g](const spacing::SpacingInstance& in) {
        return o->system == "A" ? spacing::count_system_A(in, g.threads) : spacing::count_system_B(in);
    };

    auto* count = cmd->add_subcommand("count", "one instance");
    common(count);
    count->add_option("--K", o->K)->required();
    count->add_option("--L", o->L)->required();
    count->add_option("--eta", o->eta)->required();
    count->callback([o, run, &action] {
        action = [o, run](Sink& sink) {
            spacing::SpacingInstance in{o->K, o->L, o->eta, o->nu, o->window};
            auto c = run(in);
            sink.table("spacing_count", "spacing", {spacing_row(o->system, in, c)});
            return c.diagonal <= c.exact ? kExitOk : kExitVerificationFailed;
        };
    });

    auto* sweep = cmd->add_subcommand("sweep", "instance grid K x L x eta");
    common(sweep);
    sweep->add_option("--K", o->Ks)->required();
    sweep->add_option("--L", o->Ls)->required();
    sweep->add_option("--eta", o->etas)->required();
    sweep->callback([o, run, &action] {
        action = [o, run](Sink& sink) {
            std::vector<OutputRecord> rows;
            bool ok = true;
            std::vector<double> etas = o->etas;
            std::sort(etas.begin(), etas.end());
            json grid = json::array();
            for (long K : o->Ks)
                for (long L : o->Ls) {
                    std::uint64_t prev = 0;
                    for (double eta : etas) {
                        spacing::SpacingInstance in{K, L, eta, o->nu, o->window};
                        auto c = run(in);
                        ok = ok && c.diagonal <= c.exact && c.exact >= prev;
                        prev = c.exact;
                        rows.push_back(spacing_row(o->system, in, c));
                        grid.push_back({{"K", K}, {"L", L}, {"eta", eta}, {"window_constant", o->window}});
                    }
                }
            sink.table("spacing_sweep", "spacing", rows);
            sink.document("spacing_sweep_grid", json{{"system", o->system}, {"instances", grid}});
            return ok ? kExitOk : kExitVerificationFailed;
        };
    });

    auto* l4 = cmd->add_subcommand("l4", "L^4 moment against the solution count");
    l4->add_option("--K", o->K)->required();
    l4->add_option("--L", o->L)->required();
    l4->callback([o, &action] {
        action = [o](Sink& sink) {
            auto r = spacing::l4_count_identity(o->K, o->L);
            sink.table("spacing_l4", "l4_identity",
                       {records::make_record("l4_identity", {std::int64_t{o->K}, std::int64_t{o->L}, r.moment_parseval,
                                                             r.moment_quadrature, std::int64_t(r.count)})});
            bool ok = r.moment_parseval == double(r.count) &&
                      std::abs(r.moment_quadrature - r.moment_parseval) <= 1e-6 * r.moment_parseval;
            return ok ? kExitOk : kExitVerificationFailed;
        };
    });
}

void add_sieve(CLI::App& app, const Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("sieve", "double large sieve checks");
    cmd->require_subcommand(1);

    struct Opts {
        std::size_t instances = 100;
        double envelope = 16;
        int d = 2;
        std::size_t nx = 20, ny = 20;
        double q = 5;
        long nodes = 32;
    };
    auto o = std::make_shared<Opts>();

    auto* suite = cmd->add_subcommand("suite", "seeded random suite");
    suite->add_option("--instances", o->instances)->capture_default_str();
    suite->add_option("--envelope", o->envelope, "largest accepted constant")->capture_default_str();
    suite->callback([o, &g, &action] {
        action = [o, &g](Sink& sink) {
            auto s = sieve::random_suite(o->instances, g.seed, g.threads);
            std::vector<OutputRecord> rows;
            json reports = json::array();
            for (const auto& r : s.reports) {
                rows.push_back(sieve_row(r));
                reports.push_back(sieve_json(r));
            }
            sink.table("sieve_suite", "sieve", rows);
            sink.document("sieve_suite_reports",
                          json{{"seed", g.seed}, {"max_constant", s.max_constant}, {"reports", reports}});
            return s.max_constant <= o->envelope ? kExitOk : kExitVerificationFailed;
        };
    });

    auto* check = cmd->add_subcommand("check", "one random instance with unit boxes");
    check->add_option("--d", o->d)->check(CLI::Range(1, 5))->capture_default_str();
    check->add_option("--nx", o->nx)->capture_default_str();
    check->add_option("--ny", o->ny)->capture_default_str();
    check->add_option("--q", o->q)->capture_default_str();
    check->add_option("--nodes", o->nodes, "nodes per axis")->capture_default_str();
    check->callback([o, &g, &action] {
        action = [o, &g](Sink& sink) {
            CounterRng rng(g.seed);
            std::vector<double> box(static_cast<std::size_t>(o->d), 1.0);
            auto X = sieve::PointSet::uniform(o->d, box, o->nx, rng);
            auto Y = sieve::PointSet::uniform(o->d, box, o->ny, rng);
            auto r = sieve::check_sieve_bound(X, Y, o->q, g.seed, o->nodes, g.threads);
            sink.table("sieve_check", "sieve", {sieve_row(r)});
            sink.document("sieve_check_report", sieve_json(r));
            return kExitOk;
        };
    });
}

void add_exponents(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("exponents", "exact exponent identities");
    cmd->require_subcommand(1);

    struct Opts {
        bool all = false;
        std::vector<std::string> ids;
        std::string extra;
        long nu_lo = 6, nu_hi = 12;
        double T = 0, M = 0, H = 0;
        long nu = 7;
    };
    auto o = std::make_shared<Opts>();

    auto* verify = cmd->add_subcommand("verify", "verify registry identities");
    verify->add_flag("--all", o->all, "every registry entry");
    verify->add_option("--id", o->ids, "identity ids");
    verify->add_option("--extra", o->extra, "JSON file of extra comparisons");
    verify->callback([o, &action] {
        action = [o](Sink& sink) {
            exponents::Registry reg = exponents::Registry::builtin();
            if (!o->extra.empty()) reg.load_json(o->extra);
            if (!o->all && o->ids.empty()) throw InputError("give --all or --id");
            std::vector<exponents::IdentityResult> res;
            if (o->all) res = reg.verify_all();
            for (const auto& id : o->ids) res.push_back(reg.verify(id));
            std::vector<OutputRecord> rows;
            bool ok = true;
            for (const auto& r : res) {
                rows.push_back(records::make_record("exponents", {r.id, r.lhs, r.rhs, r.holds}));
                ok = ok && r.holds;
            }
            sink.table("exponents_verify", "exponents", rows);
            return ok ? kExitOk : kExitVerificationFailed;
        };
    });

    auto* table = cmd->add_subcommand("table", "q_nu, a(q_nu), b(q_nu) over a range of nu");
    table->add_option("--nu-min", o->nu_lo)->capture_default_str();
    table->add_option("--nu-max", o->nu_hi)->capture_default_str();
    table->callback([o, &action] {
        action = [o](Sink& sink) {
            std::vector<OutputRecord> rows;
            for (long nu = o->nu_lo; nu <= o->nu_hi; ++nu) {
                auto q = exponents::q_nu(nu);
                auto a = exponents::a_of_q(q), b = exponents::b_of_q(q);
                rows.push_back(records::make_record(
                    "nu_table", {std::int64_t{nu}, q.str(), a.str(), b.str(), a.to_double(), b.to_double()}));
            }
            sink.table("exponents_table", "nu_table", rows);
            return kExitOk;
        };
    });

    auto* cs = cmd->add_subcommand("case", "case analysis of the exponential-sum bound at (T, M, H)");
    cs->add_option("--T", o->T)->required();
    cs->add_option("--M", o->M)->required();
    cs->add_option("--H", o->H)->required();
    cs->add_option("--nu", o->nu)->capture_default_str();
    cs->callback([o, &action] {
        action = [o](Sink& sink) {
            exponents::ConditionParams p;
            p.nu = o->nu;
            auto rep = exponents::theorem2_case_eval(o->T, o->M, o->H, p);
            json conds;
            for (const auto& [id, c] : rep.conditions)
                conds[id] = {{"holds", c.holds}, {"lhs", double(c.lhs)}, {"rhs", double(c.rhs)}, {"vacuous", c.vacuous}};
            json terms = json::array();
            for (const auto& t : rep.bound_terms)
                terms.push_back({{"label", t.label}, {"monomial", t.monomial.str()}, {"log_value", double(t.log_value)}});
            sink.document("exponents_case", json{{"T", o->T},
                                                 {"M", o->M},
                                                 {"H", o->H},
                                                 {"nu", o->nu},
                                                 {"conditions", conds},
                                                 {"applicable_part", exponents::part_name(rep.applicable_part)},
                                                 {"bound_terms", terms}});
            return kExitOk;
        };
    });
}

std::map<std::string, std::string> collect_parameters(const CLI::App* app, const std::string& prefix) {
    std::map<std::string, std::string> out;
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = prefix + opt->get_lnames().front();
        if (name == "help" || name == "version" || name == "config") continue;
        std::string v;
        for (const auto& r : opt->results()) v += (v.empty() ? "" : " ") + r;
        if (opt->count() == 0) v = opt->get_default_str();
        if (!v.empty()) out[name] = v;
    }
    for (const CLI::App* sub : app->get_subcommands()) {
        auto inner = collect_parameters(sub, prefix + sub->get_name() + ".");
        out.insert(inner.begin(), inner.end());
    }
    return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical and exact-arithmetic laboratory for the zeta mean-square exponent", "zetalab"};
    app.set_version_flag("--version", version_string());
    app.set_config("--config", "", "experiment file: key = value lines under [subcommand] sections");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--threads", g.threads, "worker count")->envname("ZETALAB_THREADS")->capture_default_str();
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    Action action;
    add_zeta(app, g, action);
    add_expsum(app, g, action);
    add_spacing(app, g, action);
    add_sieve(app, g, action);
    add_exponents(app, action);

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("zetalab");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (!action) throw InputError("no command selected");
        if (!g.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(g.out_dir, ec);
            if (ec) throw records::IoError("cannot create " + g.out_dir);
        }
        records::RunManifest manifest;
        manifest.started_at = records::utc_timestamp();
        Sink sink(g, out);
        const int code = action(sink);
        if (!g.out_dir.empty()) {
            std::string command;
            for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
            manifest.command = command;
            manifest.parameters = collect_parameters(&app, "");
            manifest.seed = g.seed;
            manifest.artifact_version = ZETALAB_VERSION;
            manifest.outputs = sink.outputs();
            records::write_text(fs::path(g.out_dir) / "manifest.json", manifest.to_json());
        }
        if (code == kExitVerificationFailed) err << "verification failed\n";
        return code;
    } catch (const records::IoError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << "\n";
    }
    return kExitInputError;
}

}  // namespace zetalab::cli
