// specnorm: condition numbers of complex-scaled orthogonal polynomial
// families -- norms, proved bounds, growth and spectral-expansion reports.

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "specnorm/asymptotics.hpp"
#include "specnorm/reports.hpp"
#include "specnorm/sweep.hpp"
#include "specnorm/version.hpp"

using json = nlohmann::ordered_json;
using namespace specnorm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSector = 3;
constexpr int kExitPrecisionBudget = 4;
constexpr int kExitTheoremViolation = 5;

struct Options {
    std::string family = "hermite";
    std::string gamma = "0";
    std::string beta;
    std::string tau = "0.5";
    std::string coeffs;
    std::string domain;
    std::string theta = "0";
    int n = 100;
    int n_max = 100;
    int stride = 2;
    std::string t = "0";
    long digits = 0;  // resolved against SPECNORM_DIGITS later
    std::string format = "plain";
    bool plot = false;
    std::string out;
    int oracle_cutoff = 20;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long resolve_digits(const Options& o) {
    long d = o.digits;
    if (d == 0) {
        if (const char* env = std::getenv("SPECNORM_DIGITS"); env && *env) {
            try {
                d = std::stol(env);
            } catch (...) {
                throw UsageError("SPECNORM_DIGITS is not a number");
            }
        } else {
            d = 30;
        }
    }
    if (d < 4) throw UsageError("digits must be >= 4");
    return d;
}

PrecisionPolicy policy_for(const Options& o) {
    return PrecisionPolicy::with_target(resolve_digits(o));
}

Domain domain_for(const Options& o) {
    if (o.domain == "half") return Domain::HalfLine;
    if (o.domain == "full") return Domain::FullLine;
    if (!o.domain.empty()) throw UsageError("domain must be 'half' or 'full'");
    if (o.family == "hermite") return Domain::FullLine;
    return Domain::HalfLine;
}

std::vector<mpq_class> parse_coeff_list(const std::string& text) {
    std::vector<mpq_class> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Angle::decimal_to_mpq(item));
    if (out.empty()) throw UsageError("empty coefficient list");
    return out;
}

WeightSpec build_spec(const Options& o) {
    try {
        if (o.family == "hermite") {
            if (o.domain == "half") throw UsageError("the oscillator weight lives on the full line");
            return WeightSpec::hermite();
        }
        if (o.family == "laguerre") {
            if (o.domain == "full") throw UsageError("the Laguerre weight lives on the half line");
            return WeightSpec::laguerre();
        }
        if (o.family == "gammabeta") {
            if (o.beta.empty()) throw UsageError("gammabeta needs --beta");
            return WeightSpec::gamma_beta(Angle::decimal_to_mpq(o.gamma),
                                          Angle::decimal_to_mpq(o.beta),
                                          Angle::decimal_to_mpq(o.tau), domain_for(o));
        }
        if (o.family == "polyexp") {
            if (o.coeffs.empty()) throw UsageError("polyexp needs --coeffs c1,c2,...");
            return WeightSpec::poly_exp(parse_coeff_list(o.coeffs), domain_for(o));
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown family '" + o.family + "'");
}

Angle parse_theta(const Options& o) {
    try {
        return Angle::parse(o.theta);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

json family_json(const WeightSpec& spec) {
    json f;
    if (spec.is_classical_hermite() && spec.tau() == mpq_class(1, 2)) {
        f["kind"] = "hermite";
    } else if (spec.is_classical_laguerre() && spec.tau() == mpq_class(1, 2)) {
        f["kind"] = "laguerre";
    } else if (spec.family() == WeightSpec::Family::GammaBeta) {
        f["kind"] = "gammabeta";
    } else {
        f["kind"] = "polyexp";
    }
    if (spec.family() == WeightSpec::Family::GammaBeta) {
        f["gamma"] = spec.gamma().get_str();
        f["beta"] = spec.beta().get_str();
        f["tau"] = spec.tau().get_str();
    } else {
        json cs = json::array();
        for (const auto& c : spec.coeffs()) cs.push_back(c.get_str());
        f["coeffs"] = cs;
    }
    f["domain"] = spec.domain() == Domain::FullLine ? "full" : "half";
    return f;
}

json provenance(const std::string& command, const WeightSpec& spec, const Angle& theta,
                long digits) {
    json j;
    j["tool"] = "specnorm";
    j["version"] = kVersion;
    j["command"] = command;
    j["family"] = family_json(spec);
    j["theta"] = {{"text", theta.describe()},
                  {"radians", to_string(theta.value(digits_to_bits(digits + 10)), digits)},
                  {"pi_units", to_string(theta.pi_units(digits_to_bits(digits + 10)), digits)}};
    j["digits_requested"] = digits;
    return j;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + o.out + "'");
    f << text;
}

void emit_plot_script(const Options& o, const std::string& command) {
    if (!o.plot) return;
    if (o.out.empty()) throw UsageError("--plot needs --out so the script has a data file to read");
    std::string script = o.out + ".gp";
    std::ofstream f(script, std::ios::binary);
    if (!f) throw UsageError("cannot open plot script '" + script + "'");
    f << "# gnuplot script generated by specnorm " << kVersion << "\n";
    f << "set datafile separator ','\n";
    f << "set key left top\n";
    if (command == "bounds") {
        f << "set logscale y\n";
        f << "plot '" << o.out << "' skip 1 using 1:3 with lines title 'N', \\\n";
        f << "     '" << o.out << "' skip 1 using 1:4 with lines title 'lower', \\\n";
        f << "     '" << o.out << "' skip 1 using 1:5 with lines title 'upper'\n";
    } else if (command == "growth") {
        f << "plot '" << o.out << "' skip 1 using 1:4 with lines title 'log N / n', \\\n";
        f << "     '" << o.out << "' skip 1 using 1:5 with lines title 'sigma_n'\n";
    } else if (command == "expansion") {
        f << "set logscale y\n";
        f << "plot '" << o.out << "' skip 1 using 1:2 with lines title 'term norm'\n";
    } else if (command == "table1") {
        f << "plot '" << o.out << "' skip 1 using 1:3 with linespoints title 'sigma_n', \\\n";
        f << "     '" << o.out << "' skip 1 using 1:5 with linespoints title 'mu'\n";
    } else {
        f << "plot '" << o.out << "' skip 1 using 1:2 with lines title 'column 2'\n";
    }
}

std::string norm_json_value(const HPReal& v, long digits) { return to_string(v, digits); }

json norm_result_json(const NormResult& r, long digits) {
    json row;
    row["n"] = r.n;
    row["N"] = norm_json_value(r.norm.value, digits);
    row["lower"] = norm_json_value(r.lower, digits);
    if (r.upper) {
        row["upper"] = norm_json_value(*r.upper, digits);
    } else {
        row["upper"] = nullptr;
    }
    row["lower_ok"] = r.lower_ok;
    if (r.upper_ok) {
        row["upper_ok"] = *r.upper_ok;
    } else {
        row["upper_ok"] = nullptr;
    }
    row["digits_certified"] = r.norm.certified_digits;
    row["precision_bits"] = r.norm.precision_used;
    row["cancellation_log10"] = fmt_double(r.norm.cancellation_magnitude);
    return row;
}

bool bounds_hold(const NormResult& r) {
    return r.lower_ok && (!r.upper_ok || *r.upper_ok);
}

// ---------------------------------------------------------------- commands

int cmd_norm(const Options& o) {
    WeightSpec spec = build_spec(o);
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    NormResult r = projection_norm(spec, o.n, theta, policy_for(o));

    if (o.format == "json") {
        json j = provenance("norm", spec, theta, digits);
        j["result"] = norm_result_json(r, digits);
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        emit(o, bounds_csv({r}, digits));
    } else {
        std::ostringstream os;
        os << "N_{" << r.n << "," << theta.describe() << "} = " << to_string(r.norm.value, digits)
           << "\n";
        os << "certified digits : " << r.norm.certified_digits << "\n";
        os << "precision (bits) : " << r.norm.precision_used << "\n";
        os << "cancellation     : 10^" << fmt_double(r.norm.cancellation_magnitude) << "\n";
        os << "lower bound      : " << to_string(r.lower, digits) << "  ["
           << (r.lower_ok ? "ok" : "VIOLATED") << "]\n";
        if (r.upper) {
            os << "upper bound      : " << to_string(*r.upper, digits) << "  ["
               << (*r.upper_ok ? "ok" : "VIOLATED") << "]\n";
        } else {
            os << "upper bound      : not applicable\n";
        }
        emit(o, os.str());
    }
    return bounds_hold(r) ? kExitOk : kExitTheoremViolation;
}

int cmd_table1(const Options& o) {
    long digits = resolve_digits(o);
    std::vector<mpq_class> rows = {mpq_class(0),     mpq_class(1, 40), mpq_class(1, 20),
                                   mpq_class(1, 10), mpq_class(3, 20), mpq_class(1, 5)};
    auto t = table1_rows(o.n, rows, policy_for(o), true);

    if (o.format == "json") {
        json j;
        j["tool"] = "specnorm";
        j["version"] = kVersion;
        j["command"] = "table1";
        j["family"] = family_json(WeightSpec::hermite());
        j["n"] = o.n;
        j["digits_requested"] = digits;
        json rs = json::array();
        for (const auto& row : t) {
            json r;
            r["theta_over_pi"] = row.theta_over_pi.get_str();
            r["sec_2theta"] = to_string(row.sec_2theta, digits);
            r["sigma_n"] = to_string(row.sigma_n, digits);
            r["four_sec_2theta"] = to_string(row.four_sec_2theta, digits);
            r["mu"] = to_string(row.mu, digits);
            r["digits_certified"] = row.certified_digits;
            rs.push_back(std::move(r));
        }
        j["rows"] = rs;
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        emit(o, table1_csv(t, digits));
    } else {
        std::ostringstream os;
        os << "theta/pi   sec(2t)      sigma_" << o.n << "    4sec(2t)     mu\n";
        for (const auto& row : t) {
            os << row.theta_over_pi.get_str() << "\t" << to_string(row.sec_2theta, 5) << "\t"
               << to_string(row.sigma_n, 5) << "\t" << to_string(row.four_sec_2theta, 5) << "\t"
               << to_string(row.mu, 5) << "\n";
        }
        emit(o, os.str());
    }
    emit_plot_script(o, "table1");
    return kExitOk;
}

int cmd_bounds(const Options& o) {
    WeightSpec spec = build_spec(o);
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    auto rows = bounds_sweep(spec, theta, o.n_max, o.stride, policy_for(o), true);

    bool ok = true;
    for (const auto& r : rows) ok = ok && bounds_hold(r);

    if (o.format == "json") {
        json j = provenance("bounds", spec, theta, digits);
        json rs = json::array();
        for (const auto& r : rows) rs.push_back(norm_result_json(r, digits));
        j["rows"] = rs;
        j["all_bounds_hold"] = ok;
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, bounds_csv(rows, digits));
    }
    emit_plot_script(o, "bounds");
    return ok ? kExitOk : kExitTheoremViolation;
}

int cmd_growth(const Options& o) {
    WeightSpec spec = build_spec(o);
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    GrowthReport g = growth_report(spec, theta, o.n_max, o.stride, policy_for(o), true);

    if (o.format == "json") {
        json j = provenance("growth", spec, theta, digits);
        json rs = json::array();
        for (const auto& e : g.entries) {
            json row;
            row["n"] = e.n;
            row["N"] = to_string(e.norm.value, digits);
            row["exponent"] = e.exponent ? json(to_string(*e.exponent, digits)) : json(nullptr);
            row["sigma"] = e.sigma ? json(to_string(*e.sigma, digits)) : json(nullptr);
            row["digits_certified"] = e.norm.certified_digits;
            rs.push_back(row);
        }
        j["rows"] = rs;
        j["s_lower"] = to_string(g.s_lower, digits);
        j["s_upper"] = g.s_upper ? json(to_string(*g.s_upper, digits)) : json(nullptr);
        j["s_estimate"] = to_string(g.s_estimate, digits);
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n,theta_rad,N,exponent,sigma\n";
        for (const auto& e : g.entries) {
            os << e.n << "," << to_string(theta.value(digits_to_bits(digits + 5)), digits) << ","
               << to_string(e.norm.value, digits) << ","
               << (e.exponent ? to_string(*e.exponent, digits) : std::string()) << ","
               << (e.sigma ? to_string(*e.sigma, digits) : std::string()) << "\n";
        }
        os << "# s_lower = " << to_string(g.s_lower, digits) << "\n";
        if (g.s_upper) os << "# s_upper = " << to_string(*g.s_upper, digits) << "\n";
        os << "# s_estimate = " << to_string(g.s_estimate, digits) << "\n";
        emit(o, os.str());
    }
    emit_plot_script(o, "growth");
    return kExitOk;
}

int cmd_expansion(const Options& o) {
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    mpq_class t;
    try {
        t = Angle::decimal_to_mpq(o.t);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    ExpansionReport r = expansion_terms(theta, t, o.n_max, policy_for(o), true);
    const char* verdict = r.verdict == Verdict::Convergent    ? "convergent"
                          : r.verdict == Verdict::Divergent   ? "divergent"
                                                              : "indeterminate";

    if (o.format == "json") {
        json j = provenance("expansion", WeightSpec::hermite(), theta, digits);
        j["t"] = t.get_str();
        json rs = json::array();
        for (const auto& e : r.terms) {
            json row;
            row["n"] = e.n;
            row["term"] = to_string(e.term, digits);
            rs.push_back(std::move(row));
        }
        j["terms"] = rs;
        j["verdict"] = verdict;
        j["tail_slope"] = fmt_double(r.tail_slope);
        j["t_z_bracket"] = {to_string(r.bracket.lower, digits), to_string(r.bracket.upper, digits)};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n,term\n";
        for (const auto& e : r.terms) os << e.n << "," << to_string(e.term, digits) << "\n";
        os << "# verdict = " << verdict << "\n";
        os << "# tail_slope = " << fmt_double(r.tail_slope) << "\n";
        os << "# t_z_bracket = [" << to_string(r.bracket.lower, digits) << ", "
           << to_string(r.bracket.upper, digits) << "]\n";
        emit(o, os.str());
    }
    emit_plot_script(o, "expansion");
    return kExitOk;
}

int cmd_verify(const Options& o) {
    WeightSpec spec = build_spec(o);
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    PrecisionPolicy pol = policy_for(o);

    auto rows = bounds_sweep(spec, theta, o.n_max, o.stride, pol, true);
    int cutoff = std::min(o.oracle_cutoff, o.n_max);
    long oracle_need = std::max(10L, resolve_digits(o) - 10);

    struct VerifyRow {
        int n;
        long agreed = -1;  // -1: oracle not run
        bool ok = true;
    };
    std::vector<VerifyRow> checks;
    bool all_ok = true;
    for (const auto& r : rows) {
        VerifyRow v{r.n, -1, bounds_hold(r)};
        if (r.n <= cutoff) {
            CertifiedValue oracle = quadrature_norm_oracle(spec, r.n, theta, pol);
            v.agreed = agreed_digits(r.norm.value, oracle.value);
            v.ok = v.ok && v.agreed >= oracle_need;
        }
        all_ok = all_ok && v.ok;
        checks.push_back(v);
    }

    if (o.format == "json") {
        json j = provenance("verify", spec, theta, digits);
        json rs = json::array();
        for (size_t i = 0; i < rows.size(); ++i) {
            json row = norm_result_json(rows[i], digits);
            row["oracle_agreed_digits"] =
                checks[i].agreed >= 0 ? json(checks[i].agreed) : json(nullptr);
            row["ok"] = checks[i].ok;
            rs.push_back(row);
        }
        j["rows"] = rs;
        j["all_ok"] = all_ok;
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n,N,lower_ok,upper_ok,oracle_agreed_digits,ok\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            os << rows[i].n << "," << to_string(rows[i].norm.value, digits) << ","
               << bool_str(rows[i].lower_ok) << "," << opt_bool_str(rows[i].upper_ok) << ","
               << (checks[i].agreed >= 0 ? std::to_string(checks[i].agreed) : std::string("na"))
               << "," << bool_str(checks[i].ok) << "\n";
        }
        os << "# all_ok = " << bool_str(all_ok) << "\n";
        emit(o, os.str());
    }
    return all_ok ? kExitOk : kExitTheoremViolation;
}

int cmd_semiclassical(const Options& o) {
    Angle theta = parse_theta(o);
    long digits = resolve_digits(o);
    PrecisionPolicy pol = policy_for(o);
    const long rp = digits_to_bits(digits + 10);
    WeightSpec spec = WeightSpec::hermite();

    HPReal mu = semiclassical_mu(theta, rp);
    HPReal tan2t = tan(theta.scaled(2).value(rp));

    struct Row {
        int n;
        HPReal log_norm;
        HPReal heuristic;   // n tan 2 theta
        HPReal gauss_log;   // log gaussian_ratio(psi1, psi2)
    };
    std::vector<int> grid;
    for (int n = std::max(o.stride, 2); n <= o.n_max; n += o.stride) grid.push_back(n);
    auto rows = sweep::map_indexed<Row>(
        static_cast<int>(grid.size()),
        [&](int i) {
            int n = grid[static_cast<size_t>(i)];
            NormResult nr = projection_norm(spec, n, theta, pol);
            SemiclassicalParams sp = semiclassical_params(theta, n, rp);
            // Re(psi2) = sin 4 theta vanishes at theta = 0, where the ratio is 1.
            HPReal g = theta.is_zero() ? HPReal::zero(rp) : log(gaussian_ratio(sp.psi1, sp.psi2));
            return Row{n, log(nr.norm.value).round_to(rp), (tan2t * n).round_to(rp), g.round_to(rp)};
        },
        true);

    if (o.format == "json") {
        json j = provenance("semiclassical", spec, theta, digits);
        j["mu"] = to_string(mu, digits);
        json rs = json::array();
        for (const auto& r : rows) {
            json row;
            row["n"] = r.n;
            row["log_norm"] = to_string(r.log_norm, digits);
            row["n_tan_2theta"] = to_string(r.heuristic, digits);
            row["log_gaussian_ratio"] = to_string(r.gauss_log, digits);
            rs.push_back(std::move(row));
        }
        j["rows"] = rs;
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n,log_norm,n_tan_2theta,log_gaussian_ratio\n";
        for (const auto& r : rows) {
            os << r.n << "," << to_string(r.log_norm, digits) << ","
               << to_string(r.heuristic, digits) << "," << to_string(r.gauss_log, digits) << "\n";
        }
        os << "# mu = " << to_string(mu, digits) << "\n";
        emit(o, os.str());
    }
    emit_plot_script(o, "semiclassical");
    return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "hermite | laguerre | gammabeta | polyexp");
    sub->add_option("--gamma", o.gamma, "GammaBeta exponent gamma (decimal)");
    sub->add_option("--beta", o.beta, "GammaBeta decay power beta (decimal)");
    sub->add_option("--tau", o.tau, "GammaBeta decay scale tau (decimal, default 0.5)");
    sub->add_option("--coeffs", o.coeffs, "PolyExp coefficients c1,c2,...");
    sub->add_option("--domain", o.domain, "half | full (defaults per family)");
    sub->add_option("--theta", o.theta, "angle: radians ('0.19635'), pi multiple ('0.1pi'), fraction ('pi/16')");
    sub->add_option("--n", o.n, "single degree");
    sub->add_option("--n-max", o.n_max, "sweep upper degree");
    sub->add_option("--stride", o.stride, "sweep stride");
    sub->add_option("--t", o.t, "semigroup time (decimal)");
    sub->add_option("--digits", o.digits, "target certified digits (default SPECNORM_DIGITS or 30)");
    sub->add_option("--format", o.format, "csv | json | plain")
        ->check(CLI::IsMember({"csv", "json", "plain"}));
    sub->add_flag("--plot", o.plot, "also write a gnuplot script next to --out");
    sub->add_option("--out", o.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"spectral projection norms of complex-scaled orthogonal polynomial families"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options o;
    std::string chosen;
    auto wire = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, o);
        sub->callback([&chosen, name] { chosen = name; });
        return sub;
    };
    wire("norm", "one projection norm with its bounds");
    wire("table1", "sigma_n summary across the standard angle rows");
    wire("bounds", "norm sweep with lower/upper bound checks");
    wire("growth", "growth exponents, sigma ratios and the fitted rate");
    wire("expansion", "spectral expansion term norms and convergence verdict");
    CLI::App* verify = wire("verify", "oracle cross-check plus bound checks; nonzero exit on violation");
    verify->add_option("--oracle-cutoff", o.oracle_cutoff, "largest n cross-checked by quadrature");
    wire("semiclassical", "heuristic growth factors against computed norms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (chosen == "norm") return cmd_norm(o);
        if (chosen == "table1") return cmd_table1(o);
        if (chosen == "bounds") return cmd_bounds(o);
        if (chosen == "growth") return cmd_growth(o);
        if (chosen == "expansion") return cmd_expansion(o);
        if (chosen == "verify") return cmd_verify(o);
        if (chosen == "semiclassical") return cmd_semiclassical(o);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SectorViolation& e) {
        std::cerr << "sector violation: " << e.what() << "\n";
        return kExitSector;
    } catch (const PrecisionBudgetError& e) {
        std::cerr << "precision budget exhausted: " << e.what() << "\n";
        if (!e.best_estimate.empty()) std::cerr << "best estimate: " << e.best_estimate << "\n";
        return kExitPrecisionBudget;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation (implementation bug): " << e.what() << "\n";
        return kExitTheoremViolation;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
