// hardy: coefficient tables, envelope reports, Bargmann transforms, harmonic
// oscillator flows and weighted norms for Gaussian-type inputs.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hardy/acceptance.hpp"
#include "hardy/bargmann.hpp"
#include "hardy/decay_analysis.hpp"
#include "hardy/e2_norms.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"
#include "hardy/input_spec.hpp"
#include "hardy/oscillator.hpp"
#include "hardy/report.hpp"

namespace {

using namespace hardy;
using report::Cell;
using report::Table;

enum Exit { ok = 0, verify_failed = 1, usage = 2, domain = 3, diverged = 4, io = 5 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Divergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    GridSpec grid{};
    int kmax = 60;
    std::map<std::string, double> tolerances{{"edge_decay", default_edge_tolerance}};
    int t_grid_size = 64;
    std::string output_format = "csv";
    std::string output_path;

    double edge_tol() const { return tolerances.at("edge_decay"); }

    void validate() const {
        try {
            grid.validate();
        } catch (const DomainError& ex) {
            throw ConfigError(ex.what());
        }
        if (kmax < 1) throw ConfigError("kmax must be >= 1");
        if (t_grid_size < 1) throw ConfigError("t_grid_size must be >= 1");
        for (const auto& [name, v] : tolerances)
            if (!(v > 0.0)) throw ConfigError("tolerance '" + name + "' must be positive");
        if (output_format != "csv" && output_format != "json")
            throw ConfigError("output_format must be csv or json");
    }
};

RunConfig load_config(const std::string& path) {
    RunConfig c;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (g.contains("half_width")) c.grid.half_width = g.at("half_width").get<double>();
            if (g.contains("num_points")) c.grid.num_points = g.at("num_points").get<int>();
        }
        if (j.contains("kmax")) c.kmax = j.at("kmax").get<int>();
        if (j.contains("tolerances"))
            for (const auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = v.get<double>();
        if (j.contains("t_grid_size")) c.t_grid_size = j.at("t_grid_size").get<int>();
        if (j.contains("output_format")) c.output_format = j.at("output_format").get<std::string>();
        if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("invalid config '" + path + "': " + ex.what());
    }
    return c;
}

void emit(const Table& t, const RunConfig& cfg) {
    const std::string text = cfg.output_format == "json" ? report::to_json(t) : report::to_csv(t);
    if (cfg.output_path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    try {
        report::write_atomic(cfg.output_path, text);
    } catch (const std::exception& ex) {
        throw std::ios_base::failure(ex.what());
    }
}

std::optional<double> maybe(const std::function<double()>& fn) {
    try {
        return fn();
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

Cell cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }

/// Default envelope parameter for an input: the largest a the input is
/// known to satisfy, kept inside (0, 1).
double default_a(const InputSpec& in) {
    switch (in.kind) {
        case InputKind::example23: return std::tanh(2.0 * in.alpha);
        case InputKind::example33: return std::tanh(2.0 * in.beta);
        case InputKind::gaussian: {
            const double a = std::min(in.gaussian.width.real(), fourier_gaussian(in.gaussian).width.real());
            return a >= 1.0 ? 0.99 : a;
        }
        default: return 0.5;
    }
}

std::pair<SampledFunction, SampledFunction> sampled_pair(const InputSpec& in, const RunConfig& cfg) {
    if (in.is_gaussian()) return {sample(cfg.grid, in.gaussian), sample(cfg.grid, fourier_gaussian(in.gaussian))};
    const auto e = in.as_expansion(cfg.kmax);
    return {synthesize(e, cfg.grid), synthesize(fourier_expansion(e), cfg.grid)};
}

Membership measured_membership(const InputSpec& in, double a, const RunConfig& cfg) {
    if (in.is_gaussian()) return e_membership(in.gaussian, a);
    const auto [f, fh] = sampled_pair(in, cfg);
    Membership m;
    m.time_side = envelope_scan(f, a);
    m.frequency_side = envelope_scan(fh, a);
    m.member = !m.time_side.divergent && !m.frequency_side.divergent;
    m.constant = std::max(m.time_side.constant, m.frequency_side.constant);
    return m;
}

Table cmd_coeffs(const InputSpec& in, std::optional<double> a_opt, const RunConfig& cfg) {
    const double a = a_opt.value_or(default_a(in));
    if (!(a > 0.0 && a < 1.0)) throw DomainError("coeffs: need 0 < a < 1");
    const auto m = measured_membership(in, a, cfg);
    const double C = m.constant;
    const double alpha = -0.25 * std::log((1.0 - a) / (1.0 + a));
    const auto coeffs = in.log_coeffs(cfg.kmax);

    Table t;
    t.command = "coeffs";
    t.columns = {"k", "log10_abs_coeff", "log10_thm21_bound", "log10_thm22_bound", "thm21_ratio", "thm22_ratio",
                 "sharpness_ratio"};
    t.meta["input"] = in.text;
    t.meta["a"] = a;
    t.meta["alpha"] = alpha;
    t.meta["membership_constant"] = C;
    t.meta["member"] = m.member;
    const double ln10 = std::log(10.0);
    for (int k = 0; k <= cfg.kmax; ++k) {
        const auto& c = coeffs[static_cast<std::size_t>(k)];
        const std::optional<double> lc = c.is_zero ? std::nullopt : std::optional<double>(c.log_mag);
        const auto b21 = maybe([&] { return thm21_bound_log(k, a, C); });
        const auto b22 = maybe([&] {
            return thm22_coeff_bound_log(k, a, C) + 0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0));
        });
        auto log10 = [&](std::optional<double> v) { return v ? std::optional<double>(*v / ln10) : std::nullopt; };
        auto ratio = [&](std::optional<double> b) -> std::optional<double> {
            if (!b) return std::nullopt;
            return lc ? std::exp(*lc - *b) : 0.0;
        };
        std::optional<double> sharp;
        if (lc && k >= 1) sharp = std::exp(*lc + 0.25 * std::log(double(k)) + alpha * k);
        t.rows.push_back({static_cast<long long>(k), cell(log10(lc)), cell(log10(b21)), cell(log10(b22)),
                          cell(ratio(b21)), cell(ratio(b22)), cell(sharp)});
    }
    return t;
}

Table cmd_envelope(const InputSpec& in, std::optional<double> a_opt, const RunConfig& cfg) {
    const double a = a_opt.value_or(default_a(in));
    Table t;
    t.command = "envelope";
    t.columns = {"side", "a", "constant", "argmax_x", "divergent", "source"};
    t.meta["input"] = in.text;
    auto add = [&](const std::string& side, const EnvelopeReport& r, const std::string& source) {
        t.rows.push_back({side, r.a, r.constant, r.argmax_x, r.divergent, source});
    };
    const auto [f, fh] = sampled_pair(in, cfg);
    add("time", envelope_scan(f, a), "scan");
    add("frequency", envelope_scan(fh, a), "scan");
    if (in.is_gaussian()) {
        const auto m = e_membership(in.gaussian, a);
        add("time", m.time_side, "closed_form");
        add("frequency", m.frequency_side, "closed_form");
    }
    return t;
}

std::vector<cplx> parse_points(const std::vector<std::string>& specs) {
    std::vector<cplx> out;
    for (const auto& s : specs) out.push_back(hardy::detail::parse_complex(s, "w"));
    return out;
}

std::vector<cplx> default_bargmann_points() {
    std::vector<cplx> ws;
    for (double r : {0.5, 1.0, 2.0, 3.0})
        for (int j = 0; j < 4; ++j) ws.push_back(std::polar(r, j * pi / 8));
    return ws;
}

Table cmd_bargmann(const InputSpec& in, const std::vector<cplx>& ws, std::optional<double> a_opt,
                   const RunConfig& cfg) {
    const double a = a_opt.value_or(default_a(in));
    const auto m = measured_membership(in, a, cfg);
    const auto sp = sector_params(a, m.constant);
    const auto f = sampled_pair(in, cfg).first;
    const auto taylor = log_expansion_to_taylor(in.log_coeffs(cfg.kmax), !in.is_gaussian());
    Table t;
    t.command = "bargmann";
    t.columns = {"w_re", "w_im", "abs_numeric", "abs_series", "series_truncated", "quadrant_bound", "sector_bound"};
    t.meta["input"] = in.text;
    t.meta["a"] = a;
    t.meta["membership_constant"] = m.constant;
    t.meta["theta0"] = sp.theta0;
    for (cplx w : ws) {
        const auto series = evaluate_taylor(taylor, w);
        t.rows.push_back({w.real(), w.imag(), std::abs(bargmann_numeric(f, w, cfg.edge_tol())),
                          std::abs(series.value), series.truncated, quadrant_bound(sp, w),
                          cell(maybe([&] { return sector_bound(sp, w); }))});
    }
    return t;
}

Table cmd_evolve(const InputSpec& in, const std::vector<double>& ts, const RunConfig& cfg) {
    Table t;
    t.command = "evolve";
    t.columns = {"t", "k", "re", "im", "abs"};
    t.meta["input"] = in.text;
    const auto psi0 = in.state(cfg.kmax);
    for (double time : ts) {
        const auto st = evolve(psi0, time);
        HermiteExpansion e;
        if (const auto* g = std::get_if<GeneralizedGaussian>(&st.rep))
            e = hermite_coeffs_gaussian(*g, cfg.kmax);
        else
            e = std::get<HermiteExpansion>(st.rep);
        for (std::size_t k = 0; k < e.size() && k <= static_cast<std::size_t>(cfg.kmax); ++k)
            t.rows.push_back({time, static_cast<long long>(k), e.coeffs[k].real(), e.coeffs[k].imag(),
                              std::abs(e.coeffs[k])});
    }
    return t;
}

Table cmd_confine(const InputSpec& in, double beta, double gamma, std::optional<double> gamma_prime,
                  const RunConfig& cfg) {
    const auto psi0 = in.state(cfg.kmax);
    const auto ts = default_t_grid(cfg.t_grid_size);
    const auto rep = confinement_check(psi0, beta, gamma, ts, cfg.grid);

    Table t;
    t.command = "confine";
    t.columns = {"t", "time_constant", "frequency_constant", "constant", "constant_ratio_to_t0", "divergent",
                 "is_argmax"};
    t.meta["input"] = in.text;
    t.meta["beta"] = beta;
    t.meta["gamma"] = gamma;
    t.meta["a"] = rep.a;
    t.meta["sup_constant"] = rep.sup_constant;
    t.meta["worst_t"] = rep.worst_t;
    t.meta["argmax_ts"] = rep.argmax_ts;
    t.meta["initial_member"] = rep.initial_member;
    t.meta["divergent_at"] = rep.divergent_at ? nlohmann::ordered_json(*rep.divergent_at) : nlohmann::ordered_json(nullptr);

    const double c0 = rep.samples.empty()
                          ? 0.0
                          : std::max(rep.samples.front().time_constant, rep.samples.front().frequency_constant);
    for (const auto& s : rep.samples) {
        const double c = std::max(s.time_constant, s.frequency_constant);
        const bool argmax = std::find(rep.argmax_ts.begin(), rep.argmax_ts.end(), s.t) != rep.argmax_ts.end();
        t.rows.push_back({s.t, s.time_constant, s.frequency_constant, c, c0 > 0.0 ? Cell{c / c0} : Cell{},
                          s.divergent, argmax});
    }

    if (!rep.divergent_at && gamma < beta) {
        const double gp = gamma_prime.value_or(0.5 * (gamma + beta));
        const double B = coefficient_constant(in.log_coeffs(std::max(cfg.kmax, 200)), gp);
        const auto cc = confinement_constant(ConfinementParams::make(beta, gamma, gp, B));
        t.meta["gamma_prime"] = gp;
        t.meta["coefficient_constant"] = B;
        t.meta["confinement_constant_sharp"] = cc.sharp;
        t.meta["confinement_constant_loose"] = cc.loose;
    }
    if (!rep.divergent_at && std::abs(gamma - beta) < 1e-15) {
        const auto probe = conjecture32_probe(psi0, beta, ts, cfg.grid);
        t.meta["refined_sup_constant"] = probe.sup_refined;
        t.meta["refinement_change"] = probe.change;
        t.meta["refinement_stabilized"] = probe.stabilized;
    }
    return t;
}

Table cmd_norms(double a, const RunConfig& cfg) {
    GridSpec grid = cfg.grid;
    grid.half_width = std::max(grid.half_width, 28.0);
    Table t;
    t.command = "norms";
    t.columns = {"n", "phi_norm_sq_closed", "phi_norm_sq_lower", "phi_norm_sq_quadrature", "Q_n"};
    t.meta["a"] = a;
    t.meta["quadrature_half_width"] = grid.half_width;
    t.meta["quadrature_num_points"] = grid.num_points;
    for (int n = 0; n <= cfg.kmax; ++n) {
        const auto quad = maybe([&] {
            const double v = e2_norm(HermiteExpansion::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n) + 1),
                                     a, grid);
            return v * v;
        });
        t.rows.push_back({static_cast<long long>(n), phi_norm_closed(n, a), phi_norm_lower(n, a), cell(quad), Q(n)});
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite coefficient decay, Gaussian envelopes and oscillator flows"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> grid_L;
    std::optional<int> grid_N, kmax, t_grid;
    std::string format, out, config_path;
    app.add_option("--grid-L", grid_L, "Grid half-width L (points span [-L, L))");
    app.add_option("--grid-N", grid_N, "Number of grid points");
    app.add_option("--kmax", kmax, "Highest Hermite index");
    app.add_option("--t-grid", t_grid, "Number of times sampled on [0, pi/2)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out, "Output file (stdout if omitted)");
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);

    std::string input;
    std::optional<double> a_param;
    auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input spec, e.g. gaussian:A=1,b=0.5")->required(); };
    auto add_a = [&](CLI::App* sub) { sub->add_option("-a,--param-a", a_param, "Envelope parameter a"); };

    auto* coeffs = app.add_subcommand("coeffs", "Hermite coefficients against the decay bounds");
    add_input(coeffs);
    add_a(coeffs);

    auto* envelope = app.add_subcommand("envelope", "Envelope constants of f and its Fourier transform");
    add_input(envelope);
    add_a(envelope);

    std::vector<std::string> w_specs;
    auto* bargmann = app.add_subcommand("bargmann", "Bargmann transform against the growth bounds");
    add_input(bargmann);
    add_a(bargmann);
    bargmann->add_option("-w,--w", w_specs, "Evaluation points, e.g. 1+0.5i (repeatable)");

    std::vector<double> times{0.0, pi / 8, pi / 4, 3 * pi / 8};
    auto* evolve_cmd = app.add_subcommand("evolve", "Hermite coefficients of the oscillator flow");
    add_input(evolve_cmd);
    evolve_cmd->add_option("-t,--t", times, "Times (repeatable)")->capture_default_str();

    std::optional<double> beta, gamma_prime;
    double gamma = 0.0;
    auto* confine = app.add_subcommand("confine", "Gaussian confinement of the flow over one period");
    add_input(confine);
    confine->add_option("--beta", beta, "Initial datum parameter (defaults to beta of example-3.3 inputs)");
    confine->add_option("--gamma", gamma, "Envelope parameter; a = tanh(gamma)")->required();
    confine->add_option("--gamma-prime", gamma_prime, "Coefficient rate for the constant; default (gamma+beta)/2");

    double norms_a = 0.5;
    auto* norms = app.add_subcommand("norms", "Weighted norms of the Hermite functions");
    norms->add_option("-a,--param-a", norms_a, "Weight parameter a in [0, 1)")->capture_default_str();

    auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (grid_L) cfg.grid.half_width = *grid_L;
        if (grid_N) cfg.grid.num_points = *grid_N;
        if (kmax) cfg.kmax = *kmax;
        if (t_grid) cfg.t_grid_size = *t_grid;
        if (!format.empty()) cfg.output_format = format;
        if (!out.empty()) cfg.output_path = out;
        cfg.validate();
    } catch (const ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::usage;
    }

    try {
        if (verify->parsed()) {
            const auto results = acceptance::run_all({cfg.grid, cfg.t_grid_size});
            const std::string text = cfg.output_format == "json"
                                         ? acceptance::criteria_json(results)
                                         : report::to_csv(acceptance::criteria_table(results));
            if (cfg.output_path.empty())
                std::cout << text << std::flush;
            else
                report::write_atomic(cfg.output_path, text);
            int failed = 0;
            for (const auto& r : results) failed += r.pass ? 0 : 1;
            std::cerr << results.size() - failed << "/" << results.size() << " criteria passed\n";
            return failed == 0 ? Exit::ok : Exit::verify_failed;
        }
        if (norms->parsed()) {
            emit(cmd_norms(norms_a, cfg), cfg);
            return Exit::ok;
        }

        const InputSpec spec = parse_input_spec(input);
        if (coeffs->parsed()) emit(cmd_coeffs(spec, a_param, cfg), cfg);
        if (envelope->parsed()) emit(cmd_envelope(spec, a_param, cfg), cfg);
        if (bargmann->parsed())
            emit(cmd_bargmann(spec, w_specs.empty() ? default_bargmann_points() : parse_points(w_specs), a_param, cfg),
                 cfg);
        if (evolve_cmd->parsed()) emit(cmd_evolve(spec, times, cfg), cfg);
        if (confine->parsed()) {
            if (!beta) {
                if (spec.kind != InputKind::example33) throw ParseError("confine needs --beta for this input");
                beta = spec.beta;
            }
            const Table t = cmd_confine(spec, *beta, gamma, gamma_prime, cfg);
            emit(t, cfg);
            if (!t.meta["divergent_at"].is_null()) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "envelope diverges at t=%.17g (a=%.17g)",
                              t.meta["divergent_at"].get<double>(), t.meta["a"].get<double>());
                throw Divergence(buf);
            }
        }
        return Exit::ok;
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::usage;
    } catch (const Divergence& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::diverged;
    } catch (const DomainError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::domain;
    } catch (const FitError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::domain;
    } catch (const std::ios_base::failure& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::io;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return Exit::io;
    }
}
