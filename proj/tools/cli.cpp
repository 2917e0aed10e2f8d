#include "cli.hpp"

#include "aqrm/error.hpp"
#include "aqrm/parallel.hpp"
#include "aqrm/sweep.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

namespace aqrm::cli {

namespace {

struct GRange {
    double lo{0.0};
    double hi{0.0};
    bool is_range{false};
};

// "1.2" or "lo..hi"
GRange parse_g(const std::string& text) {
    GRange out;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            std::size_t used = 0;
            out.lo = out.hi = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            std::size_t used_lo = 0, used_hi = 0;
            const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
            out.lo = std::stod(lo, &used_lo);
            out.hi = std::stod(hi, &used_hi);
            if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
            out.is_range = true;
        }
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--g", "expected a number or a range lo..hi, got '" + text + "'");
    }
    if (out.lo < 0.0 || (out.is_range && !(out.lo < out.hi))) {
        throw CLI::ValidationError("--g", "needs g >= 0 and lo < hi for ranges, got '" + text + "'");
    }
    return out;
}

// "g=0..2:81"
Axis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    const auto dots = text.find("..");
    const auto colon = text.rfind(':');
    if (eq == std::string::npos || dots == std::string::npos || colon == std::string::npos || !(eq < dots && dots < colon)) {
        throw CLI::ValidationError("--axis", "expected NAME=lo..hi:count, got '" + text + "'");
    }
    Axis axis;
    try {
        axis.kind = parse_axis_kind(text.substr(0, eq));
        axis.lo = std::stod(text.substr(eq + 1, dots - eq - 1));
        axis.hi = std::stod(text.substr(dots + 2, colon - dots - 2));
        axis.count = std::stoi(text.substr(colon + 1));
    } catch (const InvalidArgument& e) {
        throw CLI::ValidationError("--axis", e.what());
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--axis", "expected NAME=lo..hi:count, got '" + text + "'");
    }
    if (axis.count < 2 || !(axis.lo < axis.hi) || axis.lo < 0.0) {
        throw CLI::ValidationError("--axis", "needs count >= 2 and 0 <= lo < hi, got '" + text + "'");
    }
    return axis;
}

struct Options {
    double delta{1.0};
    std::string g{"0"};
    double r{0.0};
    double alpha_q{1e-4};
    double alpha_c{1e-4};
    double omega_c{10.0};
    double temp_q{0.07};
    double temp_c{0.07};
    int levels{20};
    double tol_e{1e-10};
    int nmax_cap{400};
    std::string out;
    std::string format{"csv"};
    std::string preset;
    std::vector<std::string> axes;
    int workers{default_workers()};
    double scan_step{0.01};
    double bisect_tol{1e-6};
    bool crossings_overlay{false};
    bool no_cache{false};
};

struct Registered {
    CLI::Option* delta;
    CLI::Option* g;
    CLI::Option* r;
    CLI::Option* alpha_q;
    CLI::Option* alpha_c;
    CLI::Option* omega_c;
    CLI::Option* temp_q;
    CLI::Option* temp_c;
    CLI::Option* out;
};

Registered register_flags(CLI::App& app, Options& o) {
    Registered reg{};
    reg.delta = app.add_option("--delta", o.delta, "Qubit splitting in units of omega0")->check(CLI::PositiveNumber);
    reg.g = app.add_option("--g", o.g, "Coupling g/omega0, or a range lo..hi for crossings");
    reg.r = app.add_option("--r", o.r, "Anisotropy r")->check(CLI::NonNegativeNumber);
    reg.alpha_q = app.add_option("--alpha-q", o.alpha_q, "Qubit-bath coupling")->check(CLI::NonNegativeNumber);
    reg.alpha_c = app.add_option("--alpha-c", o.alpha_c, "Cavity-bath coupling")->check(CLI::NonNegativeNumber);
    reg.omega_c = app.add_option("--omega-c", o.omega_c, "Ohmic cutoff in units of omega0")->check(CLI::PositiveNumber);
    reg.temp_q = app.add_option("--temp-q", o.temp_q, "Qubit bath k_B T / omega0")->check(CLI::NonNegativeNumber);
    reg.temp_c = app.add_option("--temp-c", o.temp_c, "Cavity bath k_B T / omega0")->check(CLI::NonNegativeNumber);
    app.add_option("--levels", o.levels, "Dressed levels K")->check(CLI::Range(2, 4096));
    app.add_option("--tol-e", o.tol_e, "Energy convergence tolerance")->check(CLI::PositiveNumber);
    app.add_option("--nmax-cap", o.nmax_cap, "Largest Fock truncation tried")->check(CLI::Range(2, 100000));
    reg.out = app.add_option("--out", o.out, "Sweep output path");
    app.add_option("--format", o.format, "Sweep output format")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--preset", o.preset, "Parameter preset")->check(CLI::IsMember({"fig1", "fig2"}));
    app.add_option("--axis", o.axes, "Sweep axis NAME=lo..hi:count with NAME in {g, r, T}; repeat for two axes");
    app.add_option("--workers", o.workers, "Worker threads for sweeps and crossing scans")->check(CLI::PositiveNumber);
    app.add_option("--scan-step", o.scan_step, "Crossing scan step in g")->check(CLI::PositiveNumber);
    app.add_option("--bisect-tol", o.bisect_tol, "Crossing bisection width")->check(CLI::PositiveNumber);
    app.add_flag("--crossings-overlay", o.crossings_overlay, "Write a crossings sidecar next to the sweep output");
    app.add_flag("--no-cache", o.no_cache, "Disable eigen-system reuse across the temperature axis");
    return reg;
}

struct Resolved {
    SweepConfig cfg;
    GRange g;
};

// Built-in defaults < preset < config file / explicit flags.
Resolved resolve(const Options& o, const Registered& reg) {
    Resolved res;
    SweepConfig& cfg = res.cfg;
    if (o.preset == "fig1") cfg = SweepConfig::fig1_preset();
    else if (o.preset == "fig2") cfg = SweepConfig::fig2_preset();
    else cfg.axes.clear();

    auto given = [](const CLI::Option* opt) { return opt->count() > 0; };

    cfg.model.delta = o.delta;
    if (given(reg.r) || o.preset.empty()) cfg.model.r = o.r;
    res.g = parse_g(o.g);
    if (given(reg.g) || o.preset.empty()) cfg.model.g = res.g.lo;
    if (given(reg.g) && res.g.is_range) {
        cfg.crossing.g_lo = res.g.lo;
        cfg.crossing.g_hi = res.g.hi;
    } else if (o.preset.empty()) {
        cfg.crossing.g_lo = 0.0;
        cfg.crossing.g_hi = 2.0;
        res.g.lo = 0.0;
        res.g.hi = 2.0;
    } else {
        res.g.lo = cfg.crossing.g_lo;
        res.g.hi = cfg.crossing.g_hi;
    }

    cfg.bath.alpha_q = o.alpha_q;
    cfg.bath.alpha_c = o.alpha_c;
    cfg.bath.omega_cutoff = o.omega_c;
    cfg.bath.temp_q = o.temp_q;
    cfg.bath.temp_c = o.temp_c;

    cfg.solver.levels = o.levels;
    cfg.solver.tol_e = o.tol_e;
    cfg.solver.n_max_cap = o.nmax_cap;
    cfg.crossing.scan_step = o.scan_step;
    cfg.crossing.bisect_tol = o.bisect_tol;
    cfg.crossing.workers = o.workers;
    cfg.workers = o.workers;
    cfg.crossing_overlay = o.crossings_overlay;
    cfg.eigen_cache = !o.no_cache;
    cfg.format = parse_output_format(o.format);

    if (!o.axes.empty()) {
        cfg.axes.clear();
        for (const std::string& a : o.axes) cfg.axes.push_back(parse_axis(a));
    }

    if (given(reg.out)) {
        cfg.output = o.out;
    } else {
        std::string name = o.preset.empty() ? "sweep" : o.preset;
        name += cfg.format == OutputFormat::csv ? ".csv" : ".jsonl";
        const char* dir = std::getenv(kOutputDirEnv);
        cfg.output = (dir && *dir) ? std::filesystem::path(dir) / name : std::filesystem::path(name);
    }
    return res;
}

void require_point(const Resolved& res, const Registered& reg) {
    if (reg.g->count() > 0 && res.g.is_range) {
        throw CLI::ValidationError("--g", "this subcommand takes a single coupling value, not a range");
    }
}

// Shortest round-trip form, for messages.
std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string describe(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "delta=" << shortest(cfg.model.delta) << " g=" << shortest(cfg.model.g)
       << " r=" << shortest(cfg.model.r) << " alpha_q=" << shortest(cfg.bath.alpha_q)
       << " alpha_c=" << shortest(cfg.bath.alpha_c) << " omega_c=" << shortest(cfg.bath.omega_cutoff)
       << " temp_q=" << shortest(cfg.bath.temp_q) << " temp_c=" << shortest(cfg.bath.temp_c)
       << " levels=" << cfg.solver.levels;
    return os.str();
}

int cmd_spectrum(const SweepConfig& cfg, std::ostream& out) {
    const EigenSystem eig = converge_truncation(cfg.model, cfg.solver);
    out << "# n_max_used=" << eig.n_max_used << '\n';
    out << "level,energy,parity\n";
    for (int k = 0; k < eig.levels(); ++k) {
        out << k << ',' << format_double(eig.energies[k]) << ',' << parity_value(eig.parities[k]) << '\n';
    }
    return kSuccess;
}

int cmd_rates(const SweepConfig& cfg, std::ostream& out) {
    const EigenSystem eig = converge_truncation(cfg.model, cfg.solver);
    const RateSet rates = transition_rates(eig, cfg.bath, cfg.model.delta, cfg.model.omega0);
    const Generator w = build_generator(rates, cfg.bath);
    out << "# n_max_used=" << eig.n_max_used << '\n';
    out << "lower,upper,gap,gamma_q,gamma_c,sigma_x,position,rate_down,rate_up\n";
    for (const Transition& t : rates.transitions) {
        out << t.lower << ',' << t.upper << ',' << format_double(t.gap) << ',' << format_double(t.gamma_q) << ','
            << format_double(t.gamma_c) << ',' << format_double(t.sigma_x) << ',' << format_double(t.position) << ','
            << format_double(w.rates(t.lower, t.upper)) << ',' << format_double(w.rates(t.upper, t.lower)) << '\n';
    }
    return kSuccess;
}

int cmd_g2(const SweepConfig& cfg, std::ostream& out) {
    const SweepRow row = evaluate_point(cfg.model, cfg.bath, cfg.solver);
    write_csv(out, {row});
    return kSuccess;
}

int cmd_crossings(const SweepConfig& cfg, std::ostream& out) {
    const CrossingList list = find_crossings(cfg.model, cfg.crossing, cfg.solver);
    out << "n,g_c,parity_before,parity_after\n";
    for (const Crossing& c : list) {
        out << c.index << ',' << format_double(c.g) << ',' << parity_value(c.before) << ',' << parity_value(c.after)
            << '\n';
    }
    return kSuccess;
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out) {
    if (cfg.axes.empty()) throw CLI::ValidationError("--axis", "sweep needs --preset or at least one --axis");
    if (cfg.solver.levels < 4) throw CLI::ValidationError("--levels", "sweeps need at least 4 levels");
    const std::vector<SweepRow> rows = run_sweep(cfg);
    emit(rows, cfg.format, cfg.output);
    std::size_t failures = 0;
    for (const SweepRow& row : rows) failures += row.error.empty() ? 0 : 1;
    out << "wrote " << rows.size() << " rows to " << cfg.output.string();
    if (failures) out << " (" << failures << " points failed)";
    out << '\n';

    if (cfg.crossing_overlay) {
        const auto path = crossings_path(cfg.output);
        std::ofstream side(path, std::ios::binary | std::ios::trunc);
        if (!side) throw Error("cannot open " + path.string() + " for writing");
        write_crossings_csv(side, sweep_crossings(cfg));
        if (!side) throw Error("write failed for " + path.string());
        out << "wrote crossings to " << path.string() << '\n';
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steady-state photon statistics of the dissipative anisotropic quantum Rabi model", "aqrm"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file; explicit flags take precedence");

    Options opts;
    const Registered reg = register_flags(app, opts);

    auto* spectrum = app.add_subcommand("spectrum", "Print the K lowest dressed energies and parities");
    auto* rates = app.add_subcommand("rates", "Print dressed transition rates");
    auto* g2 = app.add_subcommand("g2", "Evaluate one parameter point and print its table row");
    auto* crossings = app.add_subcommand("crossings", "Locate ground-state parity flips over a g range");
    auto* sweep = app.add_subcommand("sweep", "Evaluate a grid and write a table");
    auto* selfcheck = app.add_subcommand("selfcheck", "Run the Gibbs, JCM and selection-rule oracles");
    for (CLI::App* sub : {spectrum, rates, g2, crossings, sweep, selfcheck}) sub->fallthrough();

    std::vector<const char*> argv{"aqrm"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    Resolved res;
    try {
        res = resolve(opts, reg);
        if (!crossings->parsed() && !sweep->parsed()) require_point(res, reg);
        if (crossings->parsed()) res.cfg.crossing.validate();
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    const SweepConfig& cfg = res.cfg;

    try {
        if (spectrum->parsed()) return cmd_spectrum(cfg, out);
        if (rates->parsed()) return cmd_rates(cfg, out);
        if (g2->parsed()) return cmd_g2(cfg, out);
        if (crossings->parsed()) return cmd_crossings(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        if (selfcheck->parsed()) return run_selfcheck(out) ? kSuccess : kNumericalFailure;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n  at " << describe(cfg) << '\n';
        return kNumericalFailure;
    } catch (const ReducibleGeneratorError& e) {
        err << "numerical failure: " << e.what() << "\n  at " << describe(cfg) << '\n';
        return kNumericalFailure;
    } catch (const LeakageError& e) {
        err << "numerical failure: " << e.what() << "\n  at " << describe(cfg) << '\n';
        return kNumericalFailure;
    } catch (const EigenSolverError& e) {
        err << "numerical failure: " << e.what() << "\n  at " << describe(cfg) << '\n';
        return kNumericalFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kUsageError;
}

} // namespace aqrm::cli
