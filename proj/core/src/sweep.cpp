#include "aqrm/sweep.hpp"

#include "aqrm/error.hpp"
#include "aqrm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace aqrm {

std::string_view to_string(AxisKind kind) noexcept {
    switch (kind) {
    case AxisKind::g: return "g";
    case AxisKind::r: return "r";
    case AxisKind::temperature: return "T";
    }
    return "?";
}

AxisKind parse_axis_kind(std::string_view name) {
    if (name == "g") return AxisKind::g;
    if (name == "r") return AxisKind::r;
    if (name == "T" || name == "t" || name == "temp") return AxisKind::temperature;
    throw InvalidArgument("unknown sweep axis '" + std::string(name) + "' (expected g, r or T)");
}

double Axis::value(int i) const noexcept {
    if (i <= 0) return lo;
    if (i >= count - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "jsonl"; }

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "jsonl" || name == "json") return OutputFormat::jsonl;
    throw InvalidArgument("unknown output format '" + std::string(name) + "' (expected csv or jsonl)");
}

void SweepConfig::validate() const {
    model.validate();
    bath.validate();
    if (axes.empty() || axes.size() > 2) throw InvalidArgument("a sweep needs one or two axes");
    if (axes.size() == 2 && axes[0].kind == axes[1].kind) throw InvalidArgument("sweep axes must be distinct");
    for (const Axis& a : axes) {
        if (a.count < 2) throw InvalidArgument("axis " + std::string(to_string(a.kind)) + " needs at least 2 points");
        if (!(a.lo < a.hi)) throw InvalidArgument("axis " + std::string(to_string(a.kind)) + " needs lo < hi");
        if (a.lo < 0.0) throw InvalidArgument("axis " + std::string(to_string(a.kind)) + " must be non-negative");
    }
    if (solver.levels < 4) throw InvalidArgument("sweeps need at least 4 dressed levels");
    if (workers < 1) throw InvalidArgument("worker count must be positive");
}

std::size_t SweepConfig::size() const {
    std::size_t n = 1;
    for (const Axis& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

SweepConfig SweepConfig::fig1_preset() {
    SweepConfig cfg;
    cfg.axes = {{AxisKind::r, 0.0, 1.0, 81}, {AxisKind::g, 0.0, 2.0, 81}};
    cfg.crossing.g_lo = 0.0;
    cfg.crossing.g_hi = 2.0;
    cfg.output = "fig1.csv";
    return cfg;
}

SweepConfig SweepConfig::fig2_preset() {
    SweepConfig cfg;
    cfg.model.r = 0.2;
    cfg.axes = {{AxisKind::temperature, 0.02, 0.2, 10}, {AxisKind::g, 2.0, 4.0, 121}};
    cfg.crossing.g_lo = 2.0;
    cfg.crossing.g_hi = 4.0;
    cfg.output = "fig2.csv";
    return cfg;
}

const std::vector<std::string_view>& sweep_columns() {
    static const std::vector<std::string_view> columns{
        "r",          "g",           "T_q",        "T_c",         "n_max_used", "K",
        "E0",         "E1",          "gap10",      "ground_parity", "g2_dressed", "g2_standard",
        "g2_approx4", "g2_crossing", "one_photon", "leakage",     "degenerate_flag", "bunching_label",
        "error"};
    return columns;
}

std::shared_ptr<const EigenSystem> EigenCache::get_or_compute(const ModelParams& p, const SolverSettings& s,
                                                              int levels) {
    const Key key{p.omega0, p.delta, p.g, p.r, levels, s.tol_e, s.n_max_cap, s.growth_step};
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto computed =
        std::make_shared<const EigenSystem>(converge_truncation(p, levels, s.tol_e, s.n_max_cap, s.growth_step));
    std::lock_guard lock(mutex_);
    return entries_.emplace(key, std::move(computed)).first->second;
}

std::size_t EigenCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

SweepRow evaluate_point(const ModelParams& model, const BathParams& bath, const SolverSettings& solver,
                        EigenCache* cache) {
    model.validate();
    bath.validate();
    if (solver.levels < 4) throw InvalidArgument("need at least 4 dressed levels");

    int levels = solver.levels;
    std::shared_ptr<const EigenSystem> eig;
    PopulationVector pop;
    for (int attempt = 0;; ++attempt) {
        eig = cache ? cache->get_or_compute(model, solver, levels)
                    : std::make_shared<const EigenSystem>(converge_truncation(
                          model, levels, solver.tol_e, solver.n_max_cap, solver.growth_step));
        const RateSet rates = transition_rates(*eig, bath, model.delta, model.omega0);
        pop = steady_state(build_generator(rates, bath));
        const double top = pop[levels - 1];
        if (top < kLeakageBound) break;
        if (attempt == 1) {
            throw LeakageError("top-level population " + format_double(top) + " exceeds " +
                                   format_double(kLeakageBound) + " with K=" + std::to_string(levels),
                               top);
        }
        levels *= 2;
    }

    const G2Result corr = evaluate_correlations(*eig, pop);
    const GroundState ground = ground_parity(*eig, solver.degeneracy_floor);

    SweepRow row;
    row.r = model.r;
    row.g = model.g;
    row.T_q = bath.temp_q;
    row.T_c = bath.temp_c;
    row.n_max_used = eig->n_max_used;
    row.K = levels;
    row.E0 = eig->energies[0];
    row.E1 = eig->energies[1];
    row.gap10 = corr.gap10;
    row.ground_parity = parity_value(ground.parity);
    row.g2_dressed = corr.g2_dressed;
    row.g2_standard = corr.g2_standard;
    row.g2_approx4 = corr.g2_approx4;
    row.g2_crossing = corr.g2_crossing;
    row.one_photon = corr.one_photon;
    row.leakage = pop.p.tail(levels - 4).sum();
    row.degenerate_flag = corr.degenerate_flag;
    row.bunching_label = std::string(to_string(classify(corr.g2_dressed)));
    return row;
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const ConvergenceError*>(&e)) return "nonconvergence";
    if (dynamic_cast<const ReducibleGeneratorError*>(&e)) return "reducible";
    if (dynamic_cast<const LeakageError*>(&e)) return "leakage";
    if (dynamic_cast<const EigenSolverError*>(&e)) return "eigensolver";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid";
    return "error";
}

SweepRow evaluate_point_row(const ModelParams& model, const BathParams& bath, const SolverSettings& solver,
                            EigenCache* cache) {
    try {
        return evaluate_point(model, bath, solver, cache);
    } catch (const std::exception& e) {
        SweepRow row;
        row.r = model.r;
        row.g = model.g;
        row.T_q = bath.temp_q;
        row.T_c = bath.temp_c;
        row.K = solver.levels;
        row.error = error_code(e);
        return row;
    }
}

namespace {

void apply_axis(AxisKind kind, double value, ModelParams& model, BathParams& bath) {
    switch (kind) {
    case AxisKind::g: model.g = value; break;
    case AxisKind::r: model.r = value; break;
    case AxisKind::temperature: bath.temp_q = bath.temp_c = value; break;
    }
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t inner = cfg.axes.size() == 2 ? static_cast<std::size_t>(cfg.axes[1].count) : 1;
    std::vector<SweepRow> rows(cfg.size());
    EigenCache cache;
    EigenCache* cache_ptr = cfg.eigen_cache ? &cache : nullptr;

    parallel_for(rows.size(), cfg.workers, [&](std::size_t index) {
        ModelParams model = cfg.model;
        BathParams bath = cfg.bath;
        apply_axis(cfg.axes[0].kind, cfg.axes[0].value(static_cast<int>(index / inner)), model, bath);
        if (cfg.axes.size() == 2) apply_axis(cfg.axes[1].kind, cfg.axes[1].value(static_cast<int>(index % inner)), model, bath);
        rows[index] = evaluate_point_row(model, bath, cfg.solver, cache_ptr);
    });
    return rows;
}

std::vector<CrossingRow> sweep_crossings(const SweepConfig& cfg) {
    std::set<double> r_values;
    r_values.insert(cfg.model.r);
    for (const Axis& a : cfg.axes) {
        if (a.kind != AxisKind::r) continue;
        r_values.clear();
        for (int i = 0; i < a.count; ++i) r_values.insert(a.value(i));
    }

    const std::vector<double> rs(r_values.begin(), r_values.end());
    std::vector<CrossingList> found(rs.size());
    CrossingSearch search = cfg.crossing;
    search.workers = 1;
    parallel_for(rs.size(), cfg.workers, [&](std::size_t i) {
        ModelParams p = cfg.model;
        p.r = rs[i];
        found[i] = find_crossings(p, search, cfg.solver);
    });

    std::vector<CrossingRow> out;
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (const Crossing& c : found[i]) out.push_back({rs[i], c});
    return out;
}

} // namespace aqrm
