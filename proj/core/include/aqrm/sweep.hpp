// sweep.hpp: full pipeline over (g, r, T) grids and tabular output

#pragma once

#include "aqrm/correlations.hpp"
#include "aqrm/dme.hpp"
#include "aqrm/model.hpp"
#include "aqrm/spectrum.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace aqrm {

enum class AxisKind { g, r, temperature };

std::string_view to_string(AxisKind kind) noexcept;
AxisKind parse_axis_kind(std::string_view name);

struct Axis {
    AxisKind kind{AxisKind::g};
    double lo{0.0};
    double hi{1.0};
    int count{2};

    // Endpoints are hit exactly.
    double value(int i) const noexcept;
};

enum class OutputFormat { csv, jsonl };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_output_format(std::string_view name);

// Steady state must leave at most this much weight on the highest retained level.
inline constexpr double kLeakageBound = 1e-8;

struct SweepConfig {
    ModelParams model;          // g / r used unless swept
    BathParams bath;            // temperatures used unless T is swept (T locks T_q = T_c)
    std::vector<Axis> axes;     // one or two; first axis is the outer loop
    SolverSettings solver;
    CrossingSearch crossing;    // g range for the crossing sidecar; scan/bisect tolerances
    bool crossing_overlay{false};
    bool eigen_cache{true};
    int workers{1};
    std::filesystem::path output{"sweep.csv"};
    OutputFormat format{OutputFormat::csv};

    void validate() const;
    std::size_t size() const;

    // r in [0, 1] x g in [0, 2], 81 x 81, resonance, alpha = 1e-4, w_c = 10, k_B T = 0.07.
    static SweepConfig fig1_preset();
    // r = 0.2, T in [0.02, 0.2] x g in [2, 4], 10 x 121, same baths.
    static SweepConfig fig2_preset();
};

struct SweepRow {
    double r{0.0};
    double g{0.0};
    double T_q{0.0};
    double T_c{0.0};
    int n_max_used{0};
    int K{0};
    std::optional<double> E0, E1, gap10;
    int ground_parity{0};
    std::optional<double> g2_dressed, g2_standard, g2_approx4, g2_crossing;
    std::optional<double> one_photon;
    std::optional<double> leakage; // sum of P_k for k >= 4, outside the four-level approximation
    bool degenerate_flag{false};
    std::string bunching_label;
    std::string error;             // empty on success, else an error code
};

// Column list shared by the CSV header and the JSON-lines keys.
const std::vector<std::string_view>& sweep_columns();

// Keyed by every input that changes the converged spectrum; insert-once.
class EigenCache {
public:
    using Key = std::tuple<double, double, double, double, int, double, int, int>;

    std::shared_ptr<const EigenSystem> get_or_compute(const ModelParams& p, const SolverSettings& s, int levels);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const EigenSystem>> entries_;
};

// Spectrum -> rates -> generator -> steady state -> correlations at one parameter point.
// Doubles K once if the leakage bound is violated. Throws on numerical failure.
SweepRow evaluate_point(const ModelParams& model, const BathParams& bath, const SolverSettings& solver,
                        EigenCache* cache = nullptr);

// As evaluate_point, but failures are recorded in SweepRow::error instead of thrown.
SweepRow evaluate_point_row(const ModelParams& model, const BathParams& bath, const SolverSettings& solver,
                            EigenCache* cache = nullptr);

std::string error_code(const std::exception& e);

// Rows in row-major grid order, independent of worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

struct CrossingRow {
    double r{0.0};
    Crossing crossing;
};

// First-order crossings for every distinct r of the sweep grid over cfg.crossing's g range.
std::vector<CrossingRow> sweep_crossings(const SweepConfig& cfg);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_jsonl(std::ostream& os, const std::vector<SweepRow>& rows);
void write_crossings_csv(std::ostream& os, const std::vector<CrossingRow>& rows);

// Writes the table to path in the given format; I/O failures name the path.
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::filesystem::path& path);

// Sidecar path for the crossing overlay: <stem>.crossings.csv next to the main output.
std::filesystem::path crossings_path(const std::filesystem::path& output);

// 17 significant digits, which parses back to the identical double.
std::string format_double(double v);

} // namespace aqrm
