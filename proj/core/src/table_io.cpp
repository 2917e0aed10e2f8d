#include "aqrm/sweep.hpp"

#include "aqrm/error.hpp"

#include <json.hpp>

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>

namespace aqrm {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string cell(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return {};
    return format_double(*v);
}

nlohmann::ordered_json json_value(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

bool failed(const SweepRow& row) { return !row.error.empty(); }

} // namespace

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    const auto& columns = sweep_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';

    for (const SweepRow& row : rows) {
        const bool bad = failed(row);
        os << format_double(row.r) << ',' << format_double(row.g) << ',' << format_double(row.T_q) << ','
           << format_double(row.T_c) << ',';
        if (!bad) os << row.n_max_used;
        os << ',' << row.K << ',' << cell(row.E0) << ',' << cell(row.E1) << ',' << cell(row.gap10) << ',';
        if (!bad) os << row.ground_parity;
        os << ',' << cell(row.g2_dressed) << ',' << cell(row.g2_standard) << ',' << cell(row.g2_approx4) << ','
           << cell(row.g2_crossing) << ',' << cell(row.one_photon) << ',' << cell(row.leakage) << ',';
        if (!bad) os << (row.degenerate_flag ? 1 : 0);
        os << ',' << row.bunching_label << ',' << row.error << '\n';
    }
}

void write_jsonl(std::ostream& os, const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows) {
        const bool bad = failed(row);
        nlohmann::ordered_json j;
        j["r"] = row.r;
        j["g"] = row.g;
        j["T_q"] = row.T_q;
        j["T_c"] = row.T_c;
        j["n_max_used"] = bad ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.n_max_used);
        j["K"] = row.K;
        j["E0"] = json_value(row.E0);
        j["E1"] = json_value(row.E1);
        j["gap10"] = json_value(row.gap10);
        j["ground_parity"] = bad ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.ground_parity);
        j["g2_dressed"] = json_value(row.g2_dressed);
        j["g2_standard"] = json_value(row.g2_standard);
        j["g2_approx4"] = json_value(row.g2_approx4);
        j["g2_crossing"] = json_value(row.g2_crossing);
        j["one_photon"] = json_value(row.one_photon);
        j["leakage"] = json_value(row.leakage);
        j["degenerate_flag"] = bad ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.degenerate_flag ? 1 : 0);
        j["bunching_label"] = row.bunching_label;
        j["error"] = row.error;
        os << j.dump() << '\n';
    }
}

void write_crossings_csv(std::ostream& os, const std::vector<CrossingRow>& rows) {
    os << "r,n,g_c,parity_before,parity_after\n";
    for (const CrossingRow& row : rows) {
        os << format_double(row.r) << ',' << row.crossing.index << ',' << format_double(row.crossing.g) << ','
           << parity_value(row.crossing.before) << ',' << parity_value(row.crossing.after) << '\n';
    }
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::filesystem::path& path) {
    if (rows.empty()) throw InvalidArgument("refusing to write an empty table to " + path.string());
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    if (format == OutputFormat::csv) write_csv(out, rows);
    else write_jsonl(out, rows);
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

std::filesystem::path crossings_path(const std::filesystem::path& output) {
    std::filesystem::path p = output;
    p.replace_filename(output.stem().string() + ".crossings.csv");
    return p;
}

} // namespace aqrm
