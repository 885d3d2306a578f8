// report_io.hpp — CSV and JSON emission of certification reports, scans and
// grids. CSV follows RFC 4180 (comma separators, CRLF, quoting only where
// needed) with doubles at 17 significant digits; JSON objects keep a fixed
// key order so identical runs produce identical bytes.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oposim/covariance.hpp"
#include "oposim/covariance_io.hpp"
#include "oposim/entanglement.hpp"
#include "oposim/scan.hpp"

namespace oposim {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string joined(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "+" : "") + parts[k];
    return s;
}

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

} // namespace detail

// ---- parameter echo ----

inline json params_json(const ChainSpec& spec, const ChainResult& res) {
    json stages = json::array();
    for (std::size_t k = 0; k < spec.opos.size(); ++k)
        stages.push_back({{"gamma0", spec.opos[k].gamma0},
                          {"gamma", spec.opos[k].gamma},
                          {"threshold_ratio", spec.opos[k].threshold_ratio},
                          {"sigma", res.sigmas[k]},
                          {"omega_rel", res.omega_rels[k]}});
    return {{"opo_count", spec.opos.size()},
            {"sigma_first", spec.sigma_first},
            {"omega_rel_first", spec.omega_rel_first},
            {"beam_loss", spec.beam_loss},
            {"pump_loss", spec.pump_loss},
            {"stages", stages}};
}

// ---- certification report ----

inline json report_json(const EntanglementReport& r, json parameters = nullptr) {
    json bip = json::array();
    for (const auto& b : r.bipartitions)
        bip.push_back({{"side_a", b.part.side_a},
                       {"side_b", b.part.side_b},
                       {"nu_min", b.nu_min},
                       {"log_negativity", b.log_neg},
                       {"entangled", b.entangled}});
    json red = json::array();
    for (const auto& d : r.reduced)
        red.push_back({{"subsystem", d.subsystem},
                       {"transposed", d.transposed},
                       {"nu_min", d.nu_min},
                       {"log_negativity", d.log_neg},
                       {"entangled", d.entangled}});
    return {{"kind", "entanglement_report"},
            {"parameters", std::move(parameters)},
            {"spectrum", r.spectrum},
            {"min_nu", r.min_nu},
            {"purity_deviation", r.purity_deviation},
            {"physical", r.physical},
            {"pure", r.pure},
            {"tolerances", {{"entangle", r.tol_entangle}, {"purity", r.tol_purity}}},
            {"bipartitions", std::move(bip)},
            {"reduced", std::move(red)},
            {"verdicts",
             {{"all_bipartitions_entangled", r.all_bipartitions_entangled},
              {"fully_inseparable", r.fully_inseparable},
              {"genuine_multipartite", r.genuine_multipartite}}}};
}

// Flat table: one row per symplectic eigenvalue, bipartition, reduced
// subsystem and verdict, sharing the column set.
inline void write_report_csv(std::ostream& os, const EntanglementReport& r) {
    using detail::csv_field;
    os << "kind,subsystem,transposed,nu_min,log_negativity,entangled\r\n";
    for (std::size_t k = 0; k < r.spectrum.size(); ++k)
        os << "spectrum,nu_" << (k + 1) << ",," << detail::fmt17(r.spectrum[k]) << ",,\r\n";
    for (const auto& b : r.bipartitions)
        os << "bipartition," << csv_field(b.part.label()) << ","
           << csv_field(detail::joined(b.part.side_a)) << "," << detail::fmt17(b.nu_min) << ","
           << detail::fmt17(b.log_neg) << "," << detail::bool_str(b.entangled) << "\r\n";
    for (const auto& d : r.reduced)
        os << "reduced," << csv_field(detail::joined(d.subsystem)) << ","
           << csv_field(detail::joined(d.transposed)) << "," << detail::fmt17(d.nu_min) << ","
           << detail::fmt17(d.log_neg) << "," << detail::bool_str(d.entangled) << "\r\n";
    os << "verdict,physical,,,," << detail::bool_str(r.physical) << "\r\n";
    os << "verdict,pure,,,," << detail::bool_str(r.pure) << "\r\n";
    os << "verdict,all_bipartitions_entangled,,,,"
       << detail::bool_str(r.all_bipartitions_entangled) << "\r\n";
    os << "verdict,fully_inseparable,,,," << detail::bool_str(r.fully_inseparable) << "\r\n";
    os << "verdict,genuine_multipartite,,,," << detail::bool_str(r.genuine_multipartite)
       << "\r\n";
}

// ---- scans ----

inline json scan_row_json(const ScanRow& row) {
    json j{{"value", row.value}, {"feasible", row.feasible}, {"status", row.status}};
    auto num = [&](const char* key, double x) { j[key] = row.feasible ? json(x) : json(); };
    num("sigma_A", row.sigma_A);
    num("sigma_B", row.sigma_B);
    num("nu_pump", row.nu_pump);
    num("nu_twins_A", row.nu_twins_A);
    num("nu_twins_B", row.nu_twins_B);
    num("nu_AB_ptA", row.nu_AB_ptA);
    num("nu_B0_pt0", row.nu_B0_pt0);
    num("nu_A0_pt0", row.nu_A0_pt0);
    num("nu_1A", row.nu_1A);
    num("nu_2A", row.nu_2A);
    num("nu_1B", row.nu_1B);
    num("nu_2B", row.nu_2B);
    num("purity_deviation", row.purity_deviation);
    num("min_nu", row.min_nu);
    return j;
}

inline json scan_json(const std::vector<ScanRow>& rows, AxisParam axis, double from, double to,
                      json parameters = nullptr) {
    json jr = json::array();
    for (const auto& row : rows) jr.push_back(scan_row_json(row));
    return {{"kind", "scan"},
            {"parameters", std::move(parameters)},
            {"scan",
             {{"param", axis_name(axis)},
              {"from", from},
              {"to", to},
              {"steps", rows.size()}}},
            {"rows", std::move(jr)}};
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows,
                           AxisParam axis) {
    os << "scan_param,scan_value,sigma_A,sigma_B,nu_pump,nu_twins_A,nu_twins_B,nu_AB_ptA,"
          "nu_B0_pt0,nu_A0_pt0,nu_1A,nu_2A,nu_1B,nu_2B,purity_deviation,min_nu,status\r\n";
    for (const auto& row : rows) {
        os << detail::csv_field(axis_name(axis)) << "," << detail::fmt17(row.value) << ",";
        auto num = [&](double x) { return row.feasible ? detail::fmt17(x) : std::string(); };
        os << num(row.sigma_A) << "," << num(row.sigma_B) << "," << num(row.nu_pump) << ","
           << num(row.nu_twins_A) << "," << num(row.nu_twins_B) << "," << num(row.nu_AB_ptA)
           << "," << num(row.nu_B0_pt0) << "," << num(row.nu_A0_pt0) << "," << num(row.nu_1A)
           << "," << num(row.nu_2A) << "," << num(row.nu_1B) << "," << num(row.nu_2B) << ","
           << num(row.purity_deviation) << "," << num(row.min_nu) << ","
           << detail::csv_field(row.status) << "\r\n";
    }
}

// ---- grids ----

inline json grid_json(const std::vector<GridRow>& rows, AxisParam x_axis, double x_from,
                      double x_to, std::size_t x_steps, AxisParam y_axis, double y_from,
                      double y_to, std::size_t y_steps, json parameters = nullptr) {
    json jr = json::array();
    for (const auto& g : rows) {
        json j{{"x", g.x}, {"y", g.y}, {"feasible", g.feasible}, {"status", g.status}};
        j["sigma_B"] = g.feasible ? json(g.sigma_B) : json();
        j["nu_AB_ptA"] = g.feasible ? json(g.nu_AB_ptA) : json();
        j["nu_A0_pt0"] = g.feasible ? json(g.nu_A0_pt0) : json();
        j["region"] = g.feasible ? json(g.region) : json();
        jr.push_back(std::move(j));
    }
    return {{"kind", "grid"},
            {"parameters", std::move(parameters)},
            {"grid",
             {{"x_param", axis_name(x_axis)},
              {"x_from", x_from},
              {"x_to", x_to},
              {"x_steps", x_steps},
              {"y_param", axis_name(y_axis)},
              {"y_from", y_from},
              {"y_to", y_to},
              {"y_steps", y_steps}}},
            {"rows", std::move(jr)}};
}

inline void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows,
                           AxisParam x_axis, AxisParam y_axis) {
    os << "x_param,x,y_param,y,sigma_B,nu_AB_ptA,nu_A0_pt0,region,status\r\n";
    for (const auto& g : rows) {
        auto num = [&](double x) { return g.feasible ? detail::fmt17(x) : std::string(); };
        os << detail::csv_field(axis_name(x_axis)) << "," << detail::fmt17(g.x) << ","
           << detail::csv_field(axis_name(y_axis)) << "," << detail::fmt17(g.y) << ","
           << num(g.sigma_B) << "," << num(g.nu_AB_ptA) << "," << num(g.nu_A0_pt0) << ","
           << detail::csv_field(g.region) << "," << detail::csv_field(g.status) << "\r\n";
    }
}

} // namespace oposim
