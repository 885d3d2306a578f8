// oposim_cli.cpp — command-line front end: single/chain certification runs,
// 1-D scans, 2-D grids, and certification of externally supplied covariance
// matrices.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 physics-domain error
// (below threshold, pump depleted, derived pump power out of range).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oposim/oposim.hpp"

namespace {

using namespace oposim;

struct CliOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string format; // overrides config when nonempty
    std::string out;
    bool quiet = false;
    std::string cov_path;  // certify only
    std::string emit_cov;  // single/chain only
};

void add_common(CLI::App* cmd, CliOpts& o) {
    cmd->add_option("--config", o.config_path, "key=value configuration file");
    cmd->add_option("--set", o.sets, "override one key, e.g. --set sigma_first=1.3")
        ->take_all();
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path ('-' = stdout)");
    cmd->add_flag("--quiet", o.quiet, "suppress the stderr summary line");
}

RunConfig load_config(Command cmd, const CliOpts& o) {
    KeyValues kv;
    if (!o.config_path.empty()) kv = parse_config_file(o.config_path);
    merge_overrides(kv, o.sets);
    // dedicated flags outrank config keys
    if (!o.format.empty()) kv["format"] = o.format;
    if (!o.out.empty()) kv["out"] = o.out;
    if (o.quiet) kv["quiet"] = "true";
    return build_config(cmd, kv);
}

void emit(const RunConfig& rc, const std::string& text) {
    if (rc.out == "-" || rc.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + rc.out + "'");
    f << text;
}

void summarize(const RunConfig& rc, const EntanglementReport& rep) {
    if (rc.quiet) return;
    double nu_min = 1.0;
    for (const auto& b : rep.bipartitions) nu_min = std::min(nu_min, b.nu_min);
    std::cerr << "certified " << rep.bipartitions.size() << " bipartitions: "
              << (rep.genuine_multipartite        ? "genuine multipartite entanglement"
                  : rep.all_bipartitions_entangled ? "all bipartitions entangled (mixed state)"
                  : rep.fully_inseparable          ? "fully inseparable"
                                                   : "not fully inseparable")
              << ", smallest PT eigenvalue " << nu_min << "\n";
}

int run_report(Command cmd, const CliOpts& o) {
    const RunConfig rc = load_config(cmd, o);
    const ChainResult res = chain_covariance(rc.chain_spec());
    if (!o.emit_cov.empty()) write_cov_file(o.emit_cov, res.cov);
    const EntanglementReport rep = certify(res.cov, rc.tol_entangle, rc.tol_purity);
    if (rc.format == "json") {
        emit(rc, report_json(rep, params_json(rc.chain_spec(), res)).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_report_csv(os, rep);
        emit(rc, os.str());
    }
    summarize(rc, rep);
    return 0;
}

int run_certify(const CliOpts& o) {
    const RunConfig rc = load_config(Command::certify, o);
    const CovMatrix v = read_cov_file(o.cov_path);
    const EntanglementReport rep = certify(v, rc.tol_entangle, rc.tol_purity);
    if (rc.format == "json") {
        emit(rc, report_json(rep).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_report_csv(os, rep);
        emit(rc, os.str());
    }
    summarize(rc, rep);
    return 0;
}

int run_scan(const CliOpts& o) {
    const RunConfig rc = load_config(Command::scan, o);
    const AxisParam axis = axis_from_name(rc.scan_param);
    const auto rows = oposim::run_scan(rc.chain_spec(), axis, rc.scan_from, rc.scan_to,
                                       rc.scan_steps);
    std::size_t feasible = 0;
    for (const auto& r : rows) feasible += r.feasible;
    if (feasible == 0)
        throw DerivedSigmaOutOfRange(2, 0.0,
                                     "scan: no feasible point in " + rc.scan_param + " in [" +
                                         std::to_string(rc.scan_from) + ", " +
                                         std::to_string(rc.scan_to) + "]");
    if (rc.format == "json") {
        emit(rc, scan_json(rows, axis, rc.scan_from, rc.scan_to).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_scan_csv(os, rows, axis);
        emit(rc, os.str());
    }
    if (!rc.quiet)
        std::cerr << "scanned " << rows.size() << " points over " << rc.scan_param << ", "
                  << feasible << " feasible\n";
    return 0;
}

int run_grid(const CliOpts& o) {
    const RunConfig rc = load_config(Command::grid, o);
    const AxisParam x = axis_from_name(rc.grid_x_param);
    const AxisParam y = axis_from_name(rc.grid_y_param);
    const auto rows = oposim::run_grid(rc.chain_spec(), x, rc.grid_x_from, rc.grid_x_to,
                                       rc.grid_x_steps, y, rc.grid_y_from, rc.grid_y_to,
                                       rc.grid_y_steps, rc.tol_entangle);
    std::size_t feasible = 0;
    for (const auto& r : rows) feasible += r.feasible;
    if (feasible == 0)
        throw DerivedSigmaOutOfRange(2, 0.0, "grid: no feasible point on the grid");
    if (rc.format == "json") {
        emit(rc, grid_json(rows, x, rc.grid_x_from, rc.grid_x_to, rc.grid_x_steps, y,
                           rc.grid_y_from, rc.grid_y_to, rc.grid_y_steps)
                     .dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_grid_csv(os, rows, x, y);
        emit(rc, os.str());
    }
    if (!rc.quiet)
        std::cerr << "evaluated " << rows.size() << " grid points, " << feasible
                  << " feasible\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cascaded-OPO sideband entanglement simulator"};
    app.require_subcommand(1);

    CliOpts o;
    auto* c_single = app.add_subcommand("single", "certify the three-mode single-OPO state");
    auto* c_chain = app.add_subcommand("chain", "certify a cascaded chain (2M+1 modes)");
    auto* c_scan = app.add_subcommand("scan", "1-D parameter scan of the two-OPO cascade");
    auto* c_grid = app.add_subcommand("grid", "2-D parameter grid of the two-OPO cascade");
    auto* c_cert = app.add_subcommand("certify", "certify a covariance matrix from a file");
    for (auto* c : {c_single, c_chain, c_scan, c_grid, c_cert}) add_common(c, o);
    c_cert->add_option("--cov", o.cov_path, "covariance matrix file")->required();
    for (auto* c : {c_single, c_chain})
        c->add_option("--emit-cov", o.emit_cov, "also write the covariance matrix to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_single) return run_report(oposim::Command::single, o);
        if (*c_chain) return run_report(oposim::Command::chain, o);
        if (*c_scan) return run_scan(o);
        if (*c_grid) return run_grid(o);
        return run_certify(o);
    } catch (const oposim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return oposim::is_physics_error(e) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
