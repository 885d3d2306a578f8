// scan.hpp — 1-D parameter scans and 2-D grids over the two-OPO cascade,
// tracking the smallest PT symplectic eigenvalues of the named partitions.
//
// Points where a derived pump power leaves the oscillating range are reported
// as infeasible rows carrying the error text, never silently dropped.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oposim/covariance.hpp"
#include "oposim/entanglement.hpp"
#include "oposim/errors.hpp"
#include "oposim/symplectic.hpp"

namespace oposim {

enum class AxisParam { sigma_first, omega_rel_first, threshold_ratio_2, loss };

inline std::string axis_name(AxisParam a) {
    switch (a) {
        case AxisParam::sigma_first: return "sigma_first";
        case AxisParam::omega_rel_first: return "omega_rel_first";
        case AxisParam::threshold_ratio_2: return "threshold_ratio_2";
        case AxisParam::loss: return "loss";
    }
    return "?";
}

inline AxisParam axis_from_name(const std::string& name) {
    for (AxisParam a : {AxisParam::sigma_first, AxisParam::omega_rel_first,
                        AxisParam::threshold_ratio_2, AxisParam::loss})
        if (axis_name(a) == name) return a;
    throw ConfigError("unknown scan parameter '" + name + "'");
}

// One evaluated cascade point. When feasible is false only `value` and
// `status` are meaningful.
struct ScanRow {
    double value = 0.0;
    bool feasible = false;
    std::string status; // "ok" or the physics error text
    double sigma_A = 0.0, sigma_B = 0.0;
    double nu_pump = 0.0, nu_twins_A = 0.0, nu_twins_B = 0.0; // full-state PT
    double nu_AB_ptA = 0.0, nu_B0_pt0 = 0.0, nu_A0_pt0 = 0.0; // reduced
    double nu_1A = 0.0, nu_2A = 0.0, nu_1B = 0.0, nu_2B = 0.0; // single-mode PT
    double purity_deviation = 0.0, min_nu = 0.0;
};

namespace detail {

inline void set_axis(ChainSpec& spec, AxisParam axis, double value) {
    switch (axis) {
        case AxisParam::sigma_first: spec.sigma_first = value; break;
        case AxisParam::omega_rel_first: spec.omega_rel_first = value; break;
        case AxisParam::threshold_ratio_2: spec.opos[1].threshold_ratio = value; break;
        case AxisParam::loss:
            spec.beam_loss.assign(2 * spec.opos.size() + 1, value);
            break;
    }
}

inline double nu_pt(const CovMatrix& v, const std::vector<std::string>& side) {
    return min_symplectic_eigenvalue(partial_transpose(v, side).data());
}

} // namespace detail

// Evaluates one two-OPO cascade point; infeasible points surface as the
// physics-domain exceptions of chain_covariance.
inline ScanRow evaluate_point(const ChainSpec& spec) {
    if (spec.opos.size() != 2)
        throw ValidationError("evaluate_point: exactly two OPO stages required");
    const ChainResult res = chain_covariance(spec);
    const CovMatrix& v = res.cov;

    ScanRow row;
    row.feasible = true;
    row.status = "ok";
    row.sigma_A = res.sigmas[0];
    row.sigma_B = res.sigmas[1];
    row.nu_pump = detail::nu_pt(v, {"0"});
    row.nu_twins_A = detail::nu_pt(v, {"1_A", "2_A"});
    row.nu_twins_B = detail::nu_pt(v, {"1_B", "2_B"});
    row.nu_1A = detail::nu_pt(v, {"1_A"});
    row.nu_2A = detail::nu_pt(v, {"2_A"});
    row.nu_1B = detail::nu_pt(v, {"1_B"});
    row.nu_2B = detail::nu_pt(v, {"2_B"});
    row.nu_AB_ptA =
        reduced_record(v, {"1_A", "2_A", "1_B", "2_B"}, {"1_A", "2_A"}).nu_min;
    row.nu_B0_pt0 = reduced_record(v, {"1_B", "2_B", "0"}, {"0"}).nu_min;
    row.nu_A0_pt0 = reduced_record(v, {"1_A", "2_A", "0"}, {"0"}).nu_min;

    const auto spectrum = symplectic_spectrum(v.data());
    row.min_nu = spectrum.front();
    row.purity_deviation = 0.0;
    for (double nu : spectrum)
        row.purity_deviation = std::max(row.purity_deviation, std::abs(nu - 1.0));
    return row;
}

inline std::vector<ScanRow> run_scan(const ChainSpec& base, AxisParam axis, double from,
                                     double to, int steps) {
    if (steps < 2) throw ValidationError("run_scan: need at least 2 steps");
    if (!std::isfinite(from) || !std::isfinite(to))
        throw ValidationError("run_scan: scan range must be finite");

    std::vector<ScanRow> rows;
    for (int i = 0; i < steps; ++i) {
        const double value = from + (to - from) * i / (steps - 1);
        ChainSpec spec = base;
        detail::set_axis(spec, axis, value);
        ScanRow row;
        try {
            row = evaluate_point(spec);
        } catch (const Error& e) {
            if (!is_physics_error(e)) throw;
            row.feasible = false;
            row.status = e.what();
        }
        row.value = value;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- 2-D grid ----

struct GridRow {
    double x = 0.0, y = 0.0;
    bool feasible = false;
    std::string status;
    double sigma_B = 0.0;
    double nu_AB_ptA = 0.0, nu_A0_pt0 = 0.0;
    std::string region; // twins-entangled | pump-twinsA-entangled | both | neither
};

inline std::vector<GridRow> run_grid(const ChainSpec& base, AxisParam x_axis, double x_from,
                                     double x_to, int x_steps, AxisParam y_axis, double y_from,
                                     double y_to, int y_steps, double tol_entangle = 1e-6) {
    if (x_steps < 2 || y_steps < 2) throw ValidationError("run_grid: need at least 2 steps");
    if (x_axis == y_axis) throw ValidationError("run_grid: the two axes must differ");

    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(x_steps) * y_steps);
    for (int i = 0; i < x_steps; ++i) {
        const double x = x_from + (x_to - x_from) * i / (x_steps - 1);
        for (int j = 0; j < y_steps; ++j) {
            const double y = y_from + (y_to - y_from) * j / (y_steps - 1);
            ChainSpec spec = base;
            detail::set_axis(spec, x_axis, x);
            detail::set_axis(spec, y_axis, y);
            GridRow g;
            g.x = x;
            g.y = y;
            try {
                const ScanRow row = evaluate_point(spec);
                g.feasible = true;
                g.status = "ok";
                g.sigma_B = row.sigma_B;
                g.nu_AB_ptA = row.nu_AB_ptA;
                g.nu_A0_pt0 = row.nu_A0_pt0;
                const bool twins = row.nu_AB_ptA < 1.0 - tol_entangle;
                const bool pump_a = row.nu_A0_pt0 < 1.0 - tol_entangle;
                g.region = twins ? (pump_a ? "both" : "twins-entangled")
                                 : (pump_a ? "pump-twinsA-entangled" : "neither");
            } catch (const Error& e) {
                if (!is_physics_error(e)) throw;
                g.status = e.what();
            }
            rows.push_back(std::move(g));
        }
    }
    return rows;
}

} // namespace oposim
