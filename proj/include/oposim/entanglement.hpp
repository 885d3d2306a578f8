// entanglement.hpp — PPT-based entanglement detection over bipartitions of a
// multimode covariance matrix, plus the report structure aggregating the
// verdicts.
//
// A bipartition is entangled when the smallest symplectic eigenvalue of the
// partially transposed covariance drops below 1; the amount is quantified by
// the logarithmic negativity max(0, -log2 nu_min).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oposim/covariance.hpp"
#include "oposim/errors.hpp"
#include "oposim/symplectic.hpp"

namespace oposim {

// ---- bipartitions ----

struct Bipartition {
    std::vector<std::string> side_a; // canonical: contains the first mode
    std::vector<std::string> side_b;

    std::string label() const {
        std::string s;
        for (const auto& m : side_a) s += (s.empty() ? "" : "+") + m;
        s += "|";
        for (std::size_t k = 0; k < side_b.size(); ++k) s += (k ? "+" : "") + side_b[k];
        return s;
    }
};

// All 2^(N-1) - 1 splits, canonicalized so side_a holds the first mode;
// ordered by the bitmask of the remaining modes, so the order is stable.
inline std::vector<Bipartition> enumerate_bipartitions(const std::vector<std::string>& modes) {
    const std::size_t n = modes.size();
    if (n < 2)
        throw InvalidPartition("enumerate_bipartitions: need at least two modes");
    if (n > 16)
        throw InvalidPartition("enumerate_bipartitions: more than 16 modes is not supported");

    std::vector<Bipartition> out;
    const std::size_t top = (std::size_t{1} << (n - 1)) - 1; // all-ones mask = empty side_b
    for (std::size_t mask = 0; mask < top; ++mask) {
        Bipartition b;
        b.side_a.push_back(modes[0]);
        for (std::size_t i = 0; i + 1 < n; ++i)
            ((mask >> i) & 1 ? b.side_a : b.side_b).push_back(modes[i + 1]);
        out.push_back(std::move(b));
    }
    return out;
}

inline double pt_min_eigenvalue(const CovMatrix& v, const Bipartition& part) {
    return min_symplectic_eigenvalue(partial_transpose(v, part.side_a).data());
}

inline double log_negativity(double nu_min) {
    if (!(nu_min > 0.0))
        throw InvalidEigenvalue("log_negativity: nu_min = " + std::to_string(nu_min) +
                                " must be positive");
    return std::max(0.0, -std::log2(nu_min));
}

// ---- report ----

struct BipartitionRecord {
    Bipartition part;
    double nu_min;
    double log_neg;
    bool entangled;
};

struct ReducedRecord {
    std::vector<std::string> subsystem;  // kept modes, parent order
    std::vector<std::string> transposed; // PT subset within the reduction
    double nu_min;
    double log_neg;
    bool entangled;
};

struct EntanglementReport {
    std::vector<double> spectrum; // full-state symplectic eigenvalues, ascending
    double min_nu;
    double purity_deviation; // max |nu - 1| over the full spectrum
    bool physical;
    bool pure; // see note at certify()
    double tol_entangle;
    double tol_purity;
    std::vector<BipartitionRecord> bipartitions;
    std::vector<ReducedRecord> reduced;
    bool all_bipartitions_entangled;
    bool fully_inseparable;     // every single-mode split entangled
    bool genuine_multipartite;  // all bipartitions entangled AND state pure
};

// Reduced-subsystem evaluation with an arbitrary kept set and PT subset.
inline ReducedRecord reduced_record(const CovMatrix& v, const std::vector<std::string>& kept,
                                    const std::vector<std::string>& transposed,
                                    double tol_entangle = 1e-6) {
    const CovMatrix r = reduce(v, kept);
    const double nu = min_symplectic_eigenvalue(partial_transpose(r, transposed).data());
    return ReducedRecord{r.modes(), transposed, nu, log_negativity(nu), nu < 1.0 - tol_entangle};
}

// Full certification: every bipartition, the named reduced subsystems, and
// the purity/physicality flags.
//
// Purity note: these covariances keep their smallest symplectic eigenvalue at
// exactly 1 when built without losses (the higher eigenvalues may exceed 1 at
// nonzero analysis frequency; purity_deviation reports by how much), while
// any vacuum admixture lifts all of them strictly above 1. The `pure` flag
// therefore tests |min nu - 1| <= tol_purity, which is what licenses the
// genuine-multipartite conclusion from pairwise PPT verdicts; mixed states
// downgrade to the fully_inseparable verdict.
inline EntanglementReport certify(const CovMatrix& v, double tol_entangle = 1e-6,
                                  double tol_purity = 1e-6) {
    EntanglementReport rep;
    rep.tol_entangle = tol_entangle;
    rep.tol_purity = tol_purity;
    rep.spectrum = symplectic_spectrum(v.data());
    rep.min_nu = rep.spectrum.front();
    rep.purity_deviation = 0.0;
    for (double nu : rep.spectrum)
        rep.purity_deviation = std::max(rep.purity_deviation, std::abs(nu - 1.0));
    rep.physical = rep.min_nu >= 1.0 - 1e-9;
    rep.pure = std::abs(rep.min_nu - 1.0) <= tol_purity;

    rep.all_bipartitions_entangled = true;
    rep.fully_inseparable = true;
    for (const auto& part : enumerate_bipartitions(v.modes())) {
        const double nu = pt_min_eigenvalue(v, part);
        const bool ent = nu < 1.0 - tol_entangle;
        rep.bipartitions.push_back({part, nu, log_negativity(nu), ent});
        rep.all_bipartitions_entangled &= ent;
        if (std::min(part.side_a.size(), part.side_b.size()) == 1)
            rep.fully_inseparable &= ent;
    }
    rep.genuine_multipartite = rep.all_bipartitions_entangled && rep.pure;

    // named reduced subsystems for chain-shaped mode lists (twin pairs + pump):
    // adjacent twin quartets with PT on the first pair, then each twin pair
    // with the pump, PT on the pump
    const auto& modes = v.modes();
    if (modes.size() >= 3 && modes.size() % 2 == 1) {
        const std::size_t n_stages = (modes.size() - 1) / 2;
        const std::string& pump = modes.back();
        auto twins = [&](std::size_t k) {
            return std::vector<std::string>{modes[2 * k], modes[2 * k + 1]};
        };
        if (n_stages == 1) {
            rep.reduced.push_back(
                reduced_record(v, twins(0), {modes[0]}, tol_entangle));
            rep.reduced.push_back(
                reduced_record(v, {modes[0], pump}, {pump}, tol_entangle));
            rep.reduced.push_back(
                reduced_record(v, {modes[1], pump}, {pump}, tol_entangle));
        } else {
            for (std::size_t k = 0; k + 1 < n_stages; ++k) {
                auto kept = twins(k);
                const auto next = twins(k + 1);
                kept.insert(kept.end(), next.begin(), next.end());
                rep.reduced.push_back(reduced_record(v, kept, twins(k), tol_entangle));
            }
            for (std::size_t k = 0; k < n_stages; ++k) {
                auto kept = twins(k);
                kept.push_back(pump);
                rep.reduced.push_back(reduced_record(v, kept, {pump}, tol_entangle));
            }
        }
    }
    return rep;
}

} // namespace oposim
