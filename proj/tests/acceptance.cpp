// acceptance.cpp — the release gate. Each criterion prints exactly one
// "PASS criterion N: ..." or "FAIL criterion N: ..." line; the process exits
// nonzero if any criterion fails. Every tolerance is pinned here, not
// computed, so a silent regression anywhere upstream trips a visible line.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <oposim/oposim.hpp>

#include "oracles.hpp"

using namespace oposim;

namespace {

// ---- tiny checklist helper ----

struct Criterion {
    bool ok = true;
    std::string why; // failure detail, empty while passing

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (!why.empty()) why += "; ";
        why += what;
    }
    void expect_close(double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << " = " << got << ", want " << want << " +/- " << tol;
        expect(std::abs(got - want) <= tol, os.str());
    }
};

int failures = 0;

void report(int n, const std::string& title, const Criterion& c) {
    if (c.ok) {
        std::printf("PASS criterion %d: %s\n", n, title.c_str());
    } else {
        std::printf("FAIL criterion %d: %s — %s\n", n, title.c_str(), c.why.c_str());
        ++failures;
    }
}

// ---- shared fixtures ----

const OpoParams kSingle(0.05, 0.01, 1.5, 0.5);

ChainSpec cascade_spec() {
    ChainSpec s;
    s.opos = {{0.05, 0.01, 1.0}, {0.04, 0.0075, 0.45}};
    s.sigma_first = 1.5;
    s.omega_rel_first = 0.1;
    return s;
}

ScanRow point_at(double sigma_first) {
    ChainSpec s = cascade_spec();
    s.sigma_first = sigma_first;
    return evaluate_point(s);
}

double nu_pt(const CovMatrix& v, const std::vector<std::string>& side) {
    return min_symplectic_eigenvalue(partial_transpose(v, side).data());
}

// ---- criteria ----

// 1. The single above-threshold OPO at sigma = 1.5, Omega' = 0.5 reproduces the
//    four benchmark PT eigenvalues and is certified genuinely tripartite.
void criterion_1() {
    Criterion c;
    const CovMatrix v = single_opo_covariance(kSingle);
    c.expect_close(nu_pt(v, {"1"}), 0.20, 0.02, "nu(PT one twin)");
    c.expect_close(nu_pt(v, {"1", "2"}), 0.43, 0.02, "nu(PT pump)");
    c.expect_close(reduced_record(v, {"1", "2"}, {"1"}).nu_min, 0.28, 0.02,
                   "nu(twin pair alone)");
    c.expect_close(reduced_record(v, {"1", "0"}, {"0"}).nu_min, 0.89, 0.02,
                   "nu(twin+pump alone)");
    const auto rep = certify(v);
    c.expect(rep.genuine_multipartite, "state not certified genuinely tripartite");
    report(1, "single-OPO tripartite benchmark (0.20/0.43/0.28/0.89 within 0.02, genuine)",
           c);
}

// 2. The two-OPO cascade at sigma_A = 1.5, Omega' = 0.1 is genuinely
//    pentapartite: every one of the 15 bipartitions violates PPT.
void criterion_2() {
    Criterion c;
    const auto rep = certify(chain_covariance(cascade_spec()).cov);
    c.expect(rep.bipartitions.size() == 15, "expected 15 bipartitions");
    for (const auto& b : rep.bipartitions) {
        std::ostringstream os;
        os << "split " << b.part.label() << " not entangled (nu = " << b.nu_min << ")";
        c.expect(b.nu_min < 1.0 - 1e-6, os.str());
    }
    c.expect(rep.pure, "five-mode state not pure at the reported tolerance");
    c.expect(rep.genuine_multipartite, "not certified genuinely pentapartite");
    report(2, "cascade pentapartite certification (all 15 bipartitions, genuine)", c);
}

// 3. Structure of the drive scan: the A-twins/pump reduction lights up around
//    sigma_A ~ 1.61, the quartet split dies around ~1.64, the two overlap near
//    1.63, the quartet weakens toward threshold, and the B-twins/pump
//    reduction stays entangled across the whole feasible range.
void criterion_3() {
    Criterion c;
    c.expect(point_at(1.610).nu_A0_pt0 >= 1.0 - 1e-6,
             "A-pump reduction already entangled at sigma_A = 1.610");
    c.expect(point_at(1.617).nu_A0_pt0 < 1.0 - 1e-6,
             "A-pump reduction not yet entangled at sigma_A = 1.617");
    c.expect(point_at(1.640).nu_AB_ptA < 1.0 - 1e-6,
             "quartet split already separable at sigma_A = 1.640");
    c.expect(point_at(1.646).nu_AB_ptA >= 1.0 - 1e-6,
             "quartet split still entangled at sigma_A = 1.646");

    const ScanRow mid = point_at(1.63);
    c.expect(mid.nu_AB_ptA >= 0.90 && mid.nu_AB_ptA < 1.0,
             "quartet nu outside [0.90, 1) at sigma_A = 1.63");
    c.expect(mid.nu_A0_pt0 >= 0.90 && mid.nu_A0_pt0 < 1.0,
             "A-pump nu outside [0.90, 1) at sigma_A = 1.63");

    const double n3 = point_at(1.01).nu_AB_ptA;
    const double n4 = point_at(1.001).nu_AB_ptA;
    const double n5 = point_at(1.0001).nu_AB_ptA;
    c.expect(n3 < n4 && n4 < n5 && n5 < 1.0,
             "quartet nu does not rise monotonically toward 1 near threshold");

    const auto rows = run_scan(cascade_spec(), AxisParam::sigma_first, 1.02, 2.4, 200);
    std::size_t feasible = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
        if (!r.feasible) continue;
        ++feasible;
        worst = std::max(worst, r.nu_B0_pt0);
    }
    c.expect(feasible == 108, "default scan feasible-point count changed");
    std::ostringstream os;
    os << "B-pump reduction loses entanglement inside the scan (max nu = " << worst << ")";
    c.expect(worst < 1.0 - 1e-6, os.str());
    report(3, "drive-scan structure (entanglement swap ~1.61/1.64, overlap at 1.63, "
              "threshold approach, B-pump always entangled)",
           c);
}

// 4. As the reflected pump approaches stage-B threshold (sigma_B -> 1), the
//    undepleted-pump picture returns: splitting off the pump and splitting off
//    the A twin pair give the same smallest PT eigenvalue to within 1%.
void criterion_4() {
    Criterion c;
    const ScanRow row = point_at(1.7658271214563488); // sigma_B = 1.0001...
    c.expect(row.feasible, "probe point infeasible");
    c.expect_close(row.nu_pump, row.nu_twins_A, 0.01, "nu(PT pump) vs nu(PT A-twins)");
    report(4, "pump-depletion limit: pump split and A-twin split merge within 0.01", c);
}

// 5. Classical bookkeeping: the stage-B drive follows the reflected-pump
//    identity, and the closed-form steady state matches an independent
//    bisection solve of the mean-field equations.
void criterion_5() {
    Criterion c;
    for (double sa : {1.1, 1.3, 1.5, 1.62, 1.75}) {
        ChainSpec s = cascade_spec();
        s.sigma_first = sa;
        const ChainResult res = chain_covariance(s);
        const double refl = (2.0 - std::sqrt(sa)) * (2.0 - std::sqrt(sa));
        std::ostringstream os;
        os << "sigma_B * ratio != (2-sqrt(sigma_A))^2 at sigma_A = " << sa;
        c.expect(std::abs(res.sigmas[1] * 0.45 - refl) <= 1e-12, os.str());
    }

    std::mt19937_64 rng(20260823);
    for (double sigma : {1.1, 1.5, 2.0, 2.7, 3.5}) {
        for (double gamma0 : {0.03, 0.05}) {
            const double gamma = 0.2 * gamma0;
            const SteadyState lib = classical_steady_state(sigma, gamma0, gamma);
            const double chi = 0.05 + 0.6 * std::uniform_real_distribution<>()(rng);
            const auto ora = oracle::steady_state_bisect(sigma, gamma0, gamma, chi);
            std::ostringstream os;
            os << "bisection oracle disagrees at sigma = " << sigma;
            c.expect(std::abs(lib.beta - ora.beta) <= 1e-10 &&
                         std::abs(lib.reflected_power_ratio - ora.reflected_power_ratio) <=
                             1e-10,
                     os.str());
            c.expect(std::abs(lib.reflected_power_ratio * sigma -
                              (2.0 - std::sqrt(sigma)) * (2.0 - std::sqrt(sigma))) <= 1e-12,
                     "reflectivity identity broken");
        }
    }
    report(5, "steady-state bookkeeping vs independent bisection solve (1e-10)", c);
}

// 6. Numerical integrity: commutation preservation across a broad parameter
//    grid, purity of the lossless states, agreement between the iterative
//    spectrum and the characteristic-polynomial route, and the one-squeezed-
//    direction structure of every single-mode partial transpose.
void criterion_6() {
    Criterion c;

    double worst_comm = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double sigma = 1.05 + (3.9 - 1.05) * i / 9.0;
        for (int j = 0; j < 10; ++j) {
            const double om = std::pow(10.0, -4.0 + 5.0 * j / 9.0);
            for (int k = 0; k < 10; ++k) {
                const double g0 = 0.01 + 0.049 * k / 9.0;
                const double g = 0.5 * g0 * (1 + k % 3);
                const TransferMap t = build_transfer_map(OpoParams(g0, g, sigma, om));
                worst_comm = std::max(worst_comm, commutation_residual(t));
            }
        }
    }
    {
        std::ostringstream os;
        os << "worst commutation residual " << worst_comm << " over 1000-point grid";
        c.expect(worst_comm < 1e-12, os.str());
    }

    const auto slow = symplectic_spectrum(
        single_opo_covariance(OpoParams(0.05, 0.01, 1.5, 1e-3)).data());
    c.expect(std::abs(slow.front() - 1.0) <= 1e-3 && std::abs(slow.back() - 1.0) <= 1e-3,
             "slow-sideband state not pure to 1e-3");

    const CovMatrix v3 = single_opo_covariance(kSingle);
    const auto lib3 = symplectic_spectrum(v3.data());
    const auto ora3 = oracle::symplectic_spectrum_charpoly(v3.data());
    for (std::size_t i = 0; i < lib3.size(); ++i)
        c.expect(std::abs(lib3[i] - ora3[i]) <= 1e-10,
                 "tripartite spectrum disagrees with the charpoly route");

    const CovMatrix v5 = chain_covariance(cascade_spec()).cov;
    const double resid = oracle::charpoly_residual(v5.data(), symplectic_spectrum(v5.data()));
    {
        std::ostringstream os;
        os << "five-mode charpoly residual " << resid;
        c.expect(resid < 1e-9, os.str());
    }

    for (const CovMatrix* v : {&v3, &v5}) {
        for (const auto& mode : v->modes()) {
            const auto nus = symplectic_spectrum(partial_transpose(*v, {mode}).data());
            std::size_t below = 0;
            for (double nu : nus) below += nu < 1.0 - 1e-9;
            c.expect(below <= 1,
                     "more than one PT eigenvalue below 1 for single-mode transpose " + mode);
        }
    }

    const CovMatrix v3slow = single_opo_covariance(OpoParams(0.05, 0.01, 1.5, 1e-3));
    c.expect(reduced_record(v3slow, {"1", "2"}, {"1"}).nu_min <
                 reduced_record(v3, {"1", "2"}, {"1"}).nu_min,
             "twin-twin entanglement should strengthen at slow sidebands");
    const double pump_slow = reduced_record(v3slow, {"1", "0"}, {"0"}).nu_min;
    c.expect(pump_slow > reduced_record(v3, {"1", "0"}, {"0"}).nu_min &&
                 pump_slow > 1.0 - 1e-3,
             "twin-pump pair entanglement should vanish at slow sidebands");

    report(6, "numerical integrity (commutation 1e-12, purity, dual-route spectra, "
              "PT structure, sideband trends)",
           c);
}

// 7. Detection loss only weakens the certificate: with 5% loss on every mode
//    no PT eigenvalue decreases, every single mode stays entangled with the
//    rest, and the verdict degrades from genuine to fully inseparable.
void criterion_7() {
    Criterion c;
    const auto clean = certify(chain_covariance(cascade_spec()).cov);
    ChainSpec lossy_spec = cascade_spec();
    lossy_spec.beam_loss.assign(5, 0.05);
    const auto lossy = certify(chain_covariance(lossy_spec).cov);

    c.expect(lossy.physical, "lossy state not physical");
    c.expect(clean.bipartitions.size() == lossy.bipartitions.size(), "report shape changed");
    for (std::size_t i = 0; i < clean.bipartitions.size(); ++i) {
        const auto& a = clean.bipartitions[i];
        const auto& b = lossy.bipartitions[i];
        std::ostringstream os;
        os << "loss strengthened split " << a.part.label() << " (" << a.nu_min << " -> "
           << b.nu_min << ")";
        c.expect(b.nu_min >= a.nu_min - 1e-12, os.str());
        if (a.part.side_a.size() == 1 || a.part.side_b.size() == 1)
            c.expect(b.entangled, "1-vs-4 split " + a.part.label() + " lost entanglement");
    }
    c.expect(lossy.fully_inseparable, "lossy cascade no longer fully inseparable");
    c.expect(!lossy.pure && !lossy.genuine_multipartite,
             "lossy state must not pass the purity-based genuineness shortcut");
    report(7, "5% uniform loss: certificate degrades monotonically, stays fully inseparable",
           c);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (failures) std::printf("%d of 7 acceptance criteria FAILED\n", failures);
    else std::printf("all 7 acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
