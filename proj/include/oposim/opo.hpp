// opo.hpp — physics of a single above-threshold OPO: classical steady state
// and the frequency-domain transfer map from vacuum inputs to the sideband
// quadratures of the three bright output beams.
//
// Conventions: mirror couplings gamma0 (pump) and gamma (twins) are half the
// intensity transmissions; sigma is pump power over threshold; omega_rel is
// the analysis frequency over the twin-cavity bandwidth. Cavities are held at
// exact triple resonance with real mean fields, so amplitude (p) and phase
// (q) quadratures never mix and every map splits into p and q blocks.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "oposim/errors.hpp"
#include "oposim/matrix.hpp"

namespace oposim {

using complexd = std::complex<double>;

// ---- classical steady state ----

struct SteadyState {
    double beta;                  // intracavity twin/pump amplitude ratio p/p0
    double reflected_power_ratio; // reflected over incident pump power
};

// Resonant mean-field solution with the intracavity pump clamped at its
// threshold value. Valid for 1 < sigma < 4; beyond 4 the reflected pump
// amplitude changes sign and this branch no longer applies.
inline SteadyState classical_steady_state(double sigma, double gamma0, double gamma) {
    if (!(gamma0 > 0.0) || !(gamma > 0.0))
        throw ValidationError("classical_steady_state: mirror couplings must be positive");
    if (!(sigma > 1.0))
        throw BelowThreshold("classical_steady_state: sigma = " + std::to_string(sigma) +
                             " does not reach oscillation threshold");
    if (!(sigma < 4.0))
        throw PumpDepleted("classical_steady_state: sigma = " + std::to_string(sigma) +
                           " fully depletes the reflected pump");
    const double rt = std::sqrt(sigma);
    SteadyState s;
    s.beta = std::sqrt((gamma0 / gamma) * (rt - 1.0));
    s.reflected_power_ratio = (2.0 - rt) * (2.0 - rt) / sigma;
    return s;
}

// ---- validated parameter set ----

class OpoParams {
  public:
    OpoParams(double gamma0, double gamma, double sigma, double omega_rel)
        : gamma0_(gamma0), gamma_(gamma), sigma_(sigma), omega_rel_(omega_rel) {
        if (!(gamma0 > 0.0) || gamma0 > 0.5)
            throw ValidationError("OpoParams: gamma0 = " + std::to_string(gamma0) +
                                  " outside (0, 0.5]");
        if (!(gamma > 0.0) || gamma > 0.5)
            throw ValidationError("OpoParams: gamma = " + std::to_string(gamma) +
                                  " outside (0, 0.5]");
        if (!(omega_rel > 0.0))
            throw ValidationError("OpoParams: omega_rel = " + std::to_string(omega_rel) +
                                  " must be positive (difference-mode phase noise diverges "
                                  "at zero frequency)");
        beta_ = classical_steady_state(sigma, gamma0, gamma).beta; // validates sigma
    }

    double gamma0() const { return gamma0_; }
    double gamma() const { return gamma_; }
    double sigma() const { return sigma_; }
    double omega_rel() const { return omega_rel_; }
    double beta() const { return beta_; }

  private:
    double gamma0_, gamma_, sigma_, omega_rel_, beta_;
};

// ---- closed-form transfer coefficients ----

struct TransferCoefficients {
    complexd xi_p, xi_q;             // effective sum-mode response denominators
    complexd kappa_p, kappa_q;       // pump-in -> twin-sum-out couplings
    complexd vartheta_p, vartheta_q; // pump-in -> pump-out reflections
};

inline TransferCoefficients transfer_coefficients(const OpoParams& p) {
    const double g0 = p.gamma0(), g = p.gamma(), b = p.beta();
    const complexd w(0.0, 2.0 * g * p.omega_rel()); // i * Omega * roundtrip
    const complexd d = g0 + w;
    const double gb2 = 2.0 * g * g * b * b;

    TransferCoefficients c;
    c.xi_p = w + gb2 / d;
    c.xi_q = 2.0 * g + c.xi_p;
    const double num = 2.0 * std::sqrt(2.0) * g * b * std::sqrt(g0 * g);
    c.kappa_p = num / (d * c.xi_p);
    c.kappa_q = num / (d * c.xi_q);
    c.vartheta_p = -1.0 + (2.0 * g0 / d) * (1.0 - gb2 / (d * c.xi_p));
    c.vartheta_q = -1.0 + (2.0 * g0 / d) * (1.0 - gb2 / (d * c.xi_q));
    return c;
}

// ---- labeled transfer map ----

enum class Quad { p, q };

// One quadrature of a named beam/vacuum channel.
struct QuadLabel {
    std::string channel;
    Quad quad;
    bool operator==(const QuadLabel&) const = default;
};

inline std::string to_string(const QuadLabel& l) {
    return (l.quad == Quad::p ? "p:" : "q:") + l.channel;
}

// Complex coefficient matrix from labeled input quadratures to labeled output
// quadratures at one analysis frequency. Construction rejects any coefficient
// that couples a p output to a q input or vice versa.
class TransferMap {
  public:
    TransferMap(std::vector<QuadLabel> outputs, std::vector<QuadLabel> inputs, CMat coeffs)
        : outputs_(std::move(outputs)), inputs_(std::move(inputs)), coeffs_(std::move(coeffs)) {
        if (coeffs_.rows() != outputs_.size() || coeffs_.cols() != inputs_.size())
            throw ValidationError("TransferMap: coefficient shape does not match labels");
        for (std::size_t i = 0; i < outputs_.size(); ++i)
            for (std::size_t j = 0; j < inputs_.size(); ++j)
                if (outputs_[i].quad != inputs_[j].quad && coeffs_(i, j) != complexd{})
                    throw ValidationError("TransferMap: cross-quadrature coefficient at " +
                                          to_string(outputs_[i]) + " <- " +
                                          to_string(inputs_[j]));
    }

    const std::vector<QuadLabel>& outputs() const { return outputs_; }
    const std::vector<QuadLabel>& inputs() const { return inputs_; }
    const CMat& coeffs() const { return coeffs_; }

  private:
    std::vector<QuadLabel> outputs_, inputs_;
    CMat coeffs_;
};

// Map of one OPO over its six vacuum input quadratures, in the (+/-)
// sum/difference basis of the twins:
//   inputs  (p:0in, q:0in, p:v+, q:v+, p:v-, q:v-)
//   outputs (p:+, q:+, p:0out, q:0out, p:-, q:-)
inline TransferMap build_transfer_map(const OpoParams& p) {
    const TransferCoefficients c = transfer_coefficients(p);
    const double g = p.gamma(), om = p.omega_rel();
    const complexd i1(0.0, 1.0);

    const complexd cv_p = 2.0 * g / c.xi_p - 1.0; // v+ -> + leftovers
    const complexd cv_q = 2.0 * g / c.xi_q - 1.0;
    const complexd c_pm = -i1 * om / (1.0 + i1 * om);   // difference amplitude
    const complexd c_qm = -i1 * (1.0 - i1 * om) / om;   // difference phase

    std::vector<QuadLabel> in = {{"0in", Quad::p}, {"0in", Quad::q},
                                 {"v+", Quad::p},  {"v+", Quad::q},
                                 {"v-", Quad::p},  {"v-", Quad::q}};
    std::vector<QuadLabel> out = {{"+", Quad::p},    {"+", Quad::q},
                                  {"0out", Quad::p}, {"0out", Quad::q},
                                  {"-", Quad::p},    {"-", Quad::q}};
    CMat m(6, 6);
    m(0, 0) = c.kappa_p;    m(0, 2) = cv_p;       // p+
    m(1, 1) = c.kappa_q;    m(1, 3) = cv_q;       // q+
    m(2, 0) = c.vartheta_p; m(2, 2) = -c.kappa_p; // p0out
    m(3, 1) = c.vartheta_q; m(3, 3) = -c.kappa_q; // q0out
    m(4, 4) = c_pm;                               // p-
    m(5, 5) = c_qm;                               // q-
    return TransferMap(std::move(out), std::move(in), std::move(m));
}

// Max deviation of M_p M_q^dagger from the identity, where M_p (M_q) gathers
// the p-type (q-type) coefficients with matching channel order. Zero means
// the lossless map preserves the canonical commutators, i.e. is unitary; this
// is the master validity check on the coefficient formulas.
inline double commutation_residual(const TransferMap& t) {
    auto split = [](const std::vector<QuadLabel>& labels, const char* what) {
        std::vector<std::size_t> ip, iq;
        for (std::size_t k = 0; k < labels.size(); ++k)
            (labels[k].quad == Quad::p ? ip : iq).push_back(k);
        if (ip.size() != iq.size())
            throw LabelError(std::string("commutation_residual: unpaired ") + what +
                             " quadratures");
        for (std::size_t k = 0; k < ip.size(); ++k)
            if (labels[ip[k]].channel != labels[iq[k]].channel)
                throw LabelError(std::string("commutation_residual: ") + what +
                                 " channel order differs between p and q: " +
                                 labels[ip[k]].channel + " vs " + labels[iq[k]].channel);
        return std::pair(ip, iq);
    };
    const auto [op, oq] = split(t.outputs(), "output");
    const auto [inp, inq] = split(t.inputs(), "input");
    // fewer outputs than inputs is fine (discarded ports); more is a bug
    if (op.size() > inp.size())
        throw LabelError("commutation_residual: more output than input channels");

    const CMat& m = t.coeffs();
    double worst = 0.0;
    for (std::size_t i = 0; i < op.size(); ++i) {
        for (std::size_t j = 0; j < op.size(); ++j) {
            complexd s = 0.0;
            for (std::size_t k = 0; k < inp.size(); ++k)
                s += m(op[i], inp[k]) * std::conj(m(oq[j], inq[k]));
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

} // namespace oposim
