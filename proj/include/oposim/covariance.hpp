// covariance.hpp — spectral covariance matrices of the bright OPO outputs:
// single device, cascaded chains, and the mode-wise operations on them
// (partial transposition, reduction, output loss).
//
// Quadrature ordering inside a CovMatrix is (p1, q1, p2, q2, ...) following
// the mode label list; twin modes of stage X are "1_X"/"2_X" (plain "1"/"2"
// for a single OPO) and the reflected pump is always the last mode, "0".

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oposim/errors.hpp"
#include "oposim/matrix.hpp"
#include "oposim/opo.hpp"

namespace oposim {

// ---- labeled covariance matrix ----

class CovMatrix {
  public:
    CovMatrix(std::vector<std::string> modes, SymMat data)
        : modes_(std::move(modes)), data_(std::move(data)) {
        if (modes_.empty() || data_.size() != 2 * modes_.size())
            throw ValidationError("CovMatrix: dimension " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(modes_.size()) +
                                  " mode labels");
        for (const auto& label : modes_)
            if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos)
                throw ValidationError("CovMatrix: mode labels must be nonempty and free of "
                                      "whitespace");
        for (std::size_t i = 0; i < modes_.size(); ++i)
            for (std::size_t j = i + 1; j < modes_.size(); ++j)
                if (modes_[i] == modes_[j])
                    throw ValidationError("CovMatrix: duplicate mode label '" + modes_[i] + "'");
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!(data_(k, k) > 0.0))
                throw ValidationError("CovMatrix: nonpositive variance on the diagonal");
    }

    const std::vector<std::string>& modes() const { return modes_; }
    std::size_t n_modes() const { return modes_.size(); }
    const SymMat& data() const { return data_; }

    std::optional<std::size_t> find_mode(const std::string& label) const {
        for (std::size_t k = 0; k < modes_.size(); ++k)
            if (modes_[k] == label) return k;
        return std::nullopt;
    }

  private:
    std::vector<std::string> modes_;
    SymMat data_;
};

// V_ij = Re(C C^dagger)_ij over unit-variance, mutually independent vacuum
// inputs. Outputs must come as (p, q) label pairs, one pair per mode.
inline CovMatrix covariance_from_transfer(const TransferMap& t) {
    const auto& out = t.outputs();
    if (out.size() % 2 != 0)
        throw LabelError("covariance_from_transfer: odd number of output quadratures");
    std::vector<std::string> modes;
    for (std::size_t k = 0; k < out.size(); k += 2) {
        if (out[k].quad != Quad::p || out[k + 1].quad != Quad::q ||
            out[k].channel != out[k + 1].channel)
            throw LabelError("covariance_from_transfer: outputs not in (p, q) pairs at '" +
                             out[k].channel + "'");
        modes.push_back(out[k].channel);
    }

    const CMat& c = t.coeffs();
    const std::size_t n = c.rows(), ni = c.cols();
    Mat v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < ni; ++k)
                s += (c(i, k) * std::conj(c(j, k))).real();
            v(i, j) = s;
            v(j, i) = s;
        }
    }
    return CovMatrix(std::move(modes), SymMat(std::move(v)));
}

// ---- single OPO ----

// Covariance over modes (1, 2, 0): twins rotated out of the (+/-) basis via
// the orthogonal pi/4 map p1 = (p+ + p-)/sqrt2, p2 = (p+ - p-)/sqrt2.
inline CovMatrix single_opo_covariance(const OpoParams& p) {
    const TransferMap t = build_transfer_map(p);
    const CMat& m = t.coeffs(); // rows: p+, q+, p0, q0, p-, q-
    const double s = 1.0 / std::sqrt(2.0);

    CMat c(6, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        c(0, k) = s * (m(0, k) + m(4, k)); // p1
        c(1, k) = s * (m(1, k) + m(5, k)); // q1
        c(2, k) = s * (m(0, k) - m(4, k)); // p2
        c(3, k) = s * (m(1, k) - m(5, k)); // q2
        c(4, k) = m(2, k);                 // p0
        c(5, k) = m(3, k);                 // q0
    }
    std::vector<QuadLabel> out = {{"1", Quad::p}, {"1", Quad::q}, {"2", Quad::p},
                                  {"2", Quad::q}, {"0", Quad::p}, {"0", Quad::q}};
    return covariance_from_transfer(TransferMap(std::move(out), t.inputs(), std::move(c)));
}

// ---- cascaded chain ----

struct OpoStage {
    double gamma0;
    double gamma;
    double threshold_ratio; // this stage's oscillation threshold over stage 1's
};

struct ChainSpec {
    std::vector<OpoStage> opos;
    double sigma_first = 1.5;     // incident pump power over stage 1's threshold
    double omega_rel_first = 0.5; // analysis frequency over stage 1's twin bandwidth
    std::vector<double> beam_loss; // per-mode output loss; empty = lossless
    double pump_loss = 0.0;        // loss on each inter-stage pump link
};

struct ChainResult {
    CovMatrix cov;                 // includes beam_loss if any
    std::vector<double> sigmas;    // derived pump power per stage
    std::vector<double> omega_rels;// analysis frequency per stage, own-bandwidth units
    TransferMap map;               // composed lossless-output map (pump-link loss ports included)
};

inline CovMatrix apply_output_loss(const CovMatrix& v, const std::vector<double>& lambdas);

namespace detail {

inline std::string stage_tag(std::size_t k, std::size_t n_stages) {
    if (n_stages == 1) return "";
    return std::string("_") + static_cast<char>('A' + k);
}

} // namespace detail

// Composes the per-stage transfer maps: each stage's pump input row is the
// previous stage's reflected-pump output row over the global vacuum inputs,
// attenuated by the pump-link beamsplitter when pump_loss > 0. Modes come out
// as (1_A, 2_A, ..., 1_M, 2_M, 0) with "0" the last reflected pump.
inline ChainResult chain_covariance(const ChainSpec& spec) {
    const std::size_t n = spec.opos.size();
    if (n == 0) throw ValidationError("chain_covariance: empty OPO list");
    if (n > 26) throw ValidationError("chain_covariance: at most 26 stages supported");
    if (spec.opos.front().threshold_ratio != 1.0)
        throw ValidationError("chain_covariance: first threshold_ratio must be 1");
    for (const auto& st : spec.opos)
        if (!(st.threshold_ratio > 0.0))
            throw ValidationError("chain_covariance: threshold_ratio must be positive");
    if (!(spec.pump_loss >= 0.0) || spec.pump_loss >= 1.0)
        throw InvalidLoss("chain_covariance: pump_loss " + std::to_string(spec.pump_loss) +
                          " outside [0, 1)");

    using Row = std::vector<complexd>;
    std::vector<QuadLabel> inputs = {{"0in", Quad::p}, {"0in", Quad::q}};
    Row prow = {1.0, 0.0}, qrow = {0.0, 1.0}; // pump row over the global inputs
    auto widen = [](Row& r, std::size_t len) { r.resize(len, complexd{}); };

    double sigma = spec.sigma_first;
    double omega = spec.omega_rel_first;
    std::vector<double> sigmas, omegas;
    std::vector<Row> twin_rows; // p1, q1, p2, q2 per stage
    std::vector<QuadLabel> outputs;
    const double s = 1.0 / std::sqrt(2.0);

    for (std::size_t k = 0; k < n; ++k) {
        const std::string tag = detail::stage_tag(k, n);
        if (k > 0) {
            const OpoStage& prev = spec.opos[k - 1];
            const OpoStage& cur = spec.opos[k];
            const double rt = std::sqrt(sigma);
            sigma = (rt - 2.0) * (rt - 2.0) * (prev.threshold_ratio / cur.threshold_ratio) *
                    (1.0 - spec.pump_loss);
            omega = omega * prev.gamma / cur.gamma;
            if (!(sigma > 1.0) || !(sigma < 4.0))
                throw DerivedSigmaOutOfRange(k + 1, sigma);
            if (spec.pump_loss > 0.0) {
                const double keep = std::sqrt(1.0 - spec.pump_loss);
                const double leak = std::sqrt(spec.pump_loss);
                const std::size_t base = inputs.size();
                inputs.push_back({"pl" + tag, Quad::p});
                inputs.push_back({"pl" + tag, Quad::q});
                for (auto* r : {&prow, &qrow}) {
                    widen(*r, base + 2);
                    for (auto& x : *r) x *= keep;
                }
                prow[base] = leak;
                qrow[base + 1] = leak;
            }
        }
        sigmas.push_back(sigma);
        omegas.push_back(omega);

        const OpoParams params(spec.opos[k].gamma0, spec.opos[k].gamma, sigma, omega);
        const TransferMap stage_map = build_transfer_map(params);
        const CMat& m = stage_map.coeffs();

        const std::size_t base = inputs.size();
        inputs.push_back({"v+" + tag, Quad::p});
        inputs.push_back({"v+" + tag, Quad::q});
        inputs.push_back({"v-" + tag, Quad::p});
        inputs.push_back({"v-" + tag, Quad::q});
        const std::size_t len = inputs.size();
        widen(prow, len);
        widen(qrow, len);

        // sum/pump rows from the pump row plus this stage's fresh vacua,
        // difference rows from the fresh vacua alone
        Row pplus(len), qplus(len), p0(len), q0(len);
        for (std::size_t j = 0; j < len; ++j) {
            pplus[j] = m(0, 0) * prow[j];
            qplus[j] = m(1, 1) * qrow[j];
            p0[j] = m(2, 0) * prow[j];
            q0[j] = m(3, 1) * qrow[j];
        }
        pplus[base] += m(0, 2);
        qplus[base + 1] += m(1, 3);
        p0[base] += m(2, 2);
        q0[base + 1] += m(3, 3);

        Row p1(len), q1(len), p2(len), q2(len);
        for (std::size_t j = 0; j < len; ++j) {
            p1[j] = s * pplus[j];
            q1[j] = s * qplus[j];
            p2[j] = s * pplus[j];
            q2[j] = s * qplus[j];
        }
        p1[base + 2] += s * m(4, 4);
        q1[base + 3] += s * m(5, 5);
        p2[base + 2] -= s * m(4, 4);
        q2[base + 3] -= s * m(5, 5);

        twin_rows.push_back(std::move(p1));
        twin_rows.push_back(std::move(q1));
        twin_rows.push_back(std::move(p2));
        twin_rows.push_back(std::move(q2));
        outputs.push_back({"1" + tag, Quad::p});
        outputs.push_back({"1" + tag, Quad::q});
        outputs.push_back({"2" + tag, Quad::p});
        outputs.push_back({"2" + tag, Quad::q});
        prow = std::move(p0);
        qrow = std::move(q0);
    }

    outputs.push_back({"0", Quad::p});
    outputs.push_back({"0", Quad::q});
    twin_rows.push_back(std::move(prow));
    twin_rows.push_back(std::move(qrow));

    const std::size_t n_in = inputs.size();
    CMat c(twin_rows.size(), n_in);
    for (std::size_t i = 0; i < twin_rows.size(); ++i) {
        widen(twin_rows[i], n_in);
        for (std::size_t j = 0; j < n_in; ++j) c(i, j) = twin_rows[i][j];
    }

    TransferMap map(std::move(outputs), std::move(inputs), std::move(c));
    CovMatrix cov = covariance_from_transfer(map);
    if (!spec.beam_loss.empty()) cov = apply_output_loss(cov, spec.beam_loss);
    return ChainResult{std::move(cov), std::move(sigmas), std::move(omegas), std::move(map)};
}

// ---- mode-wise operations ----

namespace detail {

inline std::vector<std::size_t> mode_indices(const CovMatrix& v,
                                             const std::vector<std::string>& labels,
                                             const char* who) {
    std::vector<std::size_t> idx;
    for (const auto& label : labels) {
        const auto k = v.find_mode(label);
        if (!k)
            throw InvalidPartition(std::string(who) + ": unknown mode label '" + label + "'");
        if (std::find(idx.begin(), idx.end(), *k) != idx.end())
            throw InvalidPartition(std::string(who) + ": duplicate mode label '" + label + "'");
        idx.push_back(*k);
    }
    return idx;
}

} // namespace detail

// PT on a mode subset: q -> -q on those modes, i.e. the congruence D V D.
inline CovMatrix partial_transpose(const CovMatrix& v,
                                   const std::vector<std::string>& transposed) {
    const auto idx = detail::mode_indices(v, transposed, "partial_transpose");
    if (idx.empty() || idx.size() == v.n_modes())
        throw InvalidPartition("partial_transpose: transposed set must be a nonempty proper "
                               "subset of the modes");
    Mat d = v.data().mat();
    for (std::size_t m : idx) {
        const std::size_t q = 2 * m + 1;
        for (std::size_t j = 0; j < d.cols(); ++j) {
            d(q, j) = -d(q, j);
            d(j, q) = -d(j, q);
        }
    }
    return CovMatrix(v.modes(), SymMat(std::move(d)));
}

// Partial trace of a Gaussian state: keep the rows/cols of `kept` (in the
// parent matrix's mode order).
inline CovMatrix reduce(const CovMatrix& v, const std::vector<std::string>& kept) {
    auto idx = detail::mode_indices(v, kept, "reduce");
    if (idx.empty()) throw InvalidPartition("reduce: kept set must be nonempty");
    std::sort(idx.begin(), idx.end());

    std::vector<std::string> modes;
    for (std::size_t m : idx) modes.push_back(v.modes()[m]);
    Mat out(2 * idx.size(), 2 * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    out(2 * a + i, 2 * b + j) = v.data()(2 * idx[a] + i, 2 * idx[b] + j);
    return CovMatrix(std::move(modes), SymMat(std::move(out)));
}

// Beamsplitter vacuum admixture per mode: diagonal blocks become
// (1-lambda) block + lambda I, cross blocks pick up sqrt((1-li)(1-lj)).
inline CovMatrix apply_output_loss(const CovMatrix& v, const std::vector<double>& lambdas) {
    const std::size_t n = v.n_modes();
    if (lambdas.size() != n)
        throw InvalidLoss("apply_output_loss: got " + std::to_string(lambdas.size()) +
                          " loss fractions for " + std::to_string(n) + " modes");
    for (double l : lambdas)
        if (!(l >= 0.0) || l >= 1.0)
            throw InvalidLoss("apply_output_loss: loss fraction " + std::to_string(l) +
                              " outside [0, 1)");

    Mat out(2 * n, 2 * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double f = (a == b) ? 1.0 - lambdas[a]
                                      : std::sqrt((1.0 - lambdas[a]) * (1.0 - lambdas[b]));
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    out(2 * a + i, 2 * b + j) = f * v.data()(2 * a + i, 2 * b + j);
        }
        out(2 * a, 2 * a) += lambdas[a];
        out(2 * a + 1, 2 * a + 1) += lambdas[a];
    }
    return CovMatrix(v.modes(), SymMat(std::move(out)));
}

inline CovMatrix apply_output_loss(const CovMatrix& v, double lambda) {
    return apply_output_loss(v, std::vector<double>(v.n_modes(), lambda));
}

} // namespace oposim
