// covariance_io.hpp — plain-text serialization of labeled covariance matrices.
//
// Format: one header line "dim label_1 ... label_N" (dim = 2N), then dim rows
// of dim whitespace-separated entries at full double precision. "#" starts a
// comment anywhere; blank lines are ignored.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oposim/covariance.hpp"
#include "oposim/errors.hpp"

namespace oposim {

namespace detail {

// shortest exact decimal a double round-trips through is <= 17 significant digits
inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace detail

inline void write_cov(std::ostream& os, const CovMatrix& v) {
    const std::size_t dim = v.data().size();
    os << dim;
    for (const auto& m : v.modes()) os << ' ' << m;
    os << '\n';
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            os << (j ? " " : "") << detail::fmt17(v.data()(i, j));
        os << '\n';
    }
}

inline CovMatrix read_cov(std::istream& is) {
    // strip comments/blank lines, then tokenize the rest
    std::vector<std::string> tokens;
    std::string line;
    std::size_t header_end = 0; // tokens in the header line
    bool have_header = false;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        bool any = false;
        while (ls >> tok) {
            tokens.push_back(tok);
            any = true;
        }
        if (any && !have_header) {
            have_header = true;
            header_end = tokens.size();
        }
    }
    if (!have_header) throw ValidationError("read_cov: empty input");

    std::size_t dim = 0;
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(tokens[0], &pos);
        if (pos != tokens[0].size() || d <= 0 || d % 2 != 0)
            throw ValidationError("");
        dim = static_cast<std::size_t>(d);
    } catch (const std::exception&) {
        throw ValidationError("read_cov: first token '" + tokens[0] +
                              "' is not a positive even dimension");
    }
    const std::vector<std::string> modes(tokens.begin() + 1, tokens.begin() + header_end);
    if (modes.size() != dim / 2)
        throw ValidationError("read_cov: header lists " + std::to_string(modes.size()) +
                              " mode labels for dimension " + std::to_string(dim));
    if (tokens.size() != header_end + dim * dim)
        throw ValidationError("read_cov: expected " + std::to_string(dim * dim) +
                              " matrix entries, found " +
                              std::to_string(tokens.size() - header_end));

    Mat a(dim, dim);
    for (std::size_t k = 0; k < dim * dim; ++k) {
        const std::string& tok = tokens[header_end + k];
        try {
            std::size_t pos = 0;
            const double x = std::stod(tok, &pos);
            if (pos != tok.size() || !std::isfinite(x)) throw ValidationError("");
            a(k / dim, k % dim) = x;
        } catch (const std::exception&) {
            throw ValidationError("read_cov: entry '" + tok + "' is not a finite number");
        }
    }

    double scale = std::max(a.max_abs(), 1.0), asym = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            asym = std::max(asym, std::abs(a(i, j) - a(j, i)));
    if (asym > 1e-9 * scale)
        throw ValidationError("read_cov: matrix is asymmetric beyond tolerance (max deviation " +
                              std::to_string(asym) + ")");
    return CovMatrix(modes, SymMat::mirrored(a));
}

inline CovMatrix read_cov_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("read_cov_file: cannot open '" + path + "'");
    return read_cov(f);
}

inline void write_cov_file(const std::string& path, const CovMatrix& v) {
    std::ofstream f(path);
    if (!f) throw ValidationError("write_cov_file: cannot open '" + path + "'");
    write_cov(f, v);
}

} // namespace oposim
