// Shared helpers for the test executables: literal matrices, file and CSV
// plumbing, and a wrapper for driving the command-line binary.

#pragma once

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

#include <oposim/matrix.hpp>

namespace testutil {

inline oposim::Mat mat_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t nr = rows.size();
    const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
    oposim::Mat m(nr, nc);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline oposim::SymMat sym_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    return oposim::SymMat(mat_from_rows(rows));
}

// ---- files ----

inline const std::string& temp_dir() {
    static const std::string dir = [] {
        std::string templ = "/tmp/oposim-test-XXXXXX";
        if (!mkdtemp(templ.data())) templ = "/tmp";
        return templ;
    }();
    return dir;
}

inline std::string temp_path(const std::string& name) { return temp_dir() + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream(path, std::ios::binary) << content;
}

// ---- CSV (quote-aware, CRLF records) ----

inline std::vector<std::string> csv_records(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '"') quoted = !quoted;
        if (!quoted && c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            out.push_back(cur);
            cur.clear();
            ++i;
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<std::string> csv_fields(const std::string& record) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < record.size(); ++i) {
        const char c = record[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < record.size() && record[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// ---- driving the CLI binary ----

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline const char* cli_path() { return std::getenv("OPOSIM_CLI"); }

inline CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_file = temp_path("cli-out-" + std::to_string(counter));
    const std::string err_file = temp_path("cli-err-" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(cli_path()) + " " + args + " >" + out_file + " 2>" + err_file;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = status;
#if defined(WIFEXITED)
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
#endif
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

} // namespace testutil
