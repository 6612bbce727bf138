#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qhs3/errors.hpp"
#include "qhs3/integrate.hpp"
#include "qhs3/normal_form.hpp"
#include "qhs3/system.hpp"

namespace qhs3 {

// A system definition document. Symmetric matrices are stored as their upper
// triangle (row-major: m11 m12 m13 m22 m23 m33), so asymmetric input cannot
// be expressed at all. Optional keys dt, T and u0 carry simulation defaults.
struct SystemFile {
    QuadraticSystem system;
    std::optional<double> dt;
    std::optional<double> duration;  // key "T"
    std::optional<Vec3> u0;
};

// Shortest decimal form that round-trips a double (17 significant digits).
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline double parse_real(std::string_view token, const std::string& field) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("field '" + field + "': bad number '" + std::string(token) + "'", field);
    if (!std::isfinite(value))
        throw ParseError("field '" + field + "': non-finite value", field);
    return value;
}

inline std::vector<double> parse_reals(std::string_view text, const std::string& field,
                                       std::size_t expected) {
    std::vector<double> values;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) values.push_back(parse_real(token, field));
    if (values.size() != expected)
        throw ParseError("field '" + field + "': expected " + std::to_string(expected) +
                             " numbers, got " + std::to_string(values.size()),
                         field);
    return values;
}

}  // namespace detail

// Parses a key-value document. One `key = values` pair per line; `#` starts
// a comment; keys are case sensitive (K and k are different fields). Throws
// ParseError naming the offending field.
inline SystemFile parse_system_file(std::string_view text) {
    static const std::map<std::string, std::size_t, std::less<>> kFields = {
        {"K", 6}, {"k", 3}, {"A", 6}, {"a", 3}, {"dt", 1}, {"T", 1}, {"u0", 3}};

    std::map<std::string, std::vector<double>> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::istringstream probe(line);
            std::string stray;
            if (probe >> stray)
                throw ParseError("line '" + line + "' is not of the form 'key = values'", stray);
            continue;  // blank or comment-only line
        }

        std::string key;
        {
            std::istringstream keyin(line.substr(0, eq));
            keyin >> key;
            std::string extra;
            if (key.empty() || keyin >> extra)
                throw ParseError("malformed key on line '" + line + "'", key);
        }
        const auto spec = kFields.find(key);
        if (spec == kFields.end()) throw ParseError("unknown field '" + key + "'", key);
        if (seen.count(key)) throw ParseError("duplicate field '" + key + "'", key);
        seen[key] = detail::parse_reals(line.substr(eq + 1), key, spec->second);
    }

    for (const char* required : {"K", "k", "A", "a"})
        if (!seen.count(required))
            throw ParseError("missing required field '" + std::string(required) + "'", required);

    const auto sym = [&](const char* key) {
        const auto& v = seen[key];
        try {
            return SymMat3::from_upper_triangle(v[0], v[1], v[2], v[3], v[4], v[5]);
        } catch (const std::invalid_argument& e) {
            throw ParseError("field '" + std::string(key) + "': " + e.what(), key);
        }
    };
    const auto vec = [&](const char* key) {
        const auto& v = seen[key];
        return Vec3{v[0], v[1], v[2]};
    };

    SystemFile file{QuadraticSystem{sym("K"), vec("k"), sym("A"), vec("a")}, {}, {}, {}};
    if (seen.count("dt")) file.dt = seen["dt"][0];
    if (seen.count("T")) file.duration = seen["T"][0];
    if (seen.count("u0")) file.u0 = vec("u0");
    return file;
}

inline SystemFile load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'", "file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_file(buf.str());
}

inline std::string serialize_system_file(const SystemFile& file) {
    const auto sym = [](const SymMat3& s) {
        return format_real(s(0, 0)) + " " + format_real(s(0, 1)) + " " + format_real(s(0, 2)) +
               " " + format_real(s(1, 1)) + " " + format_real(s(1, 2)) + " " +
               format_real(s(2, 2));
    };
    const auto vec = [](const Vec3& v) {
        return format_real(v[0]) + " " + format_real(v[1]) + " " + format_real(v[2]);
    };
    std::string out;
    out += "K = " + sym(file.system.K) + "\n";
    out += "k = " + vec(file.system.k) + "\n";
    out += "A = " + sym(file.system.A) + "\n";
    out += "a = " + vec(file.system.a) + "\n";
    if (file.dt) out += "dt = " + format_real(*file.dt) + "\n";
    if (file.duration) out += "T = " + format_real(*file.duration) + "\n";
    if (file.u0) out += "u0 = " + vec(*file.u0) + "\n";
    return out;
}

// Key-value document mirroring the input format: R row-major, then detR,
// D_K, D_A, k_hat, a_hat.
inline std::string format_normal_form(const NormalForm& nf) {
    const auto vec = [](const Vec3& v) {
        return format_real(v[0]) + " " + format_real(v[1]) + " " + format_real(v[2]);
    };
    std::string out = "R =";
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out += " " + format_real(nf.rotation(i, j));
    out += "\ndetR = " + format_real(nf.det_r);
    out += "\nD_K = " + format_real(nf.diag_k[0]) + " " + format_real(nf.diag_k[1]) + " " +
           format_real(nf.diag_k[2]);
    out += "\nD_A = " + format_real(nf.diag_a[0]) + " " + format_real(nf.diag_a[1]) + " " +
           format_real(nf.diag_a[2]);
    out += "\nk_hat = " + vec(nf.k_hat);
    out += "\na_hat = " + vec(nf.a_hat);
    out += "\n";
    return out;
}

// CSV columns t,x1,x2,x3,H,C at 17 significant digits, one row per state.
inline void write_trajectory_csv(std::ostream& os, const QuadraticSystem& sys,
                                 const Trajectory& tr) {
    os << "t,x1,x2,x3,H,C\n";
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
        const Vec3& u = tr.states[i];
        os << format_real(tr.times[i]) << ',' << format_real(u[0]) << ',' << format_real(u[1])
           << ',' << format_real(u[2]) << ',' << format_real(hamiltonian(sys, u)) << ','
           << format_real(casimir(sys, u)) << '\n';
    }
}

}  // namespace qhs3
