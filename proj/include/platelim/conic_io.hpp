#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "platelim/conic.hpp"

namespace platelim {

namespace detail {
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

// ASCII dump of a cone program (see docs/formats.md for the grammar).
inline std::string conic_to_ascii(const ConicProgram& p) {
    std::ostringstream out;
    out << "platelim-conic 1\n";
    out << "rows " << p.rows << "\n";
    out << "cols " << p.cols << "\n";
    out << "cones " << p.cones.size() << "\n";
    for (const ConeSpec& c : p.cones) {
        const char* kind = c.kind == ConeKind::free_block ? "free"
                           : c.kind == ConeKind::nonneg   ? "nonneg"
                                                          : "soc";
        out << kind << " " << c.dim << "\n";
    }
    out << "objective\n";
    for (double v : p.objective) out << detail::format_double(v) << "\n";
    out << "rhs\n";
    for (double v : p.rhs) out << detail::format_double(v) << "\n";
    out << "triplets " << p.entries.size() << "\n";
    for (const ConicTriplet& t : p.entries)
        out << t.row << " " << t.col << " " << detail::format_double(t.value) << "\n";
    out << "end\n";
    return out.str();
}

inline void write_conic_ascii(const ConicProgram& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write conic dump: " + path);
    out << conic_to_ascii(p);
}

inline ConicProgram read_conic_ascii(std::istream& in) {
    auto need = [&in](const std::string& what) {
        std::string tok;
        if (!(in >> tok)) throw std::runtime_error("conic dump: unexpected end, expected " + what);
        return tok;
    };
    auto need_int = [&need](const std::string& what) { return std::stoll(need(what)); };
    auto need_double = [&need](const std::string& what) { return std::stod(need(what)); };

    if (need("header") != "platelim-conic" || need_int("version") != 1)
        throw std::runtime_error("conic dump: bad header");
    ConicProgram p;
    if (need("rows") != "rows") throw std::runtime_error("conic dump: expected 'rows'");
    p.rows = static_cast<int>(need_int("row count"));
    if (need("cols") != "cols") throw std::runtime_error("conic dump: expected 'cols'");
    p.cols = static_cast<int>(need_int("col count"));
    if (need("cones") != "cones") throw std::runtime_error("conic dump: expected 'cones'");
    const long long ncones = need_int("cone count");
    for (long long i = 0; i < ncones; ++i) {
        const std::string kind = need("cone kind");
        const int dim = static_cast<int>(need_int("cone dim"));
        if (kind == "free") p.cones.push_back({ConeKind::free_block, dim});
        else if (kind == "nonneg") p.cones.push_back({ConeKind::nonneg, dim});
        else if (kind == "soc") p.cones.push_back({ConeKind::soc, dim});
        else throw std::runtime_error("conic dump: unknown cone kind " + kind);
    }
    if (need("objective") != "objective") throw std::runtime_error("conic dump: expected 'objective'");
    p.objective.resize(p.cols);
    for (int i = 0; i < p.cols; ++i) p.objective[i] = need_double("objective value");
    if (need("rhs") != "rhs") throw std::runtime_error("conic dump: expected 'rhs'");
    p.rhs.resize(p.rows);
    for (int i = 0; i < p.rows; ++i) p.rhs[i] = need_double("rhs value");
    if (need("triplets") != "triplets") throw std::runtime_error("conic dump: expected 'triplets'");
    const long long nnz = need_int("triplet count");
    p.entries.reserve(nnz);
    for (long long i = 0; i < nnz; ++i) {
        ConicTriplet t;
        t.row = static_cast<int>(need_int("triplet row"));
        t.col = static_cast<int>(need_int("triplet col"));
        t.value = need_double("triplet value");
        p.entries.push_back(t);
    }
    if (need("end") != "end") throw std::runtime_error("conic dump: expected 'end'");
    p.validate();
    return p;
}

inline ConicProgram read_conic_ascii_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open conic dump: " + path);
    return read_conic_ascii(in);
}

}  // namespace platelim
