// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_MATRIX_MARKET_HPP
#define KRYLOV_MATRIX_MARKET_HPP

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sparse_storage.hpp"

namespace krylov {

class matrix_market_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        return true;
    }
    return false;
}

inline std::size_t parse_index(const std::string& tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw matrix_market_error("non-numeric index token: " + tok);
    }
    if (used != tok.size()) throw matrix_market_error("non-numeric index token: " + tok);
    if (v < 0) throw matrix_market_error("negative index: " + tok);
    return static_cast<std::size_t>(v);
}

inline double parse_real(const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw matrix_market_error("non-numeric value token: " + tok);
    }
    if (used != tok.size()) throw matrix_market_error("non-numeric value token: " + tok);
    return v;
}

}  // namespace detail

inline Triplets read_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw matrix_market_error("empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    bool symmetric = false;
    if (header == "%%MatrixMarket matrix coordinate real symmetric") symmetric = true;
    else if (header != "%%MatrixMarket matrix coordinate real general")
        throw matrix_market_error("unsupported header: " + header);

    std::string line;
    if (!detail::next_data_line(in, line)) throw matrix_market_error("missing size line");
    std::istringstream sz(line);
    std::string a, b, c, extra;
    if (!(sz >> a >> b >> c) || (sz >> extra)) throw matrix_market_error("malformed size line");
    const std::size_t rows = detail::parse_index(a), cols = detail::parse_index(b),
                      count = detail::parse_index(c);
    if (rows != cols) throw matrix_market_error("matrix is not square");

    Triplets t{rows, {}};
    for (std::size_t e = 0; e < count; ++e) {
        if (!detail::next_data_line(in, line)) throw matrix_market_error("missing entries");
        std::istringstream es(line);
        std::string si, sj, sv;
        if (!(es >> si >> sj >> sv) || (es >> extra)) throw matrix_market_error("malformed entry line");
        const std::size_t i = detail::parse_index(si), j = detail::parse_index(sj);
        if (i < 1 || j < 1 || i > rows || j > cols) throw matrix_market_error("index out of range");
        const double v = detail::parse_real(sv);
        t.entries.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) t.entries.push_back({j - 1, i - 1, v});
    }
    if (detail::next_data_line(in, line)) throw matrix_market_error("trailing data after entries");
    return t;
}

/// General by default; symmetric output keeps only the lower triangle.
inline std::string write_matrix_market(const Triplets& t, bool symmetric = false) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
    std::size_t count = 0;
    for (const auto& e : t.entries)
        if (!symmetric || e.row >= e.col) ++count;
    out << t.n << ' ' << t.n << ' ' << count << '\n';
    for (const auto& e : t.entries) {
        if (symmetric && e.row < e.col) continue;
        out << e.row + 1 << ' ' << e.col + 1 << ' ' << format_real(e.value) << '\n';
    }
    return out.str();
}

/// Dense vectors as "array real general" n x 1.
inline std::string write_matrix_market_vector(const Vector& v) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
    for (double x : v) out << format_real(x) << '\n';
    return out.str();
}

inline Vector read_matrix_market_vector(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw matrix_market_error("empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "%%MatrixMarket matrix array real general")
        throw matrix_market_error("unsupported vector header: " + header);
    std::string line;
    if (!detail::next_data_line(in, line)) throw matrix_market_error("missing size line");
    std::istringstream sz(line);
    std::string a, b;
    if (!(sz >> a >> b)) throw matrix_market_error("malformed size line");
    const std::size_t n = detail::parse_index(a);
    if (detail::parse_index(b) != 1) throw matrix_market_error("vector file must have one column");
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!detail::next_data_line(in, line)) throw matrix_market_error("missing entries");
        std::istringstream es(line);
        std::string tok;
        es >> tok;
        v[i] = detail::parse_real(tok);
    }
    return v;
}

}  // namespace krylov

#endif
