#pragma once

// Matrix Market coordinate-format I/O for sparse Hermitian operators.
// Writes are deterministic: entries in key order, floats with 17 significant
// digits (lossless double round trip).

#include <defectchain/spectra.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace defectchain {

struct SparseMatrix {
    std::size_t dim = 0;
    SparseEntries entries;
};

namespace detail {

inline std::string float17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_matrix_market(std::ostream& os, std::size_t dim, const SparseEntries& entries) {
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << dim << ' ' << dim << ' ' << entries.size() << '\n';
    for (const auto& [key, value] : entries)
        os << key.first + 1 << ' ' << key.second + 1 << ' ' << detail::float17(value.real()) << ' '
           << detail::float17(value.imag()) << '\n';
}

inline void write_matrix_market(const std::string& path, std::size_t dim,
                                const SparseEntries& entries) {
    std::ofstream os(path, std::ios::binary);  // binary: no newline translation
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_matrix_market(os, dim, entries);
    if (!os)
        throw std::runtime_error("failed while writing '" + path + "'");
}

inline void write_matrix_market(const std::string& path, const ChainOperator& op) {
    write_matrix_market(path, op.dimension(), op.entries);
}

inline SparseMatrix read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("matrix file is empty");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
        throw std::runtime_error("unsupported matrix file header: " + line);
    if (field != "complex" && field != "real")
        throw std::runtime_error("matrix field must be real or complex, got '" + field + "'");
    if (symmetry != "general")
        throw std::runtime_error("matrix symmetry must be general, got '" + symmetry + "'");
    const bool complex_field = field == "complex";

    while (std::getline(is, line)) {  // skip comments and blank lines
        if (!line.empty() && line[0] != '%')
            break;
    }
    std::istringstream sizes(line);
    long long rows = -1, cols = -1, nnz = -1;
    sizes >> rows >> cols >> nnz;
    if (rows < 0 || cols < 0 || nnz < 0)
        throw std::runtime_error("malformed matrix size line: " + line);
    if (rows != cols)
        throw std::runtime_error("matrix must be square");

    SparseMatrix out;
    out.dim = static_cast<std::size_t>(rows);
    for (long long k = 0; k < nnz; ++k) {
        if (!std::getline(is, line))
            throw std::runtime_error("matrix file ends before the declared entry count");
        std::istringstream entry(line);
        long long i = 0, j = 0;
        double re = 0.0, im = 0.0;
        entry >> i >> j >> re;
        if (complex_field)
            entry >> im;
        if (entry.fail() || i < 1 || j < 1 || i > rows || j > cols)
            throw std::runtime_error("malformed matrix entry: " + line);
        out.entries[{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)}] = {re, im};
    }
    return out;
}

inline SparseMatrix read_matrix_market(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_matrix_market(is);
}

} // namespace defectchain
