// csv_io.hpp — CSV serialization for map/tensor series and generic numeric
// tables. Formats are locale-independent (C decimal notation), newline
// terminated with '\n', and decimals carry 17 significant digits so doubles
// round-trip exactly. Output is byte-identical across runs for identical
// inputs.
//
// Series files:
//   # dt = <decimal>
//   # dim = <integer>
//   k,i,j,re,im
//   <one row per entry, sorted by (k, i, j), k >= 1, i,j in [0, dim)>
//
// Table files: '#'-prefixed comment lines, one header row naming the
// columns, then numeric rows.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ttmjc/ttm.hpp"

namespace ttmjc::io {

/// Format a double with 17 significant digits ("%.17g", C locale).
std::string format_double(double value);

/// Parse failure with the 1-based line number where it happened.
class CsvError : public std::runtime_error {
public:
    CsvError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Lattice series of square complex matrices, the common layout of both map
/// and tensor files.
struct Series {
    double dt = 0.0;
    int dim = 0;
    std::vector<numlin::CMatrix> items;
};

std::string write_series(const Series& series);
Series read_series(std::istream& in);

ttm::MapSeries as_maps(Series series);
ttm::TensorSeries as_tensors(Series series);
Series as_series(const ttm::MapSeries& maps);
Series as_series(const ttm::TensorSeries& tensors);

/// Rectangular numeric table with comment header lines.
struct Table {
    std::vector<std::string> comments; // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string write_table(const Table& table);

} // namespace ttmjc::io
