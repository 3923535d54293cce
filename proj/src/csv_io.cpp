#include "ttmjc/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <utility>

namespace ttmjc::io {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvError::CsvError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& field, int line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(value))
        throw CsvError(line, "expected a finite decimal, got '" + field + "'");
    return value;
}

long parse_long(const std::string& field, int line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const long value = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw CsvError(line, "expected an integer, got '" + field + "'");
    return value;
}

// Strips a trailing '\r' so CRLF input parses too.
bool next_line(std::istream& in, std::string& line, int& lineno) {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

} // namespace

std::string write_series(const Series& series) {
    std::string out;
    out += "# dt = " + format_double(series.dt) + "\n";
    out += "# dim = " + std::to_string(series.dim) + "\n";
    out += "k,i,j,re,im\n";
    for (std::size_t k = 0; k < series.items.size(); ++k) {
        const numlin::CMatrix& m = series.items[k];
        for (int i = 0; i < series.dim; ++i)
            for (int j = 0; j < series.dim; ++j) {
                out += std::to_string(k + 1);
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += std::to_string(j);
                out += ',';
                out += format_double(m(i, j).real());
                out += ',';
                out += format_double(m(i, j).imag());
                out += '\n';
            }
    }
    return out;
}

Series read_series(std::istream& in) {
    int lineno = 0;
    std::string line;

    if (!next_line(in, line, lineno) || line.rfind("# dt = ", 0) != 0)
        throw CsvError(lineno == 0 ? 1 : lineno, "expected '# dt = <decimal>' header");
    Series series;
    series.dt = parse_double(line.substr(7), lineno);
    if (!(series.dt > 0.0)) throw CsvError(lineno, "dt must be > 0");

    if (!next_line(in, line, lineno) || line.rfind("# dim = ", 0) != 0)
        throw CsvError(lineno == 0 ? 1 : lineno, "expected '# dim = <integer>' header");
    const long dim = parse_long(line.substr(8), lineno);
    if (dim < 1 || dim > 4096) throw CsvError(lineno, "dim out of range");
    series.dim = static_cast<int>(dim);

    if (!next_line(in, line, lineno) || line != "k,i,j,re,im")
        throw CsvError(lineno == 0 ? 1 : lineno, "expected column header 'k,i,j,re,im'");

    long expected_k = 1;
    int expected_i = 0;
    int expected_j = 0;
    while (next_line(in, line, lineno)) {
        if (line.empty()) throw CsvError(lineno, "blank line inside data");
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 5) throw CsvError(lineno, "expected 5 fields");
        const long k = parse_long(fields[0], lineno);
        const long i = parse_long(fields[1], lineno);
        const long j = parse_long(fields[2], lineno);
        if (k != expected_k || i != expected_i || j != expected_j)
            throw CsvError(lineno, "rows must cover each (k,i,j) exactly once in sorted order");
        if (expected_j == 0 && expected_i == 0)
            series.items.emplace_back(series.dim);
        series.items.back()(expected_i, expected_j) =
            numlin::Complex(parse_double(fields[3], lineno), parse_double(fields[4], lineno));
        if (++expected_j == series.dim) {
            expected_j = 0;
            if (++expected_i == series.dim) {
                expected_i = 0;
                ++expected_k;
            }
        }
    }
    if (expected_i != 0 || expected_j != 0)
        throw CsvError(lineno, "file ends inside a matrix block");
    if (series.items.empty()) throw CsvError(lineno, "series holds no matrices");
    return series;
}

ttm::MapSeries as_maps(Series series) {
    ttm::MapSeries maps{series.dt, series.dim, std::move(series.items)};
    ttm::validate(maps);
    return maps;
}

ttm::TensorSeries as_tensors(Series series) {
    ttm::TensorSeries tensors{series.dt, series.dim, std::move(series.items)};
    ttm::validate(tensors);
    return tensors;
}

Series as_series(const ttm::MapSeries& maps) { return {maps.dt, maps.dim, maps.maps}; }

Series as_series(const ttm::TensorSeries& tensors) {
    return {tensors.dt, tensors.dim, tensors.tensors};
}

std::string write_table(const Table& table) {
    std::string out;
    for (const std::string& comment : table.comments) out += "# " + comment + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const std::vector<double>& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

} // namespace ttmjc::io
