#include "lelosc/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

std::string format_value(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return {buf, static_cast<std::size_t>(len)};
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("non-numeric CSV field '" + field + "' on line " +
                         std::to_string(line_no));
    return value;
}

double uniform_dt(const std::vector<double>& t) {
    if (t.size() < 2) throw ParseError("CSV series needs at least 2 rows");
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw ParseError("CSV time column must be strictly increasing");
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        if (std::abs(t[i + 1] - t[i] - dt) > 1e-6 * dt)
            throw ParseError("CSV time column is not uniformly sampled");
    return dt;
}

} // namespace

void write_csv(const std::string& path, const CsvTable& table) {
    if (table.header.empty() || table.header.size() != table.columns.size())
        throw std::invalid_argument("CSV table header and column counts must match");
    const std::size_t rows = table.columns.front().size();
    for (const auto& col : table.columns)
        if (col.size() != rows) throw std::invalid_argument("CSV table columns must be equal length");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c > 0) out << ',';
        out << table.header[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c > 0) out << ',';
            out << format_value(table.columns[c][r]);
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failure on '" + path + "'");
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
    CsvTable table;
    table.header = {"time_s", series.unit.empty() ? series.name : series.name + "_" + series.unit};
    std::vector<double> times(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) times[i] = series.time(i);
    table.columns = {std::move(times), series.samples};
    write_csv(path, table);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CsvTable table;
    table.header = split_fields(line);
    table.columns.resize(table.header.size());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != table.header.size())
            throw ParseError("ragged CSV row on line " + std::to_string(line_no));
        for (std::size_t c = 0; c < fields.size(); ++c)
            table.columns[c].push_back(parse_field(fields[c], line_no));
    }
    if (table.columns.front().empty()) throw ParseError("CSV file '" + path + "' has no data rows");
    return table;
}

TimeSeries series_from_table(const CsvTable& table) {
    if (table.header.size() != 2)
        throw ParseError("series CSV needs exactly 2 columns (time, value)");
    TimeSeries s;
    s.name = table.header[1];
    s.t0 = table.columns[0].front();
    s.dt = uniform_dt(table.columns[0]);
    s.samples = table.columns[1];
    return s;
}

ThreePhaseRecord three_phase_from_table(const CsvTable& table) {
    if (table.header.size() != 7)
        throw ParseError("three-phase CSV needs 7 columns (t, va, vb, vc, ia, ib, ic)");
    ThreePhaseRecord rec;
    rec.dt = uniform_dt(table.columns[0]);
    rec.va = table.columns[1];
    rec.vb = table.columns[2];
    rec.vc = table.columns[3];
    rec.ia = table.columns[4];
    rec.ib = table.columns[5];
    rec.ic = table.columns[6];
    return rec;
}

} // namespace lelosc
