#include "sblab/io.hpp"

#include <charconv>
#include <sstream>

#include "sblab/errors.hpp"

namespace sblab {

std::string format_number(double v)
{
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Metadata& Metadata::add(std::string key, std::string value)
{
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Metadata& Metadata::add(std::string key, double value) { return add(std::move(key), format_number(value)); }

CsvWriter::CsvWriter(std::filesystem::path const& path, Metadata const& meta,
                     std::vector<std::string> const& columns)
    : out_(path, std::ios::binary), width_(columns.size())
{
    if (!out_) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    out_ << "# sblab " << version << "\n";
    for (auto const& [k, v] : meta.entries()) {
        out_ << "# " << k << ": " << v << "\n";
    }
    row(columns);
}

void CsvWriter::row(std::vector<std::string> const& cells)
{
    if (cells.size() != width_) {
        throw RangeError("csv row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << (i ? "," : "") << cells[i];
    }
    out_ << "\n";
}

std::size_t CsvTable::column(std::string const& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw ConfigError("csv has no column '" + name + "'");
}

namespace {

std::vector<std::string> split(std::string const& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

} // namespace

CsvTable read_csv(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read '" + path.string() + "'");
    }
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            auto const colon = line.find(": ");
            if (colon != std::string::npos && line.size() > 2) {
                t.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
            }
            continue;
        }
        if (t.columns.empty()) {
            t.columns = split(line);
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.columns.size()) {
            throw ConfigError("malformed row in '" + path.string() + "'");
        }
        t.rows.push_back(std::move(cells));
    }
    if (t.columns.empty()) {
        throw ConfigError("'" + path.string() + "' has no header");
    }
    return t;
}

} // namespace sblab
