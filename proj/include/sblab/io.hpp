#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sblab {

inline constexpr char const* version = "1.0.0";

/// Shortest text that reads back to the same double.
std::string format_number(double v);

/// Ordered `# key: value` lines written at the top of every CSV.
class Metadata
{
  public:
    Metadata& add(std::string key, std::string value);
    Metadata& add(std::string key, double value);
    std::vector<std::pair<std::string, std::string>> const& entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

class CsvWriter
{
  public:
    /// Throws ConfigError when the file cannot be opened.
    CsvWriter(std::filesystem::path const& path, Metadata const& meta,
              std::vector<std::string> const& columns);

    void row(std::vector<std::string> const& cells);

  private:
    std::ofstream out_;
    std::size_t width_;
};

struct CsvTable
{
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws ConfigError if absent.
    std::size_t column(std::string const& name) const;
};

CsvTable read_csv(std::filesystem::path const& path);

} // namespace sblab
