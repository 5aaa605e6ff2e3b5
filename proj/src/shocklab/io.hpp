#pragma once

#include <string>

#include "common.hpp"

namespace shocklab {

// All floating-point output uses 17 significant digits so golden comparisons
// are tolerance-based, never formatting-lossy.
std::string format_g17(double v);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    void* file_;  // FILE*
    size_t columns_;
};

// "start:step:end" inclusive grid (end included within half a step).
std::vector<double> parse_grid(const std::string& spec);

// "a,b" pair
std::pair<double, double> parse_pair(const std::string& spec);

}  // namespace shocklab
