#include "io.hpp"

#include <cstdio>
#include <cstring>

namespace shocklab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), columns_(columns.size()) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("CsvWriter: cannot open " + path);
    file_ = f;
    for (size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(static_cast<FILE*>(file_));
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
    FILE* f = static_cast<FILE*>(file_);
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f, "%s%s", format_g17(values[i]).c_str(), i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
    FILE* f = static_cast<FILE*>(file_);
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f, "%s%s", values[i].c_str(), i + 1 < values.size() ? "," : "\n");
}

std::vector<double> parse_grid(const std::string& spec) {
    double start, step, end;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &end) != 3)
        throw ConfigError("grid spec must be start:step:end, got '" + spec + "'");
    if (step == 0.0) throw ConfigError("grid step must be nonzero");
    if ((end - start) * step < 0.0) throw ConfigError("grid step points away from end");
    std::vector<double> out;
    int n = int(std::floor((end - start) / step + 0.5 + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) {
        double v = start + i * step;
        if ((step > 0 && v > end + 0.5 * step) || (step < 0 && v < end + 0.5 * step)) break;
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("grid '" + spec + "' is empty");
    return out;
}

std::pair<double, double> parse_pair(const std::string& spec) {
    double a, b;
    if (std::sscanf(spec.c_str(), "%lf,%lf", &a, &b) != 2)
        throw ConfigError("pair spec must be a,b, got '" + spec + "'");
    return {a, b};
}

}  // namespace shocklab
