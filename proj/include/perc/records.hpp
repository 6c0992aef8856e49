// Flat result records and their CSV/JSON emission. One record per
// (statistic, n); numbers are rendered with full round-trip precision so
// identical runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "perc/geometry.hpp"

namespace perc {

struct ResultRecord {
    std::string model;  // "square-bond" or "triangular-site"
    double p = 0.5;
    long n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::string statistic;
    double mean = 0.0;
    double stderror = 0.0;
    long count = 0;  // accepted observations
    // statistic-specific named values, appended as extra columns in order
    std::vector<std::pair<std::string, std::string>> extra;
};

enum class OutputFormat { csv, json };

std::string model_name(ModelKind kind);
OutputFormat parse_format(const std::string& name);
std::string format_double(double value);  // shortest round-trip form

void emit(const std::vector<ResultRecord>& records, OutputFormat format,
          std::ostream& out);

// Parses CSV produced by emit (used by the fit subcommand and round-trip
// tests).
std::vector<ResultRecord> parse_csv_records(std::istream& in);

}  // namespace perc
