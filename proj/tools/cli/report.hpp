#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace levylab::cli {

struct CsvTable {
  std::string name;  // file stem suffix
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string body() const;
};

std::string csv_num(double v);
std::string csv_vec(const Vec& v);

struct ExperimentReport {
  std::string command;  // e.g. "check operator-identity"
  nlohmann::json summary;
  std::vector<CsvTable> tables;
  bool pass = true;
};

// Writes <stem>[-table].csv, <stem>-summary.json and <stem>-manifest.json
// into out_dir (atomically: temp file + rename).  CSV bodies and the summary
// depend only on computed values; the wall-clock timestamp lives in the
// manifest alone.  Returns the written paths.
std::vector<std::string> emit(const ExperimentReport& report, const Config& config,
                              const std::string& out_dir);

void write_atomic(const std::string& path, const std::string& content);

}  // namespace levylab::cli
