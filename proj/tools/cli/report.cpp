#include "cli/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace levylab::cli {

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.dim; ++i) {
    if (i) s += ";";
    s += csv_num(v[i]);
  }
  return s;
}

std::string CsvTable::body() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ",";
    out += columns[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string> emit(const ExperimentReport& report, const Config& config,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::string stem = report.command;
  for (char& ch : stem)
    if (ch == ' ') ch = '-';

  std::vector<std::string> written;
  for (const auto& table : report.tables) {
    std::string name = stem;
    if (!table.name.empty()) name += "-" + table.name;
    const std::string path = (fs::path(out_dir) / (name + ".csv")).string();
    write_atomic(path, table.body());
    written.push_back(path);
  }

  nlohmann::json summary = report.summary;
  summary["command"] = report.command;
  summary["pass"] = report.pass;
  const std::string sum_path = (fs::path(out_dir) / (stem + "-summary.json")).string();
  write_atomic(sum_path, summary.dump(2) + "\n");
  written.push_back(sum_path);

  nlohmann::json manifest;
  manifest["command"] = report.command;
  manifest["config_hash"] = config.content_hash();
  nlohmann::json cfg_json;
  for (const auto& key : Config::registry()) {
    cfg_json[key.name] = {{"value", config.str(key.name)},
                          {"explicit", config.is_explicit(key.name)}};
  }
  manifest["config"] = cfg_json;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& p : written) outs.push_back(fs::path(p).filename().string());
  manifest["outputs"] = outs;
  const auto now = std::chrono::system_clock::now();
  manifest["written_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  const std::string man_path = (fs::path(out_dir) / (stem + "-manifest.json")).string();
  write_atomic(man_path, manifest.dump(2) + "\n");
  written.push_back(man_path);
  return written;
}

}  // namespace levylab::cli
