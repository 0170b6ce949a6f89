#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cli/experiments.hpp"

namespace {

using levylab::cli::Config;
using levylab::cli::ConfigError;

const char* alias_of(const std::string& flag) {
  static const std::pair<const char*, const char*> table[] = {
      {"--x0", "sim.x0"},       {"--y0", "sim.y0"},     {"--t", "sim.t"},
      {"--eps-sim", "sim.eps"}, {"--dt", "sim.dt"},     {"--kappa", "sim.kappa"},
      {"--n", "sim.n"},         {"--seed", "seed"},     {"--threads", "sim.threads"},
      {"--psi", "exp.psi"},     {"--theta", "exp.theta"},
  };
  for (const auto& [f, key] : table)
    if (flag == f) return key;
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::fputs(levylab::cli::usage_text().c_str(), stdout);
    return args.empty() ? 2 : 0;
  }

  std::vector<std::string> words;
  std::string config_path;
  std::string out_dir;
  std::vector<std::pair<std::string, std::string>> overrides;

  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--help" || a == "-h") {
        std::fputs(levylab::cli::usage_text().c_str(), stdout);
        return 0;
      }
      if (a == "--config") {
        if (++i >= args.size()) throw ConfigError("--config needs a file argument");
        config_path = args[i];
      } else if (a == "--out") {
        if (++i >= args.size()) throw ConfigError("--out needs a directory argument");
        out_dir = args[i];
      } else if (a == "--log-events") {
        overrides.emplace_back("sim.log-events", "true");
      } else if (a.rfind("--", 0) == 0) {
        const char* aliased = alias_of(a);
        const std::string key = aliased ? aliased : a.substr(2);
        if (++i >= args.size()) throw ConfigError(a + " needs a value");
        overrides.emplace_back(key, args[i]);
      } else {
        words.push_back(a);
      }
    }

    Config config = config_path.empty() ? Config::defaults() : Config::parse_file(config_path);
    for (const auto& [key, value] : overrides) config.set(key, value);
    if (out_dir.empty()) out_dir = config.str("out.dir");
    if (out_dir.empty()) {
      const char* env = std::getenv("LEVYLAB_OUT");
      out_dir = env && *env ? env : ".";
    }

    const auto report = levylab::cli::run_experiment(words, config);
    const auto files = levylab::cli::emit(report, config, out_dir);
    for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
    std::printf("%s: %s\n", report.command.c_str(), report.pass ? "pass" : "FAIL");
    return report.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const levylab::ToleranceNotMet& e) {
    std::fprintf(stderr, "numeric budget exhausted: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
