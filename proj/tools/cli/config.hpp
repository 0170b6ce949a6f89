#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/coefficient_field.hpp"
#include "levylab/levy_measure.hpp"
#include "levylab/perturbation.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/simulate.hpp"

namespace levylab::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { kReal, kInt, kBool, kString, kVector };

struct KeySpec {
  std::string name;
  ValueType type;
  std::string default_text;
  std::string doc;
};

// Flat `key = value` configuration with a closed key set, typed defaults and
// per-key validation.  Unknown keys are rejected with the offending name;
// serialize() emits the fully resolved state in canonical (sorted, full
// precision) form, so equal configs serialize to equal bytes.
class Config {
 public:
  static const std::vector<KeySpec>& registry();
  static Config defaults();
  // Parses `key = value` lines; '#' starts a comment.
  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

  void set(const std::string& key, const std::string& value_text);

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  const std::string& str(const std::string& key) const;
  std::vector<double> vec(const std::string& key) const;
  Vec vec_dim(const std::string& key, int dim) const;

  bool is_explicit(const std::string& key) const;
  std::string serialize() const;
  std::string content_hash() const;  // FNV-1a 64 over serialize()

  bool operator==(const Config& o) const { return values_ == o.values_; }

 private:
  const std::string& raw(const std::string& key) const;
  std::map<std::string, std::string> values_;    // canonical value text
  std::map<std::string, bool> explicit_;
};

// Materialization of domain objects; cross-field constraints are validated
// here and reported as ConfigError with the offending key.
LevyMeasureSpec make_measure(const Config& c);
CoefficientField make_field(const Config& c);
PerturbationKernel make_perturbation(const Config& c);
QuadratureConfig make_quad(const Config& c);
SimParams make_sim(const Config& c);

}  // namespace levylab::cli
