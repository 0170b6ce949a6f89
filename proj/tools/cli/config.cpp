#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace levylab::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(key + ": expected a real number, got '" + text + "'");
  }
}

long parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(trim(text), &used, 10);
    if (used != trim(text).size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

std::vector<double> parse_vector(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::string t = trim(text);
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
  return out;
}

std::string canonical_value(const std::string& key, ValueType type, const std::string& text) {
  switch (type) {
    case ValueType::kReal: return format_real(parse_real(key, text));
    case ValueType::kInt: return std::to_string(parse_int(key, text));
    case ValueType::kBool: return parse_bool(key, text) ? "true" : "false";
    case ValueType::kString: return trim(text);
    case ValueType::kVector: {
      const auto v = parse_vector(key, text);
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_real(v[i]);
      }
      return s;
    }
  }
  return text;
}

void check_in(const std::string& key, const std::string& value,
              std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string msg = key + ": '" + value + "' is not one of {";
  bool first = true;
  for (const char* a : allowed) {
    if (!first) msg += ", ";
    msg += a;
    first = false;
  }
  throw ConfigError(msg + "}");
}

void validate_key(const std::string& key, ValueType type, const std::string& canonical) {
  const auto real_of = [&] { return parse_real(key, canonical); };
  const auto int_of = [&] { return parse_int(key, canonical); };
  if (key == "dimension") {
    if (int_of() < 1 || int_of() > kMaxDim)
      throw ConfigError("dimension: must lie in [1, " + std::to_string(kMaxDim) + "]");
  } else if (key == "levy.family") {
    check_in(key, canonical, {"homogeneous-stable", "truncated-stable", "cone-stable"});
  } else if (key == "levy.alpha" || key == "pert.alpha") {
    if (!(real_of() > 0.0 && real_of() < 2.0)) throw ConfigError(key + ": must lie in (0,2)");
  } else if (key == "levy.amplitude" || key == "pert.amplitude") {
    if (!(real_of() > 0.0)) throw ConfigError(key + ": must be positive");
  } else if (key == "levy.truncation" || key == "pert.truncation") {
    if (!(real_of() > 0.0)) throw ConfigError(key + ": must be positive (or inf)");
  } else if (key == "levy.cone.delta") {
    if (!(real_of() > 0.0 && real_of() < 1.0)) throw ConfigError(key + ": must lie in (0,1)");
  } else if (key == "coeff.family") {
    check_in(key, canonical,
             {"constant", "separable-sinusoidal", "separable-holder", "user-table"});
  } else if (key == "coeff.clower") {
    if (!(real_of() > 0.0)) throw ConfigError(key + ": must be positive");
  } else if (key == "pert.family") {
    check_in(key, canonical, {"none", "separable-cosine", "x-independent"});
  } else if (key == "quad.tol") {
    if (!(real_of() > 0.0 && real_of() <= 1e-2))
      throw ConfigError(key + ": must lie in (0, 1e-2]");
  } else if (key == "quad.eps" || key == "quad.abstol") {
    if (!(real_of() >= 0.0)) throw ConfigError(key + ": must be nonnegative");
  } else if (key == "quad.maxsubdiv" || key == "quad.directions" || key == "sim.n" ||
             key == "exp.points" || key == "exp.pairs" || key == "exp.grid") {
    if (!(int_of() > 0)) throw ConfigError(key + ": must be positive");
  } else if (key == "sim.eps") {
    if (!(real_of() > 0.0 && real_of() < 1.0)) throw ConfigError(key + ": must lie in (0,1)");
  } else if (key == "sim.dt") {
    if (!(real_of() > 0.0)) throw ConfigError(key + ": must be positive");
  } else if (key == "sim.t") {
    if (!(real_of() >= 0.0)) throw ConfigError(key + ": must be nonnegative");
  } else if (key == "sim.kappa") {
    if (!(real_of() > 0.0 && real_of() <= 1.0)) throw ConfigError(key + ": must lie in (0,1]");
  } else if (key == "sim.threads") {
    if (int_of() < 0) throw ConfigError(key + ": must be nonnegative");
  } else if (key == "exp.p") {
    if (int_of() != 1 && int_of() != 2) throw ConfigError(key + ": must be 1 or 2");
  } else if (key == "exp.psi") {
    check_in(key, canonical, {"power", "log-weighted", "lip-log"});
  } else if (key == "exp.theta" || key == "exp.rtol" || key == "exp.slope-tol" ||
             key == "exp.eps0" || key == "exp.eps" || key == "exp.r-min" || key == "exp.r-max") {
    if (!(real_of() > 0.0)) throw ConfigError(key + ": must be positive");
  } else if (key == "exp.f") {
    check_in(key, canonical, {"gaussian", "cauchy", "cosine"});
  }
  (void)type;
}

}  // namespace

const std::vector<KeySpec>& Config::registry() {
  static const std::vector<KeySpec> keys = {
      {"dimension", ValueType::kInt, "1", "state dimension"},
      {"levy.family", ValueType::kString, "truncated-stable",
       "homogeneous-stable | truncated-stable | cone-stable"},
      {"levy.alpha", ValueType::kReal, "1.5", "stability index in (0,2)"},
      {"levy.amplitude", ValueType::kReal, "1", "density amplitude"},
      {"levy.truncation", ValueType::kReal, "1", "support radius (inf allowed)"},
      {"levy.cone.xi", ValueType::kVector, "1", "cone axis (cone-stable)"},
      {"levy.cone.delta", ValueType::kReal, "0.5", "cone aperture parameter in (0,1)"},
      {"coeff.family", ValueType::kString, "separable-sinusoidal",
       "constant | separable-sinusoidal | separable-holder | user-table"},
      {"coeff.params", ValueType::kVector, "2,1", "family parameters"},
      {"coeff.clower", ValueType::kReal, "1", "declared lower coefficient bound"},
      {"coeff.cupper", ValueType::kReal, "3", "declared upper coefficient bound"},
      {"pert.family", ValueType::kString, "none",
       "none | separable-cosine | x-independent"},
      {"pert.params", ValueType::kVector, "1,1", "state factor parameters"},
      {"pert.alpha", ValueType::kReal, "0.5", "perturbation stability index"},
      {"pert.amplitude", ValueType::kReal, "1", "perturbation amplitude"},
      {"pert.truncation", ValueType::kReal, "1", "perturbation support radius"},
      {"quad.eps", ValueType::kReal, "0", "shell radius (0 = auto)"},
      {"quad.tol", ValueType::kReal, "1e-8", "relative quadrature tolerance"},
      {"quad.abstol", ValueType::kReal, "0", "absolute tolerance (0 = quad.tol)"},
      {"quad.maxsubdiv", ValueType::kInt, "60000", "panel budget per integral"},
      {"quad.tail", ValueType::kReal, "1e8", "radial cut cap for unbounded supports"},
      {"quad.directions", ValueType::kInt, "16", "direction panel for sphere infima"},
      {"sim.eps", ValueType::kReal, "1e-2", "jump cutoff"},
      {"sim.dt", ValueType::kReal, "1e-3", "compensator Euler step"},
      {"sim.t", ValueType::kReal, "1", "horizon"},
      {"sim.kappa", ValueType::kReal, "1", "coupling clip radius in (0,1]"},
      {"sim.n", ValueType::kInt, "1000", "trajectory count"},
      {"sim.x0", ValueType::kVector, "0", "first start point"},
      {"sim.y0", ValueType::kVector, "0.05", "second start point"},
      {"sim.log-events", ValueType::kBool, "false", "emit per-event CSV"},
      {"sim.threads", ValueType::kInt, "0", "worker threads (0 = hardware)"},
      {"seed", ValueType::kInt, "12345", "master seed"},
      {"out.dir", ValueType::kString, "", "output directory (empty = $LEVYLAB_OUT or .)"},
      {"exp.p", ValueType::kInt, "2", "modulus weight exponent"},
      {"exp.psi", ValueType::kString, "power", "power | log-weighted | lip-log"},
      {"exp.theta", ValueType::kReal, "0.5", "profile parameter"},
      {"exp.r-min", ValueType::kReal, "1e-3", "grid lower endpoint"},
      {"exp.r-max", ValueType::kReal, "1e-1", "grid upper endpoint"},
      {"exp.points", ValueType::kInt, "12", "grid size"},
      {"exp.t-grid", ValueType::kVector, "0.05,0.1,0.2,0.4,0.8", "estimator time grid"},
      {"exp.pairs", ValueType::kInt, "20", "sampled pair/state count"},
      {"exp.c1", ValueType::kReal, "1", "drift condition constant c1"},
      {"exp.c2", ValueType::kReal, "-1", "drift constant c2 (<0 = default tail constant)"},
      {"exp.eps0", ValueType::kReal, "0.05", "bound-margin radius cap"},
      {"exp.eps", ValueType::kReal, "0.01", "contraction-rate grid endpoint"},
      {"exp.grid", ValueType::kInt, "50", "drift grid size"},
      {"exp.rtol", ValueType::kReal, "1e-6", "verdict tolerance"},
      {"exp.slope-tol", ValueType::kReal, "0.25", "rate-slope tolerance"},
      {"exp.alpha1", ValueType::kReal, "0", "rate exponent source (0 = levy.alpha)"},
      {"exp.f", ValueType::kString, "gaussian", "gaussian | cauchy | cosine"},
      {"exp.direction", ValueType::kVector, "1", "projection direction for KS"},
  };
  return keys;
}

Config Config::defaults() {
  Config c;
  for (const auto& k : registry()) {
    c.values_[k.name] = canonical_value(k.name, k.type, k.default_text);
    c.explicit_[k.name] = false;
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value_text) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(),
                               [&](const KeySpec& k) { return k.name == key; });
  if (it == reg.end()) throw ConfigError("unknown key '" + key + "'");
  const std::string canonical = canonical_value(key, it->type, value_text);
  validate_key(key, it->type, canonical);
  values_[key] = canonical;
  explicit_[key] = true;
}

Config Config::parse_text(const std::string& text) {
  Config c = defaults();
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

const std::string& Config::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

double Config::real(const std::string& key) const { return parse_real(key, raw(key)); }
long Config::integer(const std::string& key) const { return parse_int(key, raw(key)); }
bool Config::boolean(const std::string& key) const { return parse_bool(key, raw(key)); }
const std::string& Config::str(const std::string& key) const { return raw(key); }
std::vector<double> Config::vec(const std::string& key) const {
  return parse_vector(key, raw(key));
}

Vec Config::vec_dim(const std::string& key, int dim) const {
  const auto v = vec(key);
  Vec out(dim);
  if (v.size() == 1 && dim > 1) {
    out[0] = v[0];
    return out;
  }
  if (static_cast<int>(v.size()) != dim)
    throw ConfigError(key + ": expected " + std::to_string(dim) + " components");
  for (int i = 0; i < dim; ++i) out[i] = v[static_cast<std::size_t>(i)];
  return out;
}

bool Config::is_explicit(const std::string& key) const {
  const auto it = explicit_.find(key);
  return it != explicit_.end() && it->second;
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

std::string Config::content_hash() const {
  const std::string s = serialize();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

LevyMeasureSpec make_measure(const Config& c) {
  const int d = static_cast<int>(c.integer("dimension"));
  const double alpha = c.real("levy.alpha");
  const double amp = c.real("levy.amplitude");
  const std::string& fam = c.str("levy.family");
  if (fam == "homogeneous-stable") return LevyMeasureSpec::homogeneous(d, alpha, amp);
  if (fam == "truncated-stable") {
    const double r = c.real("levy.truncation");
    if (!std::isfinite(r))
      throw ConfigError("levy.truncation: must be finite for truncated-stable");
    return LevyMeasureSpec::truncated(d, alpha, amp, r);
  }
  return LevyMeasureSpec::cone(d, alpha, amp, c.vec_dim("levy.cone.xi", d),
                               c.real("levy.cone.delta"));
}

CoefficientField make_field(const Config& c) {
  const int d = static_cast<int>(c.integer("dimension"));
  const auto params = c.vec("coeff.params");
  const std::string& fam = c.str("coeff.family");
  CoefficientField field = CoefficientField::constant(d, 1.0);
  try {
    if (fam == "constant") {
      if (params.size() != 1) throw ConfigError("coeff.params: constant family needs [c0]");
      field = CoefficientField::constant(d, params[0]);
    } else if (fam == "separable-sinusoidal") {
      if (params.size() != 2)
        throw ConfigError("coeff.params: sinusoidal family needs [base, swing]");
      field = CoefficientField::sinusoidal(d, params[0], params[1]);
    } else if (fam == "separable-holder") {
      if (params.size() != 3)
        throw ConfigError("coeff.params: holder family needs [base, swing, beta]");
      field = CoefficientField::holder(d, params[0], params[1], params[2]);
    } else {
      if (params.size() < 4 || params.size() % 2 != 0)
        throw ConfigError("coeff.params: user-table needs knot/value pairs");
      std::vector<double> knots, vals;
      for (std::size_t i = 0; i < params.size(); i += 2) {
        knots.push_back(params[i]);
        vals.push_back(params[i + 1]);
      }
      field = CoefficientField::table(d, std::move(knots), std::move(vals));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("coeff.params: ") + e.what());
  }
  const double lo = c.real("coeff.clower");
  const double hi = c.real("coeff.cupper");
  if (field.lower() < lo - 1e-12 || field.upper() > hi + 1e-12)
    throw ConfigError("coeff.clower/coeff.cupper: declared bounds do not contain the family range");
  return field;
}

PerturbationKernel make_perturbation(const Config& c) {
  const int d = static_cast<int>(c.integer("dimension"));
  const std::string& fam = c.str("pert.family");
  if (fam == "none") return PerturbationKernel::none(d);
  const auto params = c.vec("pert.params");
  try {
    if (fam == "separable-cosine") {
      if (params.size() != 2)
        throw ConfigError("pert.params: separable-cosine needs [base, swing]");
      return PerturbationKernel::cosine(d, params[0], params[1], c.real("pert.alpha"),
                                        c.real("pert.amplitude"), c.real("pert.truncation"));
    }
    if (params.size() != 1) throw ConfigError("pert.params: x-independent needs [g]");
    return PerturbationKernel::state_independent(d, params[0], c.real("pert.alpha"),
                                                 c.real("pert.amplitude"),
                                                 c.real("pert.truncation"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("pert.params: ") + e.what());
  }
}

QuadratureConfig make_quad(const Config& c) {
  QuadratureConfig q;
  q.rel_tol = c.real("quad.tol");
  const double abstol = c.real("quad.abstol");
  q.abs_tol = abstol > 0 ? abstol : q.rel_tol;
  q.shell_radius = c.real("quad.eps");
  q.max_panels = static_cast<int>(c.integer("quad.maxsubdiv"));
  q.inner_max_panels = std::max(2000, q.max_panels / 10);
  q.tail_cap = c.real("quad.tail");
  q.direction_grid = static_cast<int>(c.integer("quad.directions"));
  return q;
}

SimParams make_sim(const Config& c) {
  SimParams p;
  p.jump_cutoff = c.real("sim.eps");
  p.drift_step = c.real("sim.dt");
  p.horizon = c.real("sim.t");
  p.kappa = c.real("sim.kappa");
  p.master_seed = static_cast<std::uint64_t>(c.integer("seed"));
  p.log_events = c.boolean("sim.log-events");
  p.threads = static_cast<int>(c.integer("sim.threads"));
  return p;
}

}  // namespace levylab::cli
