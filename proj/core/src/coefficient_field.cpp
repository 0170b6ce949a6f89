#include "levylab/coefficient_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CoefficientField CoefficientField::constant(int dim, double c0) {
  if (!(c0 > 0)) throw std::invalid_argument("coefficient: constant must be positive");
  CoefficientField f;
  f.family_ = CoeffFamily::kConstant;
  f.dim_ = dim;
  f.lower_ = f.upper_ = c0;
  f.params_ = {c0};
  return f;
}

CoefficientField CoefficientField::sinusoidal(int dim, double base, double swing) {
  if (!(base - std::abs(swing) > 0))
    throw std::invalid_argument("coefficient: sinusoidal family needs base > |swing|");
  CoefficientField f;
  f.family_ = CoeffFamily::kSinusoidal;
  f.dim_ = dim;
  f.lower_ = base - std::abs(swing);
  f.upper_ = base + std::abs(swing);
  f.params_ = {base, swing};
  return f;
}

CoefficientField CoefficientField::holder(int dim, double base, double swing, double beta) {
  if (!(beta > 0 && beta <= 1))
    throw std::invalid_argument("coefficient: holder family needs beta in (0,1]");
  if (!(base > 0) || swing < 0)
    throw std::invalid_argument("coefficient: holder family needs base > 0 and swing >= 0");
  CoefficientField f;
  f.family_ = CoeffFamily::kHolder;
  f.dim_ = dim;
  f.lower_ = base;
  f.upper_ = base + swing;
  f.params_ = {base, swing, beta};
  return f;
}

CoefficientField CoefficientField::table(int dim, std::vector<double> knots,
                                         std::vector<double> values) {
  if (knots.size() != values.size() || knots.size() < 2)
    throw std::invalid_argument("coefficient: table needs matching knot/value lists, >= 2 entries");
  if (!std::is_sorted(knots.begin(), knots.end()))
    throw std::invalid_argument("coefficient: table knots must be sorted");
  CoefficientField f;
  f.family_ = CoeffFamily::kTable;
  f.dim_ = dim;
  f.lower_ = *std::min_element(values.begin(), values.end());
  f.upper_ = *std::max_element(values.begin(), values.end());
  if (!(f.lower_ > 0)) throw std::invalid_argument("coefficient: table values must be positive");
  f.table_knots_ = std::move(knots);
  f.table_values_ = std::move(values);
  return f;
}

double CoefficientField::eval_state(const Vec& x) const {
  const double s = x[0];
  switch (family_) {
    case CoeffFamily::kConstant:
      return params_[0];
    case CoeffFamily::kSinusoidal:
      return params_[0] + params_[1] * std::sin(s);
    case CoeffFamily::kHolder:
      return params_[0] + params_[1] * std::pow(std::abs(std::sin(s)), params_[2]);
    case CoeffFamily::kTable: {
      const auto& t = table_knots_;
      const auto& v = table_values_;
      if (s <= t.front()) return v.front();
      if (s >= t.back()) return v.back();
      const auto it = std::upper_bound(t.begin(), t.end(), s);
      const std::size_t k = static_cast<std::size_t>(it - t.begin());
      const double w = (s - t[k - 1]) / (t[k] - t[k - 1]);
      return v[k - 1] + w * (v[k] - v[k - 1]);
    }
  }
  return params_[0];
}

std::optional<double> CoefficientField::oscillation(double r) const {
  if (!(r >= 0)) throw std::invalid_argument("oscillation: r must be nonnegative");
  switch (family_) {
    case CoeffFamily::kConstant:
      return 0.0;
    case CoeffFamily::kSinusoidal:
      // sup_{|s-s'|<=r} |sin s - sin s'| = 2 sin(r/2) for r <= pi, else 2.
      return std::abs(params_[1]) * (r >= kPi ? 2.0 : 2.0 * std::sin(r / 2.0));
    case CoeffFamily::kHolder:
      // sup ||sin(s+t)|^b - |sin s|^b| = sin(min(r, pi/2))^b; the sup of the
      // inner difference is sin t, and a^b - c^b <= (a-c)^b for b <= 1.
      return params_[1] * std::pow(std::sin(std::min(r, kPi / 2.0)), params_[2]);
    case CoeffFamily::kTable:
      return std::nullopt;
  }
  return std::nullopt;
}

double CoefficientField::sampled_oscillation(double r, int samples) const {
  double lo = 0.0, hi = 2.0 * kPi;
  if (family_ == CoeffFamily::kTable) {
    lo = table_knots_.front() - r;
    hi = table_knots_.back() + r;
  }
  double best = 0.0;
  Vec x(dim_), y(dim_);
  for (int i = 0; i < samples; ++i) {
    const double s = lo + (hi - lo) * (i + 0.5) / samples;
    x[0] = s;
    y[0] = s + r;
    best = std::max(best, std::abs(eval_state(x) - eval_state(y)));
  }
  return best;
}

double coeff4(const CoefficientField& c, const Vec& x, const Vec& y, const Vec& u, const Vec& z) {
  const Vec zu = z - u;
  const double a = std::min(c(x, z), c(y, z));
  const double b = std::min(c(x, zu), c(y, zu));
  return std::min(a, b);
}

}  // namespace levylab
