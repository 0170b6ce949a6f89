#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "levylab/coefficient_field.hpp"
#include "levylab/kernel_bundle.hpp"
#include "levylab/levy_measure.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/rng.hpp"
#include "levylab/vec.hpp"

namespace levylab {

// Thinning scheme: events arrive at rate Lambda = c_upper * nu(|z| >= eps);
// proposals carry z ~ q restricted to |z| >= eps, and are routed to a branch
// (or rejected as phantom) with probability d_i(z) / (c_upper q(z)).  Jumps
// below eps are replaced by their deterministic compensator drift; the
// quadratic bias proxy B(eps) = c_upper * int_{|z|<eps} |z|^2 q(z) dz is
// reported with every run.
struct SimParams {
  double jump_cutoff = 1e-2;   // eps
  double drift_step = 1e-3;    // Euler step of the compensator drift
  double horizon = 1.0;
  double kappa = 1.0;
  std::uint64_t master_seed = 12345;
  bool log_events = false;
  int threads = 0;  // 0 = hardware concurrency
};

enum class EventKind {
  kPhantom = 0,
  kMergeToward = 1,
  kReflect = 2,
  kSynchronous = 3,
  kFirstAlone = 4,
  kSecondAlone = 5,
  kSingleJump = 6,
};

struct JumpEvent {
  double time;
  EventKind kind;
  Vec z;
  Vec x_pre, y_pre;
  Vec x_post, y_post;
};

struct SinglePath {
  Vec endpoint;
  std::vector<JumpEvent> events;  // only when log_events
  std::vector<std::pair<double, Vec>> snapshots;
  std::uint64_t stream = 0;
  long proposals = 0;
};

struct CoupledPath {
  Vec x_end, y_end;
  std::optional<double> coupling_time;
  std::vector<JumpEvent> events;  // only when log_events
  std::vector<std::pair<double, std::pair<Vec, Vec>>> snapshots;
  std::uint64_t stream = 0;
  long proposals = 0;
};

// Total proposal rate c_upper * nu(|z| >= eps).
double event_rate(const LevyMeasureSpec& spec, const CoefficientField& field, double eps);

// Small-jump bias proxy B(eps).
double truncation_bias_proxy(const LevyMeasureSpec& spec, const CoefficientField& field,
                             double eps);

// Compensator drift split into the state factor c(x) and the cached vector
//   V = int_{eps <= |z| <= 1} z q(z) dz,
// so that drift(x) = -c(x) V.  V vanishes for isotropic measures; its radial
// factor is evaluated by quadrature once per (spec, eps).
class DriftModel {
 public:
  DriftModel(const LevyMeasureSpec& spec, const CoefficientField& field, double eps);
  bool is_zero() const { return zero_; }
  Vec operator()(const Vec& x) const;

 private:
  const CoefficientField* field_;
  Vec base_;
  bool zero_;
};

// drift(x) = -int_{eps<=|z|<=1} z c(x,z) q(z) dz for one x.
Vec compensator_drift(const LevyMeasureSpec& spec, const CoefficientField& field, const Vec& x,
                      double eps);

SinglePath simulate_single(const LevyMeasureSpec& spec, const CoefficientField& field,
                           const Vec& x0, const SimParams& params, std::uint64_t stream = 0,
                           const std::vector<double>& snapshot_times = {});

// Five-branch coupled pair.  The coupling time is the first merge-branch
// event fired from a state with |x-y| <= kappa (exact meeting, no
// threshold); afterwards a single merged trajectory is evolved and reported
// in both components.  With stop_at_coupling the merged segment is skipped
// and the remaining snapshots record the (equal) merge state.
CoupledPath simulate_coupled(const LevyMeasureSpec& spec, const CoefficientField& field,
                             const Vec& x0, const Vec& y0, const SimParams& params,
                             std::uint64_t stream = 0,
                             const std::vector<double>& snapshot_times = {},
                             bool stop_at_coupling = false);

}  // namespace levylab
