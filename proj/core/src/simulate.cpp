#include "levylab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(const LevyMeasureSpec& spec, const SimParams& p) {
  if (!(p.jump_cutoff > 0 && p.jump_cutoff < 1))
    throw std::invalid_argument("simulate: jump cutoff must lie in (0,1)");
  if (!(p.jump_cutoff < spec.support_radius()))
    throw std::invalid_argument("simulate: jump cutoff exceeds the support radius");
  if (!(p.drift_step > 0)) throw std::invalid_argument("simulate: drift step must be positive");
  if (!(p.horizon >= 0)) throw std::invalid_argument("simulate: horizon must be nonnegative");
  if (!(p.kappa > 0 && p.kappa <= 1))
    throw std::invalid_argument("simulate: kappa must lie in (0,1]");
}

void check_rate_budget(double lambda, double horizon) {
  if (lambda * horizon > 5e8)
    throw std::invalid_argument(
        "simulate: event budget exceeded (Lambda * horizon too large); raise the jump cutoff");
}

}  // namespace

double event_rate(const LevyMeasureSpec& spec, const CoefficientField& field, double eps) {
  return field.upper() * spec.tail_mass(eps);
}

double truncation_bias_proxy(const LevyMeasureSpec& spec, const CoefficientField& field,
                             double eps) {
  return field.upper() * spec.ball_abs_moment(2.0, eps);
}

DriftModel::DriftModel(const LevyMeasureSpec& spec, const CoefficientField& field, double eps)
    : field_(&field), base_(zero_vec(spec.dim())), zero_(true) {
  if (!field.state_only())
    throw std::invalid_argument("DriftModel: needs a state-only coefficient");
  if (spec.isotropic()) return;
  // V = amplitude * (int_eps^min(1,R) rho^-alpha drho) * direction moment;
  // radial factor by line quadrature.
  const double hi = std::min(1.0, spec.support_radius());
  if (!(hi > eps)) return;
  const auto f = [&](double rho) { return std::pow(rho, -spec.alpha()); };
  IntegralResult radial = adaptive_line(f, eps, hi, {}, 1e-12, 1e-14, 4000);
  base_ = (spec.amplitude() * radial.value) * spec.direction_moment();
  zero_ = norm(base_) == 0.0;
}

Vec DriftModel::operator()(const Vec& x) const {
  if (zero_) return base_;
  return -field_->eval_state(x) * base_;
}

Vec compensator_drift(const LevyMeasureSpec& spec, const CoefficientField& field, const Vec& x,
                      double eps) {
  return DriftModel(spec, field, eps)(x);
}

namespace {

// Walks t forward to `target`, applying Euler drift steps and recording any
// snapshot times crossed on the way.  `record` is called exactly at each
// snapshot time.
template <typename State, typename DriftFn, typename RecordFn>
void advance(double& t, double target, State& state, const DriftFn& drift, double step,
             const std::vector<double>& snaps, std::size_t& snap_idx, const RecordFn& record,
             bool drifting) {
  while (true) {
    double stop = target;
    bool is_snap = false;
    if (snap_idx < snaps.size() && snaps[snap_idx] <= target) {
      stop = snaps[snap_idx];
      is_snap = true;
    }
    if (drifting) {
      while (t < stop) {
        const double dt = std::min(step, stop - t);
        drift(state, dt);
        t += dt;
      }
    }
    t = stop;
    if (is_snap) {
      record(state);
      ++snap_idx;
      continue;
    }
    break;
  }
}

}  // namespace

SinglePath simulate_single(const LevyMeasureSpec& spec, const CoefficientField& field,
                           const Vec& x0, const SimParams& params, std::uint64_t stream,
                           const std::vector<double>& snapshot_times) {
  check_params(spec, params);
  const double lambda = event_rate(spec, field, params.jump_cutoff);
  check_rate_budget(lambda, params.horizon);
  const double cstar = field.upper();
  const DriftModel drift(spec, field, params.jump_cutoff);

  SinglePath path;
  path.stream = stream;
  Philox4x32 rng(params.master_seed, stream);

  Vec x = x0;
  double t = 0.0;
  std::size_t snap_idx = 0;
  const bool drifting = !drift.is_zero();
  const auto drift_step = [&](Vec& s, double dt) { s += dt * drift(s); };
  const auto record = [&](const Vec& s) { path.snapshots.emplace_back(t, s); };

  double next_event = lambda > 0 ? exponential_draw(rng) / lambda : kInf;
  while (next_event < params.horizon) {
    advance(t, next_event, x, drift_step, params.drift_step, snapshot_times, snap_idx, record,
            drifting);
    ++path.proposals;
    const Vec z = spec.sample_restricted(rng, params.jump_cutoff);
    const double accept = field(x, z) / cstar;
    const double u = uniform01(rng);
    if (u < accept) {
      if (params.log_events)
        path.events.push_back({t, EventKind::kSingleJump, z, x, x, x + z, x + z});
      x += z;
    } else if (params.log_events) {
      path.events.push_back({t, EventKind::kPhantom, z, x, x, x, x});
    }
    next_event = t + exponential_draw(rng) / lambda;
  }
  advance(t, params.horizon, x, drift_step, params.drift_step, snapshot_times, snap_idx, record,
          drifting);
  path.endpoint = x;
  return path;
}

CoupledPath simulate_coupled(const LevyMeasureSpec& spec, const CoefficientField& field,
                             const Vec& x0, const Vec& y0, const SimParams& params,
                             std::uint64_t stream, const std::vector<double>& snapshot_times,
                             bool stop_at_coupling) {
  check_params(spec, params);
  const double lambda = event_rate(spec, field, params.jump_cutoff);
  check_rate_budget(lambda, params.horizon);
  const double cstar = field.upper();
  const DriftModel drift(spec, field, params.jump_cutoff);

  CoupledPath path;
  path.stream = stream;
  Philox4x32 rng(params.master_seed, stream);

  struct PairState {
    Vec x, y;
  };
  PairState s{x0, y0};
  bool coupled = (x0 == y0);
  if (coupled) path.coupling_time = 0.0;

  double t = 0.0;
  std::size_t snap_idx = 0;
  const bool drifting = !drift.is_zero();
  const auto drift_step = [&](PairState& p, double dt) {
    if (coupled) {
      p.x += dt * drift(p.x);
      p.y = p.x;
    } else {
      p.x += dt * drift(p.x);
      p.y += dt * drift(p.y);
    }
  };
  const auto record = [&](const PairState& p) { path.snapshots.emplace_back(t, std::make_pair(p.x, p.y)); };

  const auto log_event = [&](EventKind kind, const Vec& z, const PairState& pre,
                             const PairState& post) {
    if (params.log_events) path.events.push_back({t, kind, z, pre.x, pre.y, post.x, post.y});
  };

  double next_event = lambda > 0 ? exponential_draw(rng) / lambda : kInf;
  while (next_event < params.horizon) {
    if (coupled && stop_at_coupling) break;
    advance(t, next_event, s, drift_step, params.drift_step, snapshot_times, snap_idx, record,
            drifting);
    ++path.proposals;
    const Vec z = spec.sample_restricted(rng, params.jump_cutoff);
    const double u = uniform01(rng);

    if (coupled) {
      // Merged trajectory: plain thinning on the single generator.
      const double accept = field(s.x, z) / cstar;
      const PairState pre = s;
      if (u < accept) {
        s.x += z;
        s.y = s.x;
        log_event(EventKind::kSingleJump, z, pre, s);
      } else {
        log_event(EventKind::kPhantom, z, pre, s);
      }
    } else {
      const KernelBundle bundle(spec, field, s.x, s.y, params.kappa);
      const auto ratios = bundle.branch_ratios(z);
      const double total = ratios[0] + ratios[1] + ratios[2] + ratios[3] + ratios[4];
      if (total > 1.0 + 1e-9)
        throw std::logic_error("simulate_coupled: branch probabilities exceed the envelope");
      const PairState pre = s;
      double acc = 0.0;
      int branch = 0;
      for (int i = 0; i < 5; ++i) {
        acc += ratios[i];
        if (u < acc) {
          branch = i + 1;
          break;
        }
      }
      switch (branch) {
        case 1: {
          const double r = norm(pre.x - pre.y);
          if (r <= params.kappa) {
            s.x += z;
            s.y = s.x;
            coupled = true;
            path.coupling_time = t;
          } else {
            s.x += z;
            s.y += z + bundle.u_away();
          }
          log_event(EventKind::kMergeToward, z, pre, s);
          break;
        }
        case 2:
          s.x += z;
          s.y += z + bundle.u_toward();
          log_event(EventKind::kReflect, z, pre, s);
          break;
        case 3:
          s.x += z;
          s.y += z;
          log_event(EventKind::kSynchronous, z, pre, s);
          break;
        case 4:
          s.x += z;
          log_event(EventKind::kFirstAlone, z, pre, s);
          break;
        case 5:
          s.y += z;
          log_event(EventKind::kSecondAlone, z, pre, s);
          break;
        default:
          log_event(EventKind::kPhantom, z, pre, s);
          break;
      }
      if (!coupled && s.x == s.y) {
        // Exact meeting through another branch (possible but null-measure).
        coupled = true;
        path.coupling_time = t;
      }
    }
    next_event = t + exponential_draw(rng) / lambda;
  }

  if (coupled && stop_at_coupling) {
    // Remaining snapshots see the frozen merge state; only differences (all
    // zero from here on) are meaningful to callers that stop at coupling.
    while (snap_idx < snapshot_times.size()) {
      t = snapshot_times[snap_idx];
      record(s);
      ++snap_idx;
    }
    t = params.horizon;
  } else {
    advance(t, params.horizon, s, drift_step, params.drift_step, snapshot_times, snap_idx, record,
            drifting);
  }
  path.x_end = s.x;
  path.y_end = s.y;
  return path;
}

}  // namespace levylab
