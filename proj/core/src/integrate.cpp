#include "lohe/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lohe {

int stages(Method m) noexcept { return m == Method::CF2 ? 2 : 1; }

const char* to_string(Method m) noexcept { return m == Method::CF2 ? "CF2" : "LieEuler"; }

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("StepperConfig: dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("StepperConfig: t_end must be > 0");
  if (dt > t_end) throw std::invalid_argument("StepperConfig: dt must not exceed t_end");
  if (record_every < 1) throw std::invalid_argument("StepperConfig: record_every must be >= 1");
  if (retract_every < 1) throw std::invalid_argument("StepperConfig: retract_every must be >= 1");
}

std::size_t StepperConfig::steps() const {
  const double ratio = t_end / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(rounded);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

double StepperConfig::time_of_step(std::size_t k) const {
  return k >= steps() ? t_end : static_cast<double>(k) * dt;
}

double StepperConfig::step_length(std::size_t k) const {
  return time_of_step(k + 1) - time_of_step(k);
}

GeneratorFn lohe_generator_fn() {
  return [](const Ensemble& e, const StageInfo&) { return lohe_generators(e); };
}

namespace {

std::vector<UnitaryMatrix> advance(const Ensemble& e, const std::vector<SkewHermitianMatrix>& gens,
                                   double h) {
  if (gens.size() != e.size()) throw std::logic_error("generator count does not match ensemble size");
  std::vector<UnitaryMatrix> next;
  next.reserve(e.size());
  for (std::size_t j = 0; j < e.size(); ++j) {
    next.push_back(UnitaryMatrix::unchecked(expm_skew(gens[j], h).matrix() * e[j].u.matrix()));
  }
  return next;
}

}  // namespace

Ensemble step(const Ensemble& e, double dt, const GeneratorFn& generators, Method method,
              std::size_t step_index, double t) {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be finite and nonzero");
  const auto g0 = generators(e, StageInfo{step_index, 0, t});
  if (method == Method::LieEuler) return e.with_states(advance(e, g0, dt));
  const Ensemble half = e.with_states(advance(e, g0, 0.5 * dt));
  const auto g1 = generators(half, StageInfo{step_index, 1, t + 0.5 * dt});
  return e.with_states(advance(e, g1, dt));
}

double max_unitarity_defect(const Ensemble& e) {
  double worst = 0.0;
  for (const auto& o : e.oscillators()) worst = std::max(worst, unitarity_defect(o.u.matrix()));
  return worst;
}

namespace {

Ensemble repair(const Ensemble& e, std::size_t step_index) {
  const double drift = max_unitarity_defect(e);
  if (drift > kDriftAbortTolerance) {
    std::ostringstream os;
    os << "integrate: unitarity drift " << drift << " at step " << step_index << " exceeds "
       << kDriftAbortTolerance;
    throw NumericError(os.str());
  }
  std::vector<UnitaryMatrix> states;
  states.reserve(e.size());
  for (const auto& o : e.oscillators()) states.push_back(retract_unitary(o.u.matrix()));
  return e.with_states(std::move(states));
}

}  // namespace

Trajectory integrate(const Ensemble& e0, const StepperConfig& cfg, const GeneratorFn& generators) {
  cfg.validate();
  const std::size_t n = cfg.steps();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(e0);
  Ensemble current = e0;
  for (std::size_t k = 0; k < n; ++k) {
    current = step(current, cfg.step_length(k), generators, cfg.method, k, cfg.time_of_step(k));
    const std::size_t done = k + 1;
    if (done % cfg.retract_every == 0) current = repair(current, done);
    if (done % cfg.record_every == 0 || done == n) {
      if (max_unitarity_defect(current) > kUnitaryTolerance) current = repair(current, done);
      traj.times.push_back(cfg.time_of_step(done));
      traj.snapshots.push_back(current);
    }
  }
  return traj;
}

Ensemble split_integrate(const Ensemble& e0, const StepperConfig& cfg) {
  const SkewHermitianMatrix& a = e0[0].a;
  for (const auto& o : e0.oscillators()) {
    if (!(o.a == a)) throw std::invalid_argument("split_integrate: splitting requires equal Hamiltonians");
  }
  const Ensemble free_of_rotation = e0.with_generators(SkewHermitianMatrix::zero(e0.dim()));
  const Trajectory coupled = integrate(free_of_rotation, cfg, lohe_generator_fn());
  const UnitaryMatrix rotation = expm_skew(a, cfg.t_end);
  std::vector<Oscillator> out;
  out.reserve(e0.size());
  for (const auto& w : coupled.back().oscillators()) {
    out.emplace_back(UnitaryMatrix::unchecked(rotation.matrix() * w.u.matrix()), a);
  }
  return Ensemble(std::move(out), e0.kappa());
}

}  // namespace lohe
