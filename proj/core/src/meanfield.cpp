#include "lohe/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lohe {

void FieldTrajectory::validate() const {
  if (means.size() != times.size()) throw std::invalid_argument("FieldTrajectory: times/means length mismatch");
  for (std::size_t k = 0; k < means.size(); ++k) {
    const double norm = operator_norm(means[k]);
    if (norm > 1.0 + 1e-10) {
      std::ostringstream os;
      os << "FieldTrajectory: |<U>| = " << norm << " > 1 at entry " << k;
      throw NumericError(os.str());
    }
  }
}

ReferenceRun reference_field(const Ensemble& e0_p, const StepperConfig& cfg) {
  cfg.validate();
  ReferenceRun out;
  FieldTrajectory& field = out.field;
  field.method = cfg.method;
  field.dt = cfg.dt;
  field.t_end = cfg.t_end;
  field.kappa = e0_p.kappa();
  field.d = e0_p.dim();
  const std::size_t expected = cfg.steps() * static_cast<std::size_t>(stages(cfg.method)) + 1;
  field.times.reserve(expected);
  field.means.reserve(expected);

  GeneratorFn recorder = [&field](const Ensemble& e, const StageInfo& info) {
    ComplexMatrix mean = centroid(e.oscillators());
    std::vector<SkewHermitianMatrix> gens;
    gens.reserve(e.size());
    for (const auto& o : e.oscillators()) gens.push_back(frozen_field_generator(o, mean, e.kappa()));
    field.times.push_back(info.time);
    field.means.push_back(std::move(mean));
    return gens;
  };
  out.trajectory = integrate(e0_p, cfg, recorder);
  field.times.push_back(cfg.t_end);
  field.means.push_back(centroid(out.trajectory.back().oscillators()));
  if (field.means.size() != expected) throw std::logic_error("reference_field: unexpected stage count");
  field.validate();
  return out;
}

namespace {

void require_matching_grid(const FieldTrajectory& field, const StepperConfig& cfg) {
  const std::size_t expected = cfg.steps() * static_cast<std::size_t>(stages(cfg.method)) + 1;
  if (cfg.method != field.method || cfg.dt != field.dt || cfg.t_end != field.t_end ||
      field.means.size() != expected) {
    throw std::invalid_argument(
        "flow_characteristics: grid mismatch (stepper must use the field's method, dt and t_end)");
  }
}

}  // namespace

Trajectory flow_characteristics(const std::vector<Oscillator>& initials, const FieldTrajectory& field,
                                const StepperConfig& cfg) {
  cfg.validate();
  require_matching_grid(field, cfg);
  const Ensemble e0(initials, field.kappa);
  if (e0.dim() != field.d) throw DimensionError("flow_characteristics: field and particles differ in dimension");
  const auto per_step = static_cast<std::size_t>(stages(cfg.method));
  GeneratorFn frozen = [&field, per_step](const Ensemble& e, const StageInfo& info) {
    const ComplexMatrix& mean = field.means.at(info.step * per_step + static_cast<std::size_t>(info.stage));
    std::vector<SkewHermitianMatrix> gens;
    gens.reserve(e.size());
    for (const auto& o : e.oscillators()) gens.push_back(frozen_field_generator(o, mean, e.kappa()));
    return gens;
  };
  return integrate(e0, cfg, frozen);
}

CoupledRun run_coupled(const std::vector<Oscillator>& initials, const FieldTrajectory& field,
                       const StepperConfig& cfg) {
  CoupledRun run;
  run.characteristic = flow_characteristics(initials, field, cfg);
  run.interacting = integrate(Ensemble(initials, field.kappa), cfg, lohe_generator_fn());
  return run;
}

DiagnosticSeries jn_series(const CoupledRun& run) {
  const Trajectory& a = run.characteristic;
  const Trajectory& b = run.interacting;
  if (a.times != b.times) throw std::invalid_argument("jn_series: runs are recorded on different grids");
  std::vector<double> jn;
  jn.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Ensemble& ea = a.snapshots[k];
    const Ensemble& eb = b.snapshots[k];
    if (ea.size() != eb.size()) throw std::invalid_argument("jn_series: runs differ in N");
    double sum = 0.0;
    for (std::size_t j = 0; j < ea.size(); ++j) {
      sum += (ea[j].u.matrix() - eb[j].u.matrix()).squaredNorm() +
             (ea[j].a.matrix() - eb[j].a.matrix()).squaredNorm();
    }
    jn.push_back(sum / static_cast<double>(ea.size()));
  }
  DiagnosticSeries out(a.times);
  out.set("JN", std::move(jn));
  return out;
}

Trajectory gauge_transform(const Trajectory& traj, const SkewHermitianMatrix& a0) {
  Trajectory out;
  out.times = traj.times;
  out.snapshots.reserve(traj.size());
  const SkewHermitianMatrix zero = SkewHermitianMatrix::zero(a0.dim());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Ensemble& e = traj.snapshots[k];
    const ComplexMatrix back = expm_skew(a0, -traj.times[k]).matrix();
    std::vector<Oscillator> osc;
    osc.reserve(e.size());
    for (const auto& o : e.oscillators()) {
      if (!(o.a == a0)) throw std::invalid_argument("gauge_transform: oscillators carry mixed generators");
      osc.emplace_back(UnitaryMatrix::unchecked(back * o.u.matrix()), zero);
    }
    out.snapshots.emplace_back(std::move(osc), e.kappa());
  }
  return out;
}

FluctuationEstimate field_fluctuation_bound_check(Rng& rng, int d, std::size_t n, std::size_t samples) {
  if (d < 1) throw DimensionError("field_fluctuation_bound_check: d must be >= 1");
  if (n < 1) throw std::invalid_argument("field_fluctuation_bound_check: N must be >= 1");
  if (samples < 2) throw std::invalid_argument("field_fluctuation_bound_check: need at least 2 samples");
  FluctuationEstimate out;
  out.samples = samples;
  const double nd = static_cast<double>(n);
  out.bound = 16.0 * d / nd;
  out.exact = 2.0 * d * (nd - 1.0) / (nd * nd);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const UnitaryMatrix u1 = sample_haar(rng, d);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 1; k < n; ++k) {
      const UnitaryMatrix uk = sample_haar(rng, d);
      const ComplexMatrix v = -coupling_kernel(uk, u1).matrix();
      out.max_v_norm = std::max(out.max_v_norm, v.norm());
      sum += v;
    }
    const double value = (sum / nd).squaredNorm();
    // Welford update.
    const double delta = value - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (value - mean);
  }
  out.estimate = mean;
  out.standard_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return out;
}

}  // namespace lohe
