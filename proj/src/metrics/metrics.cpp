#include "trispin/metrics/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "trispin/engine/engine.hpp"
#include "trispin/spin/operators.hpp"

namespace trispin::metrics {

using sequences::Variant;
using spin::Axis;

double transfer_efficiency(const engine::DensityOperator& rho_final) {
  const ComplexMatrix i1x = spin::spin_operator(1, Axis::x);
  const ComplexMatrix i3x = spin::spin_operator(3, Axis::x);
  return rho_final.project(i3x) / linalg::inner_product(i1x, i1x).real();
}

double fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (!u.is_square() || u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("fidelity: operands must be square matrices of equal size");
  }
  if (u.rows() == 0) throw std::invalid_argument("fidelity: empty matrices");
  return std::abs(linalg::inner_product(u, v)) / static_cast<double>(u.rows());
}

std::vector<EtaPoint> eta_curve(Variant v, std::span<const double> kappas, const spin::SpinSystem& sys,
                                const engine::SimulationSettings& settings, const EtaOptions& options) {
  if (kappas.empty()) throw std::invalid_argument("eta_curve: empty kappa grid");
  settings.validate();
  const engine::DensityOperator rho0(spin::spin_operator(1, Axis::x));
  const bool realistic = settings.mode == engine::PulseMode::realistic;
  broadband::BroadbandScheme scheme = options.scheme;
  if (realistic && !scheme.pulse_timing) scheme.pulse_timing = settings;

  std::vector<EtaPoint> out(kappas.size());
  engine::parallel_for(kappas.size(), [&](std::size_t i) {
    const double kappa = kappas[i];
    const pulse::PulseProgram p = realistic
                                      ? broadband::broadband_swap13(v, kappa, options.design_j_hz, scheme)
                                      : sequences::build_swap13(v, kappa, options.design_j_hz);
    out[i] = {kappa, p.nominal_duration(), transfer_efficiency(engine::evolve(rho0, p, sys, settings))};
  });
  return out;
}

EtaPoint peak(std::span<const EtaPoint> curve) {
  if (curve.empty()) throw std::invalid_argument("peak: empty curve");
  EtaPoint best = curve.front();
  for (const auto& p : curve) {
    if (p.eta > best.eta) best = p;
  }
  return best;
}

std::vector<Fig2Row> fig2_tables(std::span<const double> kappas) {
  std::vector<Fig2Row> rows;
  rows.reserve(kappas.size());
  for (double kappa : kappas) {
    if (!(kappa > 0.0 && kappa <= sequences::kKappaMax)) {
      throw std::invalid_argument("fig2_tables: kappa must lie in (0, 2]");
    }
    Fig2Row row{.kappa = kappa};
    for (std::size_t i = 0; i < sequences::kAllVariants.size(); ++i) {
      const auto ds = sequences::duration_scaling(sequences::kAllVariants[i], kappa);
      row.tau[i] = ds.tau;
      row.scale[i] = ds.scaling;
    }
    const double sb = row.scale[1];
    row.ratio = {row.scale[0] / sb, row.scale[2] / sb, row.scale[3] / sb};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace trispin::metrics
