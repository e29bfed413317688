#pragma once

#include <array>
#include <span>
#include <vector>

#include "trispin/broadband/broadband.hpp"
#include "trispin/engine/density.hpp"
#include "trispin/engine/settings.hpp"
#include "trispin/sequences/sequences.hpp"
#include "trispin/spin/spin_system.hpp"

namespace trispin::metrics {

using linalg::ComplexMatrix;

/// Tr(rho I3x) / Tr(I1x I1x); 1 for complete transfer from an initial I1x.
double transfer_efficiency(const engine::DensityOperator& rho_final);

/// |Tr(u^dagger v)| / dim, insensitive to a global phase. Throws std::invalid_argument when the
/// shapes differ or are not square.
double fidelity(const ComplexMatrix& u, const ComplexMatrix& v);

struct EtaOptions {
  double design_j_hz = 88.0;  // coupling the sequences are timed for
  broadband::BroadbandScheme scheme{};
};

struct EtaPoint {
  double kappa = 0.0;
  double tau_s = 0.0;  // delays plus weak pulses; finite pulse widths are not counted
  double eta = 0.0;
};

/// SWAP(1,3) transfer curve: for each kappa, build the swap13 program (broadband in realistic
/// mode, balanced against the settings' pulse widths unless the scheme already names a timing),
/// evolve I1x and record (tau, eta13). Throws std::invalid_argument for an empty grid.
std::vector<EtaPoint> eta_curve(sequences::Variant v, std::span<const double> kappas, const spin::SpinSystem& sys,
                                const engine::SimulationSettings& settings, const EtaOptions& options = {});

/// Point with the largest eta (earliest on ties).
EtaPoint peak(std::span<const EtaPoint> curve);

struct Fig2Row {
  double kappa = 0.0;
  std::array<double, 4> tau{};    // A-D, units of 1/J
  std::array<double, 4> scale{};  // s_A..s_D
  std::array<double, 3> ratio{};  // s_A/s_B, s_C/s_B, s_D/s_B
};

/// Closed-form durations and scaling factors. Throws std::invalid_argument for kappa <= 0 or
/// kappa > 2.
std::vector<Fig2Row> fig2_tables(std::span<const double> kappas);

}  // namespace trispin::metrics
