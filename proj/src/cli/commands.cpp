#include "trispin/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "trispin/broadband/broadband.hpp"
#include "trispin/cli/config.hpp"
#include "trispin/engine/engine.hpp"
#include "trispin/metrics/metrics.hpp"
#include "trispin/pulse/text_format.hpp"
#include "trispin/sequences/sequences.hpp"
#include "trispin/spin/operators.hpp"

namespace trispin::cli {

using sequences::Variant;
using spin::Axis;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kReferenceJ = 88.0;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  }
  return v;
}

struct Check {
  std::string name;
  std::string detail;
  bool pass = false;
};

using Suite = std::vector<Check>;

Check fidelity_at_least(std::string name, double fidelity, double bound) {
  return {std::move(name),
          "1 - fidelity = " + fmt("%.2e", std::max(0.0, 1.0 - fidelity)) + ", required <= " + fmt("%.0e", 1.0 - bound),
          fidelity >= bound};
}

Check at_most(std::string name, double value, double bound) {
  return {std::move(name), "value " + fmt("%.3e", value) + ", required <= " + fmt("%.3e", bound), value <= bound};
}

Check within(std::string name, double value, double expected, double tol) {
  return {std::move(name), "value " + fmt("%.6f", value) + ", expected " + fmt("%.6f", expected) + " +- " + fmt("%g", tol),
          std::abs(value - expected) <= tol};
}

double uzzz_fidelity(const pulse::PulseProgram& p, const spin::SpinSystem& sys, double kappa) {
  return metrics::fidelity(engine::propagator_of(p, sys, engine::SimulationSettings::ideal()),
                           spin::target_trilinear(Axis::z, Axis::z, Axis::z, kappa));
}

Suite suite_identities() {
  Suite out;
  const auto chain = spin::SpinSystem::ideal_chain(kReferenceJ);
  for (Variant v : sequences::kAllVariants) {
    double worst = 1.0;
    for (int i = 0; i <= 20; ++i) {
      const double kappa = i / 10.0;
      worst = std::min(worst, uzzz_fidelity(sequences::build_uzzz(v, kappa, kReferenceJ), chain, kappa));
    }
    out.push_back(fidelity_at_least("uzzz/" + std::string(sequences::to_string(v)) + " kappa 0..2", worst, 1.0 - 1e-9));
  }
  return out;
}

Suite suite_swap() {
  Suite out;
  const auto zzz = spin::target_trilinear(Axis::z, Axis::z, Axis::z, 1.0);
  const auto yzy = spin::target_trilinear(Axis::y, Axis::z, Axis::y, 1.0);
  const auto xzx = spin::target_trilinear(Axis::x, Axis::z, Axis::x, 1.0);
  const auto product = zzz * yzy * xzx * spin::z_rotation(2, -kPi / 2.0);
  out.push_back(fidelity_at_least("trilinear product = SWAP(1,3)", metrics::fidelity(product, spin::swap13_target()), 1.0 - 1e-10));
  const double comm = std::max({linalg::max_abs(linalg::commutator(zzz, yzy)), linalg::max_abs(linalg::commutator(yzy, xzx)),
                                linalg::max_abs(linalg::commutator(zzz, xzx))});
  out.push_back(at_most("trilinear factors commute", comm, 1e-10));
  const auto chain = spin::SpinSystem::ideal_chain(kReferenceJ);
  for (Variant v : sequences::kAllVariants) {
    const auto u = engine::propagator_of(sequences::build_swap13(v, 1.0, kReferenceJ), chain,
                                         engine::SimulationSettings::ideal());
    out.push_back(fidelity_at_least("swap13/" + std::string(sequences::to_string(v)), metrics::fidelity(u, spin::swap13_target()),
                           1.0 - 1e-9));
  }
  return out;
}

Suite suite_broadband() {
  Suite out;
  auto sys = spin::SpinSystem::ideal_chain(kReferenceJ);
  sys.offsets = {200.0, -300.0, 500.0};
  for (Variant v : {Variant::A, Variant::C}) {
    out.push_back(fidelity_at_least("broadband " + std::string(sequences::to_string(v)) + " offsets (200,-300,500) Hz",
                           uzzz_fidelity(broadband::broadband_uzzz(v, 1.0, kReferenceJ), sys, 1.0), 0.999));
  }
  broadband::BroadbandScheme n64;
  n64.dante_segments = 64;
  out.push_back(fidelity_at_least("broadband geodesic n=64 offsets (200,-300,500) Hz",
                         uzzz_fidelity(broadband::broadband_geodesic(1.0, kReferenceJ, n64), sys, 1.0), 0.999));

  const auto chain = spin::SpinSystem::ideal_chain(kReferenceJ);
  const auto geodesic = sequences::build_uzzz(Variant::D, 1.0, kReferenceJ);
  std::vector<double> log_n, log_err;
  bool monotone = true;
  double previous = -1.0;
  for (int n : {8, 16, 32, 64}) {
    const double f = uzzz_fidelity(broadband::dante_discretize(geodesic, n), chain, 1.0);
    monotone = monotone && f >= previous;
    previous = f;
    log_n.push_back(std::log(n));
    log_err.push_back(std::log(std::max(1.0 - f, std::numeric_limits<double>::min())));
  }
  out.push_back({"DANTE fidelity nondecreasing in n", monotone ? "n = 8, 16, 32, 64" : "not monotone", monotone});
  const double mx = (log_n[0] + log_n[1] + log_n[2] + log_n[3]) / 4.0;
  const double my = (log_err[0] + log_err[1] + log_err[2] + log_err[3]) / 4.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sxy += (log_n[i] - mx) * (log_err[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = sxy / sxx;
  out.push_back({"DANTE log-log error slope", "slope " + fmt("%.3f", slope) + ", required <= -1", slope <= -1.0});
  return out;
}

Suite suite_limits() {
  Suite out;
  bool ordered = true;
  for (int i = 1; i <= 200; ++i) {
    const double kappa = i / 200.0;
    const double d = sequences::duration_scaling(Variant::D, kappa).tau;
    for (Variant v : {Variant::A, Variant::B, Variant::C}) ordered = ordered && d <= sequences::duration_scaling(v, kappa).tau;
  }
  out.push_back({"tau_D <= tau_A,B,C", "200 samples in (0,1]", ordered});
  const auto s = [](Variant v, double k) { return sequences::duration_scaling(v, k).scaling; };
  out.push_back(within("s_D/s_A at kappa 1", s(Variant::D, 1.0) / s(Variant::A, 1.0), std::sqrt(3.0), 1e-3));
  out.push_back(within("s_D/s_B at kappa 0.01", s(Variant::D, 0.01) / s(Variant::B, 0.01), 10.0, 0.1));
  out.push_back(within("s_D/s_C at kappa 0.01", s(Variant::D, 0.01) / s(Variant::C, 0.01), 5.0, 0.1));
  double drift = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double kappa = i / 20.0;
    const auto base = sequences::theoretical_limit(kappa);
    for (int n : {1, 2}) {
      for (double shifted : {2.0 * n + kappa, 2.0 * n - kappa}) {
        const auto t = sequences::theoretical_limit(shifted);
        drift = std::max({drift, std::abs(t.tau - base.tau), std::abs(t.reduced_kappa - base.reduced_kappa)});
      }
    }
  }
  out.push_back(at_most("theoretical limit periodic in 2n +- kappa", drift, 1e-12));
  return out;
}

std::string csv_number(double v) { return fmt("%.10g", v); }

}  // namespace

std::vector<double> parse_kappa_range(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("kappa range must be a:b or a:b:step");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double step = parts.size() == 3 ? parse_double(parts[2]) : 0.05;
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("kappa range needs finite bounds and a positive step");
  }
  std::vector<double> grid;
  if (hi < lo) return grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

int cmd_table1(double j_hz, std::ostream& out, std::ostream& err) {
  if (!(j_hz > 0.0) || !std::isfinite(j_hz)) {
    err << "table1: J must be a positive number of Hz\n";
    return kUsageError;
  }
  std::array<sequences::DurationScaling, 4> ds;
  for (std::size_t i = 0; i < 4; ++i) ds[i] = sequences::duration_scaling(sequences::kAllVariants[i], 1.0);
  const auto swap = sequences::swap_duration_bookkeeping(j_hz);

  out << "U_zzz(1) and SWAP(1,3) at J = " << fmt("%g", j_hz) << " Hz\n";
  out << "variant  tau(1) [1/J]  tau(1) [ms]  s(1)    SWAP(1,3) [ms]\n";
  for (std::size_t i = 0; i < 4; ++i) {
    char line[128];
    std::snprintf(line, sizeof line, "%-7s  %12.4f  %11.2f  %6.3f  %14.1f\n",
                  std::string(sequences::to_string(sequences::kAllVariants[i])).c_str(), ds[i].tau,
                  1e3 * ds[i].tau / j_hz, ds[i].scaling, 3e3 * ds[i].tau / j_hz);
    out << line;
  }
  out << "direct SWAP(1,2): " << fmt("%.1f", 1e3 * swap.direct) << " ms, SWAP(1,3) via three direct SWAPs: "
      << fmt("%.1f", 1e3 * swap.conventional13) << " ms, time-optimal SWAP(1,3): " << fmt("%.1f", 1e3 * swap.optimal13)
      << " ms\n\n";

  const auto row = [&](const char* name, const std::function<std::string(std::size_t)>& cell) {
    out << name;
    for (std::size_t i = 0; i < 4; ++i) out << ',' << cell(i);
    out << '\n';
  };
  row("quantity", [](std::size_t i) { return std::string(sequences::to_string(sequences::kAllVariants[i])); });
  row("tau_1_over_J", [&](std::size_t i) { return fmt("%.6f", ds[i].tau); });
  row("s_1", [&](std::size_t i) { return fmt("%.6f", ds[i].scaling); });
  row("tau_swap13_s", [&](std::size_t i) { return fmt("%.6g", 3.0 * ds[i].tau / j_hz); });
  row("tau_swap13_ms", [&](std::size_t i) { return fmt("%.1f", 3e3 * ds[i].tau / j_hz); });
  return kSuccess;
}

int cmd_curves(std::string_view kappa_range, std::ostream& out, std::ostream& err) {
  std::vector<double> grid;
  try {
    grid = parse_kappa_range(kappa_range);
  } catch (const std::invalid_argument& e) {
    err << "curves: " << e.what() << '\n';
    return kUsageError;
  }
  std::erase_if(grid, [](double k) { return k <= 0.0; });
  if (!grid.empty() && grid.back() > sequences::kKappaMax + 1e-12) {
    err << "curves: kappa must not exceed 2\n";
    return kUsageError;
  }
  for (double& k : grid) k = std::min(k, sequences::kKappaMax);
  out << "kappa,tau_A,tau_B,tau_C,tau_D,s_A,s_B,s_C,s_D,rA,rC,rD\n";
  for (const auto& r : metrics::fig2_tables(grid)) {
    out << csv_number(r.kappa);
    for (double v : r.tau) out << ',' << csv_number(v);
    for (double v : r.scale) out << ',' << csv_number(v);
    for (double v : r.ratio) out << ',' << csv_number(v);
    out << '\n';
  }
  return kSuccess;
}

int cmd_eta_sweep(const EtaSweepOptions& options, std::ostream& out, std::ostream& err) {
  Variant variant{};
  engine::PulseMode mode{};
  std::vector<double> grid;
  ScenarioConfig cfg;
  try {
    variant = sequences::parse_variant(options.variant);
    if (options.mode == "ideal") mode = engine::PulseMode::ideal;
    else if (options.mode == "realistic") mode = engine::PulseMode::realistic;
    else throw std::invalid_argument("mode must be ideal or realistic");
    grid = parse_kappa_range(options.kappa_range);
    for (double k : grid) {
      if (k < 0.0 || k > sequences::kKappaMax + 1e-12) throw std::invalid_argument("kappa must lie in [0, 2]");
    }
    for (double& k : grid) k = std::min(k, sequences::kKappaMax);
    if (options.config_path) cfg = load_config(*options.config_path);
  } catch (const std::exception& e) {
    err << "eta-sweep: " << e.what() << '\n';
    return kUsageError;
  }

  out << "variant,kappa,tau_s,eta13\n";
  if (grid.empty()) return kSuccess;
  // Ideal mode uses the symmetric chain the sequences are designed for.
  const spin::SpinSystem sys =
      mode == engine::PulseMode::ideal ? spin::SpinSystem::ideal_chain(cfg.design_j_hz) : cfg.system;
  metrics::EtaOptions eta_options;
  eta_options.design_j_hz = cfg.design_j_hz;
  eta_options.scheme.dante_segments = cfg.dante_n;
  const auto curve = metrics::eta_curve(variant, grid, sys, cfg.settings(mode), eta_options);
  const std::string name(sequences::to_string(variant));
  for (const auto& p : curve) {
    out << name << ',' << csv_number(p.kappa) << ',' << csv_number(p.tau_s) << ',' << csv_number(p.eta) << '\n';
  }
  return kSuccess;
}

int cmd_verify(std::string_view suite, std::ostream& out, std::ostream& err) {
  Suite checks;
  if (suite == "identities") checks = suite_identities();
  else if (suite == "swap") checks = suite_swap();
  else if (suite == "broadband") checks = suite_broadband();
  else if (suite == "limits") checks = suite_limits();
  else {
    err << "verify: unknown suite '" << suite << "' (expected identities, swap, broadband or limits)\n";
    return kUsageError;
  }
  bool all = true;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.pass;
  }
  return all ? kSuccess : kVerificationFailed;
}

int cmd_compile(const CompileOptions& options, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    const Variant v = sequences::parse_variant(options.variant);
    if ((options.dante_n != 0 || options.balance_widths) && !options.broadband) {
      throw std::invalid_argument("--n and --balance-widths require --broadband");
    }
    broadband::BroadbandScheme scheme;
    scheme.dante_segments = options.dante_n;
    if (options.balance_widths) scheme.pulse_timing = engine::SimulationSettings::realistic();
    pulse::PulseProgram p;
    if (options.broadband) {
      p = options.swap13 ? broadband::broadband_swap13(v, options.kappa, options.j_hz, scheme)
                         : broadband::broadband_uzzz(v, options.kappa, options.j_hz, scheme);
    } else {
      p = options.swap13 ? sequences::build_swap13(v, options.kappa, options.j_hz)
                         : sequences::build_uzzz(v, options.kappa, options.j_hz);
    }
    text = pulse::serialize_program(p);
  } catch (const std::exception& e) {
    err << "compile: " << e.what() << '\n';
    return kUsageError;
  }

  if (!options.out_path) {
    out << text;
    return kSuccess;
  }
  std::ofstream file(*options.out_path, std::ios::binary);
  if (!(file << text) || !file.flush()) {
    err << "compile: cannot write '" << *options.out_path << "'\n";
    return kUsageError;
  }
  return kSuccess;
}

}  // namespace trispin::cli
