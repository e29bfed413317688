#include "trispin/engine/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "trispin/linalg/expm.hpp"
#include "trispin/spin/operators.hpp"

namespace trispin::engine {

using pulse::Delay;
using pulse::HardPulse;
using pulse::PulseEvent;
using pulse::WeakPulse;
using pulse::ZRotation;
using spin::SpinSet;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Builds event propagators for one (system, settings, scale) triple. DANTE trains and
// refocusing groups repeat the same few events many times, so results are memoized.
class EventCompiler {
 public:
  EventCompiler(const spin::SpinSystem& sys, const SimulationSettings& settings, double rf_scale)
      : sys_(sys), settings_(settings), scale_(rf_scale), h0_(spin::free_hamiltonian(sys)) {}

  ComplexMatrix operator()(const PulseEvent& e) {
    return std::visit([this](const auto& ev) { return compile(ev); }, e);
  }

 private:
  using Key = std::tuple<int, unsigned, double, double, double>;

  template <class F>
  const ComplexMatrix& memo(const Key& key, F&& make) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make()).first;
    return it->second;
  }

  bool realistic() const { return settings_.mode == PulseMode::realistic; }

  ComplexMatrix compile(const Delay& d) {
    return memo({0, 0, d.duration, 0, 0}, [&] { return linalg::expm_generator(h0_, d.duration); });
  }

  ComplexMatrix compile(const ZRotation& z) { return spin::z_rotation(z.target, z.angle); }

  ComplexMatrix compile(const WeakPulse& w) {
    return memo({1, w.targets.bits(), w.amplitude_hz, w.duration, w.phase}, [&] {
      const double amp = realistic() ? w.amplitude_hz * scale_ : w.amplitude_hz;
      if (amp == 0.0) return linalg::expm_generator(h0_, w.duration);
      return linalg::expm_generator(h0_ + spin::rf_hamiltonian(w.targets, amp, w.phase), w.duration);
    });
  }

  ComplexMatrix compile(const HardPulse& p) {
    if (!realistic()) return spin::rotation(p.targets, p.flip, p.phase);
    return memo({2, p.targets.bits(), p.flip, p.phase, 0}, [&] { return finite_pulse(p); });
  }

  // All channels start together; each spin's rf stops once its own flip is reached, and H0 acts
  // throughout. Pulse widths use the nominal amplitudes, so rf inhomogeneity mis-sets the flip.
  ComplexMatrix finite_pulse(const HardPulse& p) const {
    if (p.flip == 0.0) return ComplexMatrix::identity(spin::kDim);
    const double phase = p.flip < 0.0 ? p.phase + std::numbers::pi : p.phase;
    struct Drive {
      int spin;
      double amp;
      double width;
    };
    std::vector<Drive> drives;
    for (int k : p.targets.members()) {
      const double amp = settings_.amplitude(sys_.channel(k));
      if (!(amp > 0.0)) throw std::invalid_argument("realistic mode requires a positive rf amplitude per channel");
      drives.push_back({k, amp * scale_, std::abs(p.flip) / (kTwoPi * amp)});
    }
    std::sort(drives.begin(), drives.end(), [](const Drive& a, const Drive& b) { return a.width < b.width; });

    ComplexMatrix u = ComplexMatrix::identity(spin::kDim);
    double t = 0.0;
    for (std::size_t i = 0; i < drives.size(); ++i) {
      const double seg = drives[i].width - t;
      if (seg <= 0.0) continue;
      ComplexMatrix h = h0_;
      for (std::size_t j = i; j < drives.size(); ++j) {
        h += spin::rf_hamiltonian(SpinSet{drives[j].spin}, drives[j].amp, phase);
      }
      u = linalg::expm_generator(h, seg) * u;
      t = drives[i].width;
    }
    return u;
  }

  const spin::SpinSystem& sys_;
  const SimulationSettings& settings_;
  double scale_;
  ComplexMatrix h0_;
  std::map<Key, ComplexMatrix> cache_;
};

}  // namespace

ComplexMatrix propagator_of(const pulse::PulseProgram& program, const spin::SpinSystem& sys,
                            const SimulationSettings& settings, double rf_scale) {
  settings.validate();
  const spin::SpinSystem effective = apply_overrides(sys, settings);
  effective.validate();
  EventCompiler compile(effective, settings, rf_scale);
  ComplexMatrix u = ComplexMatrix::identity(spin::kDim);
  for (const PulseEvent& e : program.events()) u = compile(e) * u;
  return u;
}

std::vector<EnsemblePoint> rf_ensemble(const SimulationSettings& settings) {
  settings.validate();
  const auto& inh = settings.inhomogeneity;
  if (settings.mode != PulseMode::realistic || !inh || inh->fwhm_fraction == 0.0 || inh->grid_points == 1) {
    return {EnsemblePoint{1.0, 1.0}};
  }
  const double sigma = inh->fwhm_fraction / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const int half = inh->grid_points / 2;
  std::vector<EnsemblePoint> grid;
  double total = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double x = 2.0 * sigma * i / half;
    const double w = std::exp(-0.5 * (x / sigma) * (x / sigma));
    grid.push_back({1.0 + x, w});
    total += w;
  }
  for (auto& g : grid) g.weight /= total;
  return grid;
}

double rf_ensemble_average(const std::function<double(double)>& metric, const SimulationSettings& settings) {
  const auto grid = rf_ensemble(settings);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = metric(grid[i].scale); });
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += grid[i].weight * values[i];
  return sum;
}

DensityOperator evolve(const DensityOperator& rho0, const pulse::PulseProgram& program, const spin::SpinSystem& sys,
                       const SimulationSettings& settings) {
  const auto grid = rf_ensemble(settings);
  std::vector<ComplexMatrix> states(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    states[i] = rho0.transformed(propagator_of(program, sys, settings, grid[i].scale)).matrix();
  });
  ComplexMatrix avg(spin::kDim, spin::kDim);
  for (std::size_t i = 0; i < grid.size(); ++i) avg += states[i] * grid[i].weight;
  return DensityOperator(std::move(avg));
}

namespace {
// Nested grids (an ensemble inside a kappa sweep) run serially inside an outer worker.
thread_local bool in_worker = false;
}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1 || in_worker) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      in_worker = true;
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ScanPoint> offset_scan(const spin::SpinSystem& sys, spin::Channel channel, double lo_hz, double hi_hz,
                                   double step_hz, const std::function<double(const spin::SpinSystem&)>& metric) {
  if (!(step_hz > 0.0)) throw std::invalid_argument("offset scan step must be positive");
  if (!(hi_hz >= lo_hz)) throw std::invalid_argument("offset scan range is empty");
  const auto count = static_cast<std::size_t>(std::floor((hi_hz - lo_hz) / step_hz * (1.0 + 1e-9))) + 1;
  const SpinSet shifted = sys.spins_on(channel);
  std::vector<ScanPoint> out(count);
  parallel_for(count, [&](std::size_t i) {
    const double o = lo_hz + static_cast<double>(i) * step_hz;
    spin::SpinSystem s = sys;
    for (int k : shifted.members()) s.offsets[k - 1] += o;
    out[i] = {o, metric(s)};
  });
  return out;
}

}  // namespace trispin::engine
