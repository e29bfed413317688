#include "trispin/pulse/program.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trispin::pulse {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

double wrap_phase(double phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  double p = std::fmod(phase, two_pi);
  if (p < 0.0) p += two_pi;
  if (p >= two_pi) p = 0.0;
  return p;
}

bool close_phase(double a, double b, double rel) {
  const double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  return std::abs(d) <= rel * 2.0 * std::numbers::pi;
}

}  // namespace

void validate(const PulseEvent& event) {
  std::visit(overloaded{
                 [](const HardPulse& p) {
                   require(!p.targets.empty(), "pulse: empty target set");
                   require(std::isfinite(p.flip), "pulse: flip angle must be finite");
                   require(std::isfinite(p.phase), "pulse: phase must be finite");
                 },
                 [](const WeakPulse& p) {
                   require(!p.targets.empty(), "weak pulse: empty target set");
                   require(std::isfinite(p.amplitude_hz) && p.amplitude_hz >= 0.0,
                           "weak pulse: amplitude must be finite and >= 0");
                   require(std::isfinite(p.duration) && p.duration >= 0.0,
                           "weak pulse: duration must be finite and >= 0");
                   require(std::isfinite(p.phase), "weak pulse: phase must be finite");
                 },
                 [](const Delay& d) {
                   require(std::isfinite(d.duration) && d.duration >= 0.0, "delay: negative duration");
                 },
                 [](const ZRotation& z) {
                   spin::check_spin_index(z.target);
                   require(std::isfinite(z.angle), "zrot: angle must be finite");
                 },
             },
             event);
}

PulseProgram::PulseProgram(std::string label, double kappa) : label_(std::move(label)), kappa_(kappa) {}

void PulseProgram::push(PulseEvent event) {
  validate(event);
  // Phases are kept in [0, 2 pi).
  if (auto* p = std::get_if<HardPulse>(&event)) p->phase = wrap_phase(p->phase);
  if (auto* w = std::get_if<WeakPulse>(&event)) w->phase = wrap_phase(w->phase);
  events_.push_back(std::move(event));
}

void PulseProgram::append(const PulseProgram& other) {
  events_.insert(events_.end(), other.events_.begin(), other.events_.end());
}

void PulseProgram::set_meta(const std::string& key, std::string value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(key, std::move(value));
}

std::optional<std::string> PulseProgram::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

double PulseProgram::nominal_duration() const {
  double t = 0.0;
  for (const auto& e : events_) {
    if (const auto* d = std::get_if<Delay>(&e)) t += d->duration;
    if (const auto* w = std::get_if<WeakPulse>(&e)) t += w->duration;
  }
  return t;
}

PulseProgram concat(const PulseProgram& first, const PulseProgram& second) {
  PulseProgram out = first;
  out.append(second);
  return out;
}

bool approx_equal(const PulseProgram& a, const PulseProgram& b, double rel_tol) {
  if (a.label() != b.label() || a.metadata() != b.metadata() || a.size() != b.size()) return false;
  if (!close(a.kappa(), b.kappa(), rel_tol)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ea = a.events()[i];
    const auto& eb = b.events()[i];
    if (ea.index() != eb.index()) return false;
    const bool same = std::visit(
        overloaded{
            [&](const HardPulse& p) {
              const auto& q = std::get<HardPulse>(eb);
              return p.targets == q.targets && close(p.flip, q.flip, rel_tol) && close_phase(p.phase, q.phase, rel_tol);
            },
            [&](const WeakPulse& p) {
              const auto& q = std::get<WeakPulse>(eb);
              return p.targets == q.targets && close(p.amplitude_hz, q.amplitude_hz, rel_tol) &&
                     close(p.duration, q.duration, rel_tol) && close_phase(p.phase, q.phase, rel_tol);
            },
            [&](const Delay& d) { return close(d.duration, std::get<Delay>(eb).duration, rel_tol); },
            [&](const ZRotation& z) {
              const auto& q = std::get<ZRotation>(eb);
              return z.target == q.target && close(z.angle, q.angle, rel_tol);
            },
        },
        ea);
    if (!same) return false;
  }
  return true;
}

double hard_pulse_width(const HardPulse& pulse, const engine::SimulationSettings& settings,
                        const spin::ChannelMap& channels) {
  double width = 0.0;
  for (int k : pulse.targets.members()) {
    const double amp = settings.amplitude(channels[k - 1]);
    if (!(amp > 0.0)) {
      throw std::invalid_argument("realistic mode: zero rf amplitude on the " +
                                  std::string(spin::to_string(channels[k - 1])) + " channel");
    }
    width = std::max(width, std::abs(pulse.flip) / (2.0 * std::numbers::pi * amp));
  }
  return width;
}

double total_duration(const PulseProgram& program, const engine::SimulationSettings& settings,
                      const spin::ChannelMap& channels) {
  double t = program.nominal_duration();
  if (settings.mode == engine::PulseMode::realistic) {
    for (const auto& e : program.events()) {
      if (const auto* p = std::get_if<HardPulse>(&e)) t += hard_pulse_width(*p, settings, channels);
    }
  }
  return t;
}

}  // namespace trispin::pulse
