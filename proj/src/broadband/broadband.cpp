#include "trispin/broadband/broadband.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trispin::broadband {

using pulse::Delay;
using pulse::HardPulse;
using pulse::PulseEvent;
using pulse::WeakPulse;
using pulse::ZRotation;
using sequences::Variant;
using spin::SpinSet;

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_value(double v, int digits = 10) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string phase_name(double rad) {
  double deg = std::fmod(rad * 180.0 / kPi, 360.0);
  if (deg < 0.0) deg += 360.0;
  if (std::abs(deg) < 1e-9 || std::abs(deg - 360.0) < 1e-9) return "x";
  if (std::abs(deg - 90.0) < 1e-9) return "y";
  if (std::abs(deg - 180.0) < 1e-9) return "-x";
  if (std::abs(deg - 270.0) < 1e-9) return "-y";
  return format_value(deg);
}

std::string cycle_name(const std::vector<double>& cycle) {
  std::string out;
  for (double p : cycle) {
    if (!out.empty()) out += ',';
    out += phase_name(p);
  }
  return out;
}

// Sign of sin of the difference, folded to detect (anti)parallel phases.
bool parallel(double a, double b) { return std::abs(std::sin(a - b)) < 1e-12; }

}  // namespace

std::vector<double> BroadbandScheme::default_cycle() { return {0.0, kPi, kPi, 0.0}; }

void BroadbandScheme::validate() const {
  if (refocus_cycle.empty()) throw std::invalid_argument("refocusing phase cycle is empty");
  for (double p : refocus_cycle) {
    if (!std::isfinite(p)) throw std::invalid_argument("refocusing phase must be finite");
    if (!parallel(p, refocus_cycle.front())) {
      throw std::invalid_argument("refocusing cycle phases must be parallel or antiparallel to the first");
    }
  }
  if (dante_segments < 0 || dante_segments % 4 != 0) {
    throw std::invalid_argument("DANTE segment count must be a positive multiple of 4 (or 0 for the default)");
  }
  if (pulse_timing) pulse_timing->validate();
}

namespace {

// Free-precession time the proton-channel spins spend inside a finite pulse, averaged over those
// spins. Pulses start together, so a spin idles for the part that outlasts its own rf.
double proton_idle_time(const HardPulse& p, const engine::SimulationSettings& timing) {
  std::array<double, spin::kSpinCount> width{};
  double longest = 0.0;
  for (int k : p.targets.members()) {
    width[k - 1] = pulse::hard_pulse_width(HardPulse{SpinSet{k}, p.flip, p.phase}, timing);
    longest = std::max(longest, width[k - 1]);
  }
  double idle = 0.0;
  int protons = 0;
  for (int k = 1; k <= spin::kSpinCount; ++k) {
    if (spin::kDefaultChannels[k - 1] != spin::Channel::proton) continue;
    idle += longest - width[k - 1];
    ++protons;
  }
  return idle / protons;
}

// Shifts every refocusing group inside its delay so that the proton free-precession time on
// either side matches, counting the idle time inside finite pulses. Couplings commute with the
// groups, so only the offset terms are affected.
void balance_groups(std::vector<PulseEvent>& events, const std::vector<std::size_t>& groups,
                    const engine::SimulationSettings& timing) {
  if (groups.empty()) return;
  // idle[i]: idle time in the segment between group i-1 and group i (segment 0 precedes group 0).
  std::vector<double> idle(groups.size() + 1, 0.0);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (seg < groups.size() && i == groups[seg]) {
      ++seg;
      idle[seg] += proton_idle_time(std::get<HardPulse>(events[i]), timing);
    } else if (const auto* p = std::get_if<HardPulse>(&events[i])) {
      idle[seg] += proton_idle_time(*p, timing);
    }
  }
  const std::size_t last = groups.size();
  const auto share = [&](std::size_t segment) { return segment == 0 || segment == last ? 1.0 : 0.5; };

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double left = idle[g] * share(g);
    const double right = idle[g + 1] * share(g + 1);
    const double shift = (right - left) / 2.0;  // > 0 moves the group later
    auto& before = std::get<Delay>(events[groups[g] - 1]).duration;
    auto& after = std::get<Delay>(events[groups[g] + 1]).duration;
    if (before + shift < 0.0 || after - shift < 0.0) {
      throw std::invalid_argument("refocus_offsets: delays too short to balance the finite pulse widths");
    }
    before += shift;
    after -= shift;
  }
}

}  // namespace

PulseProgram refocus_offsets(const PulseProgram& program, const BroadbandScheme& scheme) {
  scheme.validate();
  const auto& cycle = scheme.refocus_cycle;
  // A pi rotation about phase psi maps a rotation axis at phase phi onto 2 psi - phi and I_z onto -I_z.
  const double mirror = 2.0 * cycle.front();

  std::size_t delays = 0;
  std::size_t longest = 0;
  double longest_duration = 0.0;
  for (std::size_t i = 0; i < program.events().size(); ++i) {
    const PulseEvent& e = program.events()[i];
    if (std::holds_alternative<WeakPulse>(e)) {
      throw std::invalid_argument("refocus_offsets: weak pulses must be DANTE-discretized first");
    }
    if (const auto* d = std::get_if<Delay>(&e); d && d->duration > 0.0) {
      ++delays;
      if (d->duration > longest_duration) {
        longest_duration = d->duration;
        longest = i;
      }
    }
  }
  // With finite pulses a trailing group cannot be balanced, so the longest delay takes two.
  const bool split_longest = scheme.pulse_timing && delays % 2 == 1;

  std::vector<PulseEvent> events;
  std::vector<std::size_t> group_at;
  const auto insert_group = [&] {
    group_at.push_back(events.size());
    events.emplace_back(HardPulse{SpinSet::all(), kPi, cycle[(group_at.size() - 1) % cycle.size()]});
  };

  for (std::size_t i = 0; i < program.events().size(); ++i) {
    const PulseEvent& e = program.events()[i];
    const bool toggled = group_at.size() % 2 == 1;
    if (const auto* d = std::get_if<Delay>(&e)) {
      if (d->duration == 0.0) continue;
      if (split_longest && i == longest) {
        events.emplace_back(Delay{d->duration / 4.0});
        insert_group();
        events.emplace_back(Delay{d->duration / 2.0});
        insert_group();
        events.emplace_back(Delay{d->duration / 4.0});
      } else {
        events.emplace_back(Delay{d->duration / 2.0});
        insert_group();
        events.emplace_back(Delay{d->duration / 2.0});
      }
    } else if (const auto* p = std::get_if<HardPulse>(&e)) {
      HardPulse q = *p;
      if (toggled) q.phase = mirror - q.phase;
      events.emplace_back(q);
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      ZRotation q = *z;
      if (toggled) q.angle = -q.angle;
      events.emplace_back(q);
    }
  }
  if (group_at.size() % 2 == 1) insert_group();
  if (scheme.pulse_timing) balance_groups(events, group_at, *scheme.pulse_timing);

  PulseProgram out(program.label(), program.kappa());
  for (const auto& [k, v] : program.metadata()) out.set_meta(k, v);
  for (auto& e : events) out.push(std::move(e));
  out.set_meta("refocus_cycle", cycle_name(cycle));
  out.set_meta("refocus_groups", std::to_string(group_at.size()));
  if (scheme.pulse_timing) out.set_meta("refocus_balanced", "proton");
  return out;
}

int default_dante_segments(double kappa, double j_hz) {
  const double tau_j = sequences::duration_scaling(Variant::D, kappa).tau;  // tau * J
  // n >= 20 J tau; the small slack absorbs rounding when 20 J tau is an exact multiple of 4.
  const int blocks = static_cast<int>(std::ceil(20.0 * tau_j / 4.0 - 1e-12));
  (void)j_hz;
  return 4 * std::max(1, blocks);
}

PulseProgram dante_discretize(const PulseProgram& program, int n) {
  if (n <= 0 || n % 4 != 0) throw std::invalid_argument("DANTE segment count must be a positive multiple of 4");
  PulseProgram out(program.label(), program.kappa());
  for (const auto& [k, v] : program.metadata()) out.set_meta(k, v);
  for (const PulseEvent& e : program.events()) {
    const auto* w = std::get_if<WeakPulse>(&e);
    if (w == nullptr) {
      out.push(e);
      continue;
    }
    if (w->duration == 0.0) continue;
    const double window = w->duration / n;
    const double flip = 2.0 * kPi * w->amplitude_hz * w->duration / n;
    out.push(Delay{window / 2.0});
    for (int i = 0; i < n; ++i) {
      out.push(HardPulse{w->targets, flip, w->phase});
      out.push(Delay{i + 1 < n ? window : window / 2.0});
    }
  }
  out.set_meta("dante_n", std::to_string(n));
  return out;
}

PulseProgram broadband_geodesic(double kappa, double j_hz, const BroadbandScheme& scheme) {
  scheme.validate();
  const int n = scheme.dante_segments > 0 ? scheme.dante_segments : default_dante_segments(kappa, j_hz);
  PulseProgram p = refocus_offsets(dante_discretize(sequences::build_uzzz(Variant::D, kappa, j_hz), n), scheme);
  p.set_label("broadband-" + p.label());
  return p;
}

PulseProgram broadband_uzzz(Variant v, double kappa, double j_hz, const BroadbandScheme& scheme) {
  if (v == Variant::D) return broadband_geodesic(kappa, j_hz, scheme);
  PulseProgram p = refocus_offsets(sequences::build_uzzz(v, kappa, j_hz), scheme);
  p.set_label("broadband-" + p.label());
  return p;
}

PulseProgram broadband_swap13(Variant v, double kappa, double j_hz, const BroadbandScheme& scheme) {
  scheme.validate();
  PulseProgram p = sequences::build_swap13(v, kappa, j_hz);
  if (v == Variant::D) {
    p = dante_discretize(p, scheme.dante_segments > 0 ? scheme.dante_segments : default_dante_segments(kappa, j_hz));
  }
  p = refocus_offsets(p, scheme);
  p.set_label("broadband-" + p.label());
  return p;
}

double selective_emulation_delay(double delta_nu13_hz) {
  if (!(std::abs(delta_nu13_hz) > 0.0) || !std::isfinite(delta_nu13_hz)) {
    throw std::invalid_argument("selective pulse emulation needs a nonzero proton frequency difference");
  }
  return 1.0 / (4.0 * std::abs(delta_nu13_hz));
}

PulseProgram emulate_selective_pulse(int target, double flip, double phase, double delta_nu13_hz, int carrier) {
  const double delta = selective_emulation_delay(delta_nu13_hz);
  if ((target != 1 && target != 3) || (carrier != 1 && carrier != 3)) {
    throw std::invalid_argument("selective pulse emulation addresses protons 1 and 3 only");
  }
  const int off_resonance = carrier == 1 ? 3 : 1;
  const SpinSet protons{1, 3};

  PulseProgram out("selective-" + std::to_string(target), 0.0);
  out.set_meta("selective_delta_us", format_value(delta * 1e6));
  out.push(HardPulse{protons, flip / 2.0, phase});
  out.push(Delay{delta});
  out.push(HardPulse{SpinSet{2}, kPi, 0.0});
  out.push(Delay{delta});
  out.push(HardPulse{SpinSet{2}, kPi, 0.0});
  out.push(HardPulse{protons, flip / 2.0, target == carrier ? phase : phase + kPi});
  // Precession of the off-resonance proton over 2 delta: 2 pi dnu 2 delta = +-pi.
  const double residue = 2.0 * kPi * delta_nu13_hz * 2.0 * delta;
  out.push(ZRotation{off_resonance, -residue});
  return out;
}

PulseProgram eliminate_z_rotations(const PulseProgram& program) {
  std::array<double, spin::kSpinCount> acc{};
  PulseProgram out(program.label(), program.kappa());
  for (const auto& [k, v] : program.metadata()) out.set_meta(k, v);

  for (const PulseEvent& e : program.events()) {
    if (const auto* z = std::get_if<ZRotation>(&e)) {
      acc[z->target - 1] += z->angle;
    } else if (const auto* p = std::get_if<HardPulse>(&e)) {
      // Spins with different accumulated phases need separate (commuting) pulses.
      std::map<double, SpinSet> by_shift;
      for (int k : p->targets.members()) by_shift[acc[k - 1]] = by_shift[acc[k - 1]].with(k);
      for (const auto& [shift, targets] : by_shift) out.push(HardPulse{targets, p->flip, p->phase - shift});
    } else if (const auto* w = std::get_if<WeakPulse>(&e)) {
      const auto members = w->targets.members();
      const double shift = acc[members.front() - 1];
      for (int k : members) {
        if (acc[k - 1] != shift) {
          throw std::invalid_argument("eliminate_z_rotations: weak pulse targets carry different phase shifts");
        }
      }
      WeakPulse q = *w;
      q.phase -= shift;
      out.push(q);
    } else {
      out.push(e);
    }
  }
  for (int k = 1; k <= spin::kSpinCount; ++k) {
    if (acc[k - 1] == 0.0) continue;
    const std::string key = "receiver_phase." + std::to_string(k);
    double deg = acc[k - 1] * 180.0 / kPi;
    if (const auto prev = program.meta(key)) deg += std::stod(*prev);
    out.set_meta(key, format_value(deg, 15));
  }
  return out;
}

}  // namespace trispin::broadband
