#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "trispin/engine/settings.hpp"
#include "trispin/spin/spin_set.hpp"
#include "trispin/spin/spin_system.hpp"

namespace trispin::pulse {

using spin::SpinSet;

/// Rotation by `flip` (rad) about the transverse axis at `phase` (rad).
struct HardPulse {
  SpinSet targets;
  double flip = 0.0;
  double phase = 0.0;
  friend bool operator==(const HardPulse&, const HardPulse&) = default;
};

/// Constant-amplitude pulse applied while the free Hamiltonian keeps acting.
struct WeakPulse {
  SpinSet targets;
  double amplitude_hz = 0.0;
  double duration = 0.0;  // s
  double phase = 0.0;
  friend bool operator==(const WeakPulse&, const WeakPulse&) = default;
};

struct Delay {
  double duration = 0.0;  // s
  friend bool operator==(const Delay&, const Delay&) = default;
};

/// exp(-i angle I_kz), realized in practice by phase bookkeeping.
struct ZRotation {
  int target = 1;
  double angle = 0.0;
  friend bool operator==(const ZRotation&, const ZRotation&) = default;
};

using PulseEvent = std::variant<HardPulse, WeakPulse, Delay, ZRotation>;

/// Throws std::invalid_argument / std::out_of_range on a malformed event.
void validate(const PulseEvent& event);

/// Ordered event list in time order plus descriptive metadata.
class PulseProgram {
 public:
  using Metadata = std::vector<std::pair<std::string, std::string>>;

  PulseProgram() = default;
  explicit PulseProgram(std::string label, double kappa = 0.0);

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  double kappa() const noexcept { return kappa_; }
  void set_kappa(double kappa) { kappa_ = kappa; }

  const std::vector<PulseEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  void push(PulseEvent event);
  /// Appends the other program's events; this program's label and metadata are kept.
  void append(const PulseProgram& other);

  const Metadata& metadata() const noexcept { return metadata_; }
  void set_meta(const std::string& key, std::string value);
  std::optional<std::string> meta(const std::string& key) const;

  /// Sum of delay and weak-pulse durations (hard pulses count as instantaneous).
  double nominal_duration() const;

  friend bool operator==(const PulseProgram&, const PulseProgram&) = default;

 private:
  std::string label_;
  double kappa_ = 0.0;
  std::vector<PulseEvent> events_;
  Metadata metadata_;
};

PulseProgram concat(const PulseProgram& first, const PulseProgram& second);

/// Same labels/metadata and events equal up to a relative tolerance on every number.
bool approx_equal(const PulseProgram& a, const PulseProgram& b, double rel_tol = 1e-12);

/// Duration of a hard pulse in realistic mode: the longest of flip / (2 pi amplitude) over the
/// target channels.
double hard_pulse_width(const HardPulse& pulse, const engine::SimulationSettings& settings,
                        const spin::ChannelMap& channels = spin::kDefaultChannels);

/// Ideal mode: nominal_duration. Realistic mode: additionally the hard pulse widths.
double total_duration(const PulseProgram& program, const engine::SimulationSettings& settings,
                      const spin::ChannelMap& channels = spin::kDefaultChannels);

}  // namespace trispin::pulse
