#include "trispin/sequences/sequences.hpp"

#include <cctype>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trispin::sequences {

using pulse::Delay;
using pulse::HardPulse;
using pulse::WeakPulse;
using pulse::ZRotation;
using spin::SpinSet;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPhaseX = 0.0;
constexpr double kPhaseY = kPi / 2.0;

void check_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= kKappaMax)) {
    throw std::domain_error("kappa must lie in [0, 2], got " + std::to_string(kappa));
  }
}

void check_coupling(double j_hz) {
  if (!(j_hz > 0.0) || !std::isfinite(j_hz)) throw std::domain_error("coupling J must be positive");
}

// Couplings an evolution block keeps active; the others are refocused by selective pi pulses.
enum class ZZ { both, j12_only, j23_only };

// Appends operator factors to a program in time order.
class Builder {
 public:
  Builder(PulseProgram& program, double j_hz) : program_(program), j_hz_(j_hz) {}

  // exp(-i angle sum_k (I_kx cos(phase) + I_ky sin(phase))); negative angles flip the phase.
  void rotate(SpinSet targets, double angle, double phase) {
    if (angle == 0.0) return;
    if (angle < 0.0) {
      angle = -angle;
      phase += kPi;
    }
    program_.push(HardPulse{targets, angle, phase});
  }

  void rotate(int k, double angle, double phase) { rotate(SpinSet{k}, angle, phase); }

  // exp(-i angle I_kz).
  void zrot(int k, double angle) {
    if (angle != 0.0) program_.push(ZRotation{k, angle});
  }

  // exp(-i angle (sum of the selected I_iz I_jz terms)) under H_c = 2 pi J (I1zI2z + I2zI3z).
  // Negative angles invert I2z around the evolution with pi pulses on spin 2.
  void zz(ZZ which, double angle) {
    if (angle == 0.0) return;
    const bool negative = angle < 0.0;
    const double t = std::abs(angle) / (2.0 * kPi * j_hz_);
    if (negative) rotate(2, kPi, kPi);
    switch (which) {
      case ZZ::both:
        program_.push(Delay{t});
        break;
      case ZZ::j12_only:
        refocused(t, 3);
        break;
      case ZZ::j23_only:
        refocused(t, 1);
        break;
    }
    if (negative) rotate(2, kPi, kPhaseX);
  }

 private:
  // Delay t with spin k inverted at the midpoint and restored at the end, removing its couplings.
  void refocused(double t, int k) {
    program_.push(Delay{t / 2.0});
    rotate(k, kPi, kPhaseX);
    program_.push(Delay{t / 2.0});
    rotate(k, kPi, kPi);
  }

  PulseProgram& program_;
  double j_hz_;
};

// Each builder lists the factors of its operator identity right to left (first in time first).

void build_a(Builder& b, double kappa) {
  // V_A exp(-i pi kappa I2z I3z) V_A^-1,  V_A = exp(-i pi/2 I2x) exp(-i pi I1z I2z) exp(-i pi/2 I2y)
  b.rotate(2, -kPi / 2.0, kPhaseX);
  b.zz(ZZ::j12_only, -kPi);
  b.rotate(2, -kPi / 2.0, kPhaseY);
  b.zz(ZZ::j23_only, kPi * kappa);
  b.rotate(2, kPi / 2.0, kPhaseY);
  b.zz(ZZ::j12_only, kPi);
  b.rotate(2, kPi / 2.0, kPhaseX);
}

void build_b(Builder& b, double kappa) {
  // V_B exp(-i pi/2 kappa I2x) V_B^-1,  V_B = exp(-i pi/2 I2y) exp(-i pi (I1zI2z + I2zI3z))
  b.rotate(2, -kPi / 2.0, kPhaseY);
  b.zz(ZZ::both, -kPi);
  b.rotate(2, kPi * kappa / 2.0, kPhaseX);
  b.zz(ZZ::both, kPi);
  b.rotate(2, kPi / 2.0, kPhaseY);
}

void build_c(Builder& b, double kappa) {
  // V_C exp(-i pi kappa (I1zI2y + I2yI3z)) V_C^-1 exp(i pi/2 kappa I2z),
  // V_C = exp(-i pi/2 (I1zI2x + I2xI3z)). I2x and I2y terms are z terms rotated about y / -x.
  b.zrot(2, -kPi * kappa / 2.0);
  b.rotate(2, kPi / 2.0, kPhaseY);  // V_C^-1
  b.zz(ZZ::both, kPi / 2.0);
  b.rotate(2, -kPi / 2.0, kPhaseY);
  b.rotate(2, kPi / 2.0, kPhaseX);  // central evolution
  b.zz(ZZ::both, kPi * kappa);
  b.rotate(2, -kPi / 2.0, kPhaseX);
  b.rotate(2, -kPi / 2.0, kPhaseY);  // V_C
  b.zz(ZZ::both, kPi / 2.0);
  b.rotate(2, kPi / 2.0, kPhaseY);
}

void build_d(Builder& b, PulseProgram& program, double kappa, double j_hz) {
  // V_D W exp(-i pi sqrt(k(4-k)) (I1zI2z + I2zI3z) + i pi (2-k) I2x) V_D^-1,
  // V_D = exp(-i pi/2 I2y), W = exp(-i pi (2 - k/2) I2x) = -exp(+i pi k/2 I2x).
  b.rotate(2, -kPi / 2.0, kPhaseY);
  const double tau = duration_scaling(Variant::D, kappa).tau / j_hz;
  if (tau > 0.0) {
    // rf along -x; free coupling evolution runs concurrently.
    program.push(WeakPulse{SpinSet{2}, geodesic_weak_amplitude(kappa, j_hz), tau, kPi});
  }
  b.rotate(2, -kPi * kappa / 2.0, kPhaseX);
  b.rotate(2, kPi / 2.0, kPhaseY);
}

std::string format_value(double kappa) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", kappa);
  return buf;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::A:
      return "A";
    case Variant::B:
      return "B";
    case Variant::C:
      return "C";
    case Variant::D:
      return "D";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name.front()))) {
      case 'A':
        return Variant::A;
      case 'B':
        return Variant::B;
      case 'C':
        return Variant::C;
      case 'D':
        return Variant::D;
      default:
        break;
    }
  }
  throw std::invalid_argument("unknown sequence variant '" + std::string(name) + "' (expected A, B, C or D)");
}

DurationScaling duration_scaling(Variant v, double kappa) {
  DurationScaling out;
  switch (v) {
    case Variant::A:
      out.tau = (2.0 + kappa) / 2.0;
      break;
    case Variant::B:
      out.tau = 1.0;
      break;
    case Variant::C:
      out.tau = (1.0 + kappa) / 2.0;
      break;
    case Variant::D:
      out.tau = std::sqrt(kappa * (4.0 - kappa)) / 2.0;
      break;
  }
  out.scaling = out.tau > 0.0 ? kappa / out.tau : 0.0;
  return out;
}

double reduce_kappa(double kappa) {
  double r = std::fmod(std::abs(kappa), 2.0);
  if (r > 1.0) r = 2.0 - r;
  return r;
}

TheoreticalLimit theoretical_limit(double kappa) {
  TheoreticalLimit out;
  out.reduced_kappa = reduce_kappa(kappa);
  const double root = std::sqrt(out.reduced_kappa * (4.0 - out.reduced_kappa));
  out.tau = root / 2.0;
  out.scaling = root > 0.0 ? 2.0 * out.reduced_kappa / root : 0.0;
  return out;
}

double geodesic_weak_amplitude(double kappa, double j_hz) {
  const double root = std::sqrt(kappa * (4.0 - kappa));
  if (!(root > 0.0)) throw std::domain_error("geodesic weak pulse undefined at kappa = 0");
  return (2.0 - kappa) * j_hz / root;
}

PulseProgram build_uzzz(Variant v, double kappa, double j_hz) {
  check_kappa(kappa);
  check_coupling(j_hz);
  PulseProgram program("uzzz-" + std::string(to_string(v)), kappa);
  program.set_meta("variant", std::string(to_string(v)));
  program.set_meta("design_j_hz", format_value(j_hz));
  Builder b(program, j_hz);
  switch (v) {
    case Variant::A:
      build_a(b, kappa);
      break;
    case Variant::B:
      build_b(b, kappa);
      break;
    case Variant::C:
      build_c(b, kappa);
      break;
    case Variant::D:
      build_d(b, program, kappa, j_hz);
      break;
  }
  return program;
}

PulseProgram build_swap13(Variant v, double kappa, double j_hz) {
  const PulseProgram core = build_uzzz(v, kappa, j_hz);
  PulseProgram program("swap13-" + std::string(to_string(v)), kappa);
  program.set_meta("variant", std::string(to_string(v)));
  program.set_meta("design_j_hz", format_value(j_hz));
  Builder b(program, j_hz);
  const SpinSet outer{1, 3};

  // U_xzx: rotations about y carry I_z onto I_x for spins 1 and 3.
  b.rotate(outer, -kPi / 2.0, kPhaseY);
  program.append(core);
  b.rotate(outer, kPi / 2.0, kPhaseY);

  // U_yzy: rotations about -x carry I_z onto I_y.
  b.rotate(outer, kPi / 2.0, kPhaseX);
  program.append(core);
  b.rotate(outer, -kPi / 2.0, kPhaseX);

  program.append(core);
  // exp(+i pi/2 I2z)
  b.zrot(2, -kPi / 2.0);
  return program;
}

SwapDurations swap_duration_bookkeeping(double j_hz) {
  check_coupling(j_hz);
  SwapDurations d;
  d.direct = 3.0 / (2.0 * j_hz);
  d.conventional13 = 2.0 * d.direct + d.direct;
  d.optimal13 = 3.0 * std::sqrt(3.0) / (2.0 * j_hz);
  return d;
}

}  // namespace trispin::sequences
