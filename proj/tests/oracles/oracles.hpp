#pragma once

// Independent reference implementations for the tests. Nothing here calls the library's
// multiplication, exponential or operator builders; only the ComplexMatrix container and the
// program/event types are shared.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

#include "trispin/linalg/complex_matrix.hpp"
#include "trispin/pulse/program.hpp"
#include "trispin/spin/spin_system.hpp"

namespace oracle {

using trispin::linalg::Complex;
using trispin::linalg::ComplexMatrix;

inline constexpr std::size_t kDim = 8;
inline constexpr double kPi = std::numbers::pi;

inline ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

inline ComplexMatrix eye(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline ComplexMatrix add(ComplexMatrix a, const ComplexMatrix& b, Complex scale = 1.0) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += scale * b(i, j);
  return a;
}

inline ComplexMatrix scaled(ComplexMatrix a, Complex s) {
  for (auto& x : a.data()) x *= s;
  return a;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

/// exp(m) by scaling and squaring of a 30-term Taylor series.
inline ComplexMatrix expm(const ComplexMatrix& m) {
  double norm = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
    norm = std::max(norm, col);
  }
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const ComplexMatrix a = scaled(m, std::ldexp(1.0, -squarings));
  ComplexMatrix term = eye(m.rows());
  ComplexMatrix sum = eye(m.rows());
  for (int k = 1; k <= 30; ++k) {
    term = scaled(mul(term, a), 1.0 / k);
    sum = add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  return sum;
}

/// exp(-i h t).
inline ComplexMatrix propagate(const ComplexMatrix& h, double t) { return expm(scaled(h, Complex(0.0, -t))); }

/// Spin operator from bit manipulation on the basis index (spin 1 is the most significant bit,
/// bit 0 = up).
inline ComplexMatrix spin_op(int k, char axis) {
  ComplexMatrix m(kDim, kDim);
  const std::size_t bit = std::size_t{1} << (3 - k);
  for (std::size_t b = 0; b < kDim; ++b) {
    const bool down = (b & bit) != 0;
    switch (axis) {
      case 'z': m(b, b) = down ? -0.5 : 0.5; break;
      case 'x': m(b ^ bit, b) = 0.5; break;
      // <up|Iy|down> = -i/2, <down|Iy|up> = i/2
      case 'y': m(b ^ bit, b) = down ? Complex(0.0, -0.5) : Complex(0.0, 0.5); break;
      default: break;
    }
  }
  return m;
}

inline ComplexMatrix free_h(const trispin::spin::SpinSystem& s) {
  const double tp = 2.0 * kPi;
  ComplexMatrix h(kDim, kDim);
  h = add(h, mul(spin_op(1, 'z'), spin_op(2, 'z')), tp * s.j12);
  h = add(h, mul(spin_op(2, 'z'), spin_op(3, 'z')), tp * s.j23);
  h = add(h, mul(spin_op(1, 'z'), spin_op(3, 'z')), tp * s.j13);
  for (int k = 1; k <= 3; ++k) h = add(h, spin_op(k, 'z'), tp * s.offsets[k - 1]);
  return h;
}

/// sum_k (cos phase I_kx + sin phase I_ky) over the set bits of `targets` (bit k-1 = spin k).
inline ComplexMatrix transverse(unsigned targets, double phase) {
  ComplexMatrix h(kDim, kDim);
  for (int k = 1; k <= 3; ++k) {
    if ((targets >> (k - 1) & 1U) == 0) continue;
    h = add(h, spin_op(k, 'x'), std::cos(phase));
    h = add(h, spin_op(k, 'y'), std::sin(phase));
  }
  return h;
}

inline unsigned bits_of(const trispin::spin::SpinSet& s) {
  unsigned b = 0;
  for (int k : s.members()) b |= 1U << (k - 1);
  return b;
}

/// Ideal-pulse propagator of a program, every event exponentiated from scratch.
inline ComplexMatrix ideal_propagator(const trispin::pulse::PulseProgram& p, const trispin::spin::SpinSystem& s) {
  using namespace trispin::pulse;
  const ComplexMatrix h0 = free_h(s);
  ComplexMatrix u = eye(kDim);
  for (const auto& e : p.events()) {
    ComplexMatrix step;
    if (const auto* hp = std::get_if<HardPulse>(&e)) {
      step = propagate(transverse(bits_of(hp->targets), hp->phase), hp->flip);
    } else if (const auto* w = std::get_if<WeakPulse>(&e)) {
      step = propagate(add(h0, transverse(bits_of(w->targets), w->phase), 2.0 * kPi * w->amplitude_hz), w->duration);
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      step = propagate(h0, d->duration);
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      step = propagate(spin_op(z->target, 'z'), z->angle);
    }
    u = mul(step, u);
  }
  return u;
}

/// exp(-i 2 pi kappa I1a I2b I3c) with the product built from index operators.
inline ComplexMatrix trilinear(char a, char b, char c, double kappa) {
  return propagate(mul(mul(spin_op(1, a), spin_op(2, b)), spin_op(3, c)), 2.0 * kPi * kappa);
}

/// |b1 b2 b3> -> |b3 b2 b1>.
inline ComplexMatrix swap13() {
  ComplexMatrix p(kDim, kDim);
  for (std::size_t b = 0; b < kDim; ++b) {
    const std::size_t b1 = b >> 2 & 1U, b2 = b >> 1 & 1U, b3 = b & 1U;
    p(b3 << 2 | b2 << 1 | b1, b) = 1.0;
  }
  return p;
}

/// |Tr(u^dagger v)| / n.
inline double fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) t += std::conj(u(i, j)) * v(i, j);
  return std::abs(t) / static_cast<double>(u.rows());
}

}  // namespace oracle
