#include "trispin/spin/operators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trispin/linalg/expm.hpp"

namespace trispin::spin {

using linalg::Complex;

namespace {

ComplexMatrix pauli_half(Axis axis) {
  switch (axis) {
    case Axis::x:
      return ComplexMatrix(2, 2, {0.0, 0.5, 0.5, 0.0});
    case Axis::y:
      return ComplexMatrix(2, 2, {0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0});
    case Axis::z:
      return ComplexMatrix(2, 2, {0.5, 0.0, 0.0, -0.5});
  }
  throw std::invalid_argument("unknown axis");
}

ComplexMatrix embed(int k, const ComplexMatrix& single) {
  check_spin_index(k);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int pos = 1; pos <= kSpinCount; ++pos) out = kron(out, pos == k ? single : id);
  return out;
}

// z-eigenvalue (+1/2 or -1/2) of spin k in basis state b.
double m_z(std::size_t b, int k) {
  const std::size_t bit = (b >> (kSpinCount - k)) & 1U;
  return bit == 0 ? 0.5 : -0.5;
}

}  // namespace

std::string_view to_string(Axis a) noexcept {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

ComplexMatrix spin_operator(int k, Axis axis) { return embed(k, pauli_half(axis)); }

ComplexMatrix product_operator(std::initializer_list<std::pair<int, Axis>> factors) {
  if (factors.size() == 0) throw std::invalid_argument("product_operator: no factors");
  ComplexMatrix out = ComplexMatrix::identity(kDim);
  for (const auto& [k, axis] : factors) out = out * spin_operator(k, axis);
  return out * Complex(std::pow(2.0, static_cast<double>(factors.size() - 1)));
}

ComplexMatrix coupling_hamiltonian(const SpinSystem& sys) {
  ComplexMatrix h(kDim, kDim);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t b = 0; b < kDim; ++b) {
    const double e = sys.j12 * m_z(b, 1) * m_z(b, 2) + sys.j23 * m_z(b, 2) * m_z(b, 3) +
                     sys.j13 * m_z(b, 1) * m_z(b, 3);
    h(b, b) = two_pi * e;
  }
  return h;
}

ComplexMatrix offset_hamiltonian(const SpinSystem& sys) {
  ComplexMatrix h(kDim, kDim);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t b = 0; b < kDim; ++b) {
    double e = 0.0;
    for (int k = 1; k <= kSpinCount; ++k) e += sys.offsets[k - 1] * m_z(b, k);
    h(b, b) = two_pi * e;
  }
  return h;
}

ComplexMatrix free_hamiltonian(const SpinSystem& sys) { return coupling_hamiltonian(sys) + offset_hamiltonian(sys); }

ComplexMatrix rf_hamiltonian(SpinSet targets, double amplitude_hz, double phase) {
  if (targets.empty()) throw std::invalid_argument("rf_hamiltonian: empty target set");
  ComplexMatrix h(kDim, kDim);
  const double scale = 2.0 * std::numbers::pi * amplitude_hz;
  for (int k : targets.members()) {
    h += spin_operator(k, Axis::x) * Complex(scale * std::cos(phase));
    h += spin_operator(k, Axis::y) * Complex(scale * std::sin(phase));
  }
  return h;
}

ComplexMatrix rotation(SpinSet targets, double flip, double phase) {
  // exp(-i (flip/2) (sigma_x cos(phase) + sigma_y sin(phase)))
  const double c = std::cos(flip / 2.0);
  const double s = std::sin(flip / 2.0);
  const Complex off_upper = Complex(0.0, -s) * std::polar(1.0, -phase);
  const Complex off_lower = Complex(0.0, -s) * std::polar(1.0, phase);
  const ComplexMatrix rot(2, 2, {c, off_upper, off_lower, c});
  const ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int k = 1; k <= kSpinCount; ++k) out = kron(out, targets.contains(k) ? rot : id);
  return out;
}

ComplexMatrix z_rotation(int k, double angle) {
  check_spin_index(k);
  ComplexMatrix out(kDim, kDim);
  for (std::size_t b = 0; b < kDim; ++b) out(b, b) = std::polar(1.0, -angle * m_z(b, k));
  return out;
}

ComplexMatrix target_trilinear(Axis a, Axis b, Axis c, double kappa) {
  const ComplexMatrix generator = spin_operator(1, a) * spin_operator(2, b) * spin_operator(3, c);
  return linalg::expm_generator(generator, 2.0 * std::numbers::pi * kappa);
}

ComplexMatrix swap13_target() {
  ComplexMatrix p(kDim, kDim);
  for (std::size_t b = 0; b < kDim; ++b) {
    const std::size_t b1 = (b >> 2) & 1U;
    const std::size_t b2 = (b >> 1) & 1U;
    const std::size_t b3 = b & 1U;
    p(4 * b3 + 2 * b2 + b1, b) = 1.0;
  }
  return p;
}

}  // namespace trispin::spin
