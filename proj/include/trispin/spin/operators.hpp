#pragma once

#include <initializer_list>
#include <string_view>
#include <utility>

#include "trispin/linalg/complex_matrix.hpp"
#include "trispin/spin/spin_set.hpp"
#include "trispin/spin/spin_system.hpp"

namespace trispin::spin {

using linalg::ComplexMatrix;

enum class Axis { x, y, z };

std::string_view to_string(Axis a) noexcept;

/// Hilbert-space dimension of the three-spin system.
inline constexpr std::size_t kDim = 8;

// Basis convention: spin 1 is the leftmost Kronecker factor, basis index
// b = 4*b1 + 2*b2 + b3, and bit value 0 is the m = +1/2 (up) state.

/// I_{k,axis} = sigma_axis / 2 embedded at position k.
ComplexMatrix spin_operator(int k, Axis axis);

/// Product operator 2^(n-1) * prod I_{k,axis}, e.g. {{1, x}, {2, z}} -> 2 I1x I2z.
ComplexMatrix product_operator(std::initializer_list<std::pair<int, Axis>> factors);

/// 2 pi (J12 I1z I2z + J23 I2z I3z + J13 I1z I3z), rad/s.
ComplexMatrix coupling_hamiltonian(const SpinSystem& sys);

/// 2 pi sum_k nu_k I_kz, rad/s.
ComplexMatrix offset_hamiltonian(const SpinSystem& sys);

/// Coupling plus offset terms, rad/s. Diagonal in the product basis.
ComplexMatrix free_hamiltonian(const SpinSystem& sys);

/// 2 pi amplitude sum_{k in targets} (I_kx cos(phase) + I_ky sin(phase)), rad/s.
/// Throws std::invalid_argument for an empty target set.
ComplexMatrix rf_hamiltonian(SpinSet targets, double amplitude_hz, double phase);

/// exp(-i flip sum_{k in targets} (I_kx cos(phase) + I_ky sin(phase))), built from closed-form
/// single-spin rotations.
ComplexMatrix rotation(SpinSet targets, double flip, double phase);

/// exp(-i angle I_kz).
ComplexMatrix z_rotation(int k, double angle);

/// exp(-i 2 pi kappa I1a I2b I3c).
ComplexMatrix target_trilinear(Axis a, Axis b, Axis c, double kappa);

/// Permutation |b1 b2 b3> -> |b3 b2 b1>.
ComplexMatrix swap13_target();

}  // namespace trispin::spin
