#pragma once

#include <array>
#include <string_view>

#include "trispin/spin/spin_set.hpp"

namespace trispin::spin {

/// Transmitter channel a spin is addressed on.
enum class Channel { proton, heteronucleus };

std::string_view to_string(Channel c) noexcept;

using ChannelMap = std::array<Channel, kSpinCount>;

/// Spins 1 and 3 on the proton channel, spin 2 on the heteronucleus channel.
inline constexpr ChannelMap kDefaultChannels{Channel::proton, Channel::heteronucleus, Channel::proton};

/// Weakly coupled three-spin chain in the multiple-rotating frame.
/// Couplings and offsets are in Hz.
struct SpinSystem {
  double j12 = 0.0;
  double j23 = 0.0;
  double j13 = 0.0;
  std::array<double, kSpinCount> offsets{};
  ChannelMap channels = kDefaultChannels;

  /// J12 = J23 = j, J13 = 0, all spins on resonance.
  static SpinSystem ideal_chain(double j);

  /// Amino group of 15N-acetamide: J12 = 88.8, J23 = 87.3, J13 = 2.9 Hz, proton 1 on resonance
  /// and proton 3 offset by 358 Hz.
  static SpinSystem acetamide();

  double offset(int k) const;
  Channel channel(int k) const;
  SpinSet spins_on(Channel c) const;

  /// Throws std::invalid_argument on non-finite parameters.
  void validate() const;
};

}  // namespace trispin::spin
