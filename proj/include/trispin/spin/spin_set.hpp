#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace trispin::spin {

inline constexpr int kSpinCount = 3;

/// Throws std::out_of_range unless 1 <= k <= 3.
void check_spin_index(int k);

/// Subset of the three spins, indexed 1..3.
class SpinSet {
 public:
  constexpr SpinSet() = default;
  SpinSet(std::initializer_list<int> spins);

  static SpinSet all() { return SpinSet{1, 2, 3}; }
  static SpinSet from_bits(std::uint8_t bits);

  bool contains(int k) const noexcept { return k >= 1 && k <= kSpinCount && (bits_ >> (k - 1)) & 1U; }
  bool empty() const noexcept { return bits_ == 0; }
  int count() const noexcept;
  std::uint8_t bits() const noexcept { return bits_; }
  std::vector<int> members() const;

  SpinSet with(int k) const;

  /// "1,3"
  std::string to_string() const;
  /// Parses "1,3"; throws std::invalid_argument / std::out_of_range.
  static SpinSet parse(std::string_view text);

  friend bool operator==(SpinSet, SpinSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace trispin::spin
