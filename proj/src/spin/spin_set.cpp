#include "trispin/spin/spin_set.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace trispin::spin {

void check_spin_index(int k) {
  if (k < 1 || k > kSpinCount) throw std::out_of_range("spin index out of range: " + std::to_string(k));
}

SpinSet::SpinSet(std::initializer_list<int> spins) {
  for (int k : spins) {
    check_spin_index(k);
    bits_ |= static_cast<std::uint8_t>(1U << (k - 1));
  }
}

SpinSet SpinSet::from_bits(std::uint8_t bits) {
  if (bits >= (1U << kSpinCount)) throw std::out_of_range("SpinSet: bit pattern has unknown spins");
  SpinSet s;
  s.bits_ = bits;
  return s;
}

int SpinSet::count() const noexcept { return std::popcount(bits_); }

std::vector<int> SpinSet::members() const {
  std::vector<int> out;
  for (int k = 1; k <= kSpinCount; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

SpinSet SpinSet::with(int k) const {
  check_spin_index(k);
  return from_bits(static_cast<std::uint8_t>(bits_ | (1U << (k - 1))));
}

std::string SpinSet::to_string() const {
  std::string out;
  for (int k : members()) {
    if (!out.empty()) out += ',';
    out += static_cast<char>('0' + k);
  }
  return out;
}

SpinSet SpinSet::parse(std::string_view text) {
  SpinSet s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    int k = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw std::invalid_argument("bad spin list '" + std::string(text) + "'");
    }
    s = s.with(k);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return s;
}

}  // namespace trispin::spin
