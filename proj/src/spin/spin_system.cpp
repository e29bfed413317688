#include "trispin/spin/spin_system.hpp"

#include <cmath>
#include <stdexcept>

namespace trispin::spin {

std::string_view to_string(Channel c) noexcept {
  return c == Channel::proton ? "proton" : "heteronucleus";
}

SpinSystem SpinSystem::ideal_chain(double j) {
  SpinSystem s;
  s.j12 = j;
  s.j23 = j;
  return s;
}

SpinSystem SpinSystem::acetamide() {
  SpinSystem s;
  s.j12 = 88.8;
  s.j23 = 87.3;
  s.j13 = 2.9;
  s.offsets = {0.0, 0.0, 358.0};
  return s;
}

double SpinSystem::offset(int k) const {
  check_spin_index(k);
  return offsets[k - 1];
}

Channel SpinSystem::channel(int k) const {
  check_spin_index(k);
  return channels[k - 1];
}

SpinSet SpinSystem::spins_on(Channel c) const {
  SpinSet s;
  for (int k = 1; k <= kSpinCount; ++k) {
    if (channels[k - 1] == c) s = s.with(k);
  }
  return s;
}

void SpinSystem::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(j12) || !finite(j23) || !finite(j13)) throw std::invalid_argument("SpinSystem: non-finite coupling");
  for (double o : offsets) {
    if (!finite(o)) throw std::invalid_argument("SpinSystem: non-finite offset");
  }
}

}  // namespace trispin::spin
