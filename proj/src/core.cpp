#include "profdyn/core.hpp"

#include <utility>

namespace profdyn {

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Element inverse_mod(Element a, Element m) {
  std::int64_t old_r = mod_reduce(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    auto q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) {
    throw DomainError(std::to_string(a) + " is not a unit mod " + std::to_string(m));
  }
  return mod_reduce(old_s, m);
}

Element checked_power(Element p, int k) {
  Element result = 1;
  for (int i = 0; i < k; ++i) {
    if (result > kMaxOrder / p) {
      throw CapacityError(std::to_string(p) + "^" + std::to_string(k) +
                          " exceeds the maximum level order 2^31-1");
    }
    result *= p;
  }
  return result;
}

}  // namespace profdyn
