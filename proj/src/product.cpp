#include "profdyn/product.hpp"

#include <numeric>

#include "profdyn/analysis.hpp"

namespace profdyn {

QuotientOrderSet quotient_order_set(const CompatibleFamily& f) {
  QuotientOrderSet d;
  for (Level i = 0; i <= f.depth(); ++i)
    if (f.tower().order(i) > 1) d.orders.insert(f.tower().order(i));
  return d;
}

ProductVerdict product_ergodicity(const std::vector<CompatibleFamily>& families) {
  if (families.empty()) throw InvalidInput("product needs at least one component");
  ProductVerdict v;
  for (std::size_t c = 0; c < families.size(); ++c) {
    auto e = is_ergodic(families[c]);
    if (!e.ergodic) {
      v.ergodic = false;
      v.ergodicity_failure = ErgodicityFailure{c, *e.failing_level};
      return v;
    }
  }
  std::vector<QuotientOrderSet> sets;
  for (const auto& f : families) sets.push_back(quotient_order_set(f));
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      for (auto n : sets[a].orders)
        for (auto m : sets[b].orders)
          if (auto g = std::gcd(n, m); g != 1) {
            v.ergodic = false;
            v.coprimality_failure = CoprimalityFailure{a, b, n, m, g};
            return v;
          }
  return v;
}

bool crt_minimality_oracle(std::span<const FiniteSystem> systems) {
  if (systems.empty()) throw InvalidInput("oracle needs at least one system");
  Element total = 1;
  for (const auto& s : systems) {
    if (s.size < 1 || static_cast<Element>(s.map.size()) != s.size) throw InvalidInput("map table does not match set size");
    for (auto y : s.map)
      if (y < 0 || y >= s.size) throw InvalidInput("map is not a self-map");
    if (total > kMaxOracleProduct / s.size) throw CapacityError("product set larger than 10^6");
    total *= s.size;
  }

  std::vector<Element> state(systems.size(), 0);
  auto encode = [&] {
    Element x = 0;
    for (std::size_t k = 0; k < systems.size(); ++k) x = x * systems[k].size + state[k];
    return x;
  };
  std::vector<char> visited(static_cast<std::size_t>(total), 0);
  for (Element step = 0; step < total; ++step) {
    auto x = encode();
    if (visited[static_cast<std::size_t>(x)]) return false;
    visited[static_cast<std::size_t>(x)] = 1;
    for (std::size_t k = 0; k < systems.size(); ++k) state[k] = systems[k].map[static_cast<std::size_t>(state[k])];
  }
  // Visited everything in `total` steps; minimal iff the orbit closes up at the origin.
  return encode() == 0;
}

}  // namespace profdyn
