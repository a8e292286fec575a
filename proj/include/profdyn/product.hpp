#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"

namespace profdyn {

/// Orders of the nontrivial quotients a family factors through along its chain.
struct QuotientOrderSet {
  std::set<Element> orders;
};

QuotientOrderSet quotient_order_set(const CompatibleFamily& f);

struct ErgodicityFailure {
  std::size_t component = 0;
  Level level = 0;
};

struct CoprimalityFailure {
  std::size_t first = 0;
  std::size_t second = 0;
  Element first_order = 0;
  Element second_order = 0;
  Element gcd = 0;
  friend bool operator==(const CoprimalityFailure&, const CoprimalityFailure&) = default;
};

struct ProductVerdict {
  bool ergodic = true;
  std::optional<ErgodicityFailure> ergodicity_failure;
  std::optional<CoprimalityFailure> coprimality_failure;
};

/// Every component ergodic and all quotient orders of distinct components coprime.
ProductVerdict product_ergodicity(const std::vector<CompatibleFamily>& families);

struct FiniteSystem {
  Element size = 0;
  std::vector<Element> map;
};

inline constexpr Element kMaxOracleProduct = 1000000;

/// Brute force: builds the product map on the product set and follows the orbit of
/// the origin. Minimal iff that orbit is a single cycle through every point.
bool crt_minimality_oracle(std::span<const FiniteSystem> systems);

}  // namespace profdyn
