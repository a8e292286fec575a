#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"
#include "profdyn/tower.hpp"

namespace profdyn {

/// Exact distance 2^-exponent, or zero when exponent is empty.
struct DyadicDistance {
  std::optional<Level> exponent;

  static DyadicDistance zero() { return {}; }
  static DyadicDistance radius(Level k) { return {k}; }

  bool is_zero() const { return !exponent.has_value(); }
  Rational value() const;

  friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;
  friend std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b) {
    if (a.is_zero() || b.is_zero()) return b.is_zero() <=> a.is_zero();
    return *b.exponent <=> *a.exponent;
  }
};

/// Translation-invariant ultrametric on the top level of a tower:
/// d(x, y) = 2^-l with l the least level at which x and y project differently.
class TowerMetric {
 public:
  explicit TowerMetric(Tower tower);

  const Tower& tower() const { return tower_; }
  DyadicDistance operator()(Element x, Element y) const;

 private:
  Tower tower_;
  std::vector<std::vector<Element>> projections_;  // [level][top element]
};

TowerMetric build_metric(const Tower& t);

struct IsometryVerdict {
  bool isometry = true;
  std::optional<std::pair<Element, Element>> witness;
  DyadicDistance distance;        // d(x, y) at the witness
  DyadicDistance image_distance;  // d(Tx, Ty) at the witness
};

/// Exhaustive over top-level pairs x < y, ordered by y then x.
IsometryVerdict verify_isometry(const CompatibleFamily& f, const TowerMetric& m);

struct Triple {
  Element a = 0;
  Element b = 0;
  Element c = 0;
};

/// First (x, y, z) with d(x, z) > max(d(x, y), d(y, z)).
std::optional<Triple> verify_ultrametric(const TowerMetric& m);
/// First (g, x, y) with d(gx, gy) or d(xg, yg) different from d(x, y).
std::optional<Triple> verify_translation_invariance(const TowerMetric& m);

/// {x : d(center, x) <= r}.
std::vector<Element> closed_ball(const TowerMetric& m, Element center, DyadicDistance r);
/// {x : d(center, x) < r}.
std::vector<Element> open_ball(const TowerMetric& m, Element center, DyadicDistance r);

}  // namespace profdyn
