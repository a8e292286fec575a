#include "profdyn/metric.hpp"

#include <algorithm>

namespace profdyn {

Rational DyadicDistance::value() const {
  if (is_zero()) return Rational(0);
  return Rational(1, Element{1} << *exponent);
}

TowerMetric::TowerMetric(Tower tower) : tower_(std::move(tower)) {
  const auto top = tower_.depth();
  const auto n = tower_.top_order();
  if (n > kMaxTableOrder) throw CapacityError("tower too large for a tabulated metric");
  projections_.assign(static_cast<std::size_t>(top + 1), std::vector<Element>(static_cast<std::size_t>(n)));
  for (Level k = 0; k <= top; ++k)
    for (Element x = 0; x < n; ++x) projections_[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)] = project(tower_, x, top, k);
}

DyadicDistance TowerMetric::operator()(Element x, Element y) const {
  for (std::size_t k = 0; k < projections_.size(); ++k) {
    if (projections_[k][static_cast<std::size_t>(x)] != projections_[k][static_cast<std::size_t>(y)]) {
      return DyadicDistance::radius(static_cast<Level>(k));
    }
  }
  return DyadicDistance::zero();
}

TowerMetric build_metric(const Tower& t) { return TowerMetric(t); }

IsometryVerdict verify_isometry(const CompatibleFamily& f, const TowerMetric& m) {
  const auto top = f.depth();
  if (m.tower().depth() != top || m.tower().top_order() != f.tower().top_order()) {
    throw InvalidInput("metric and family live on different towers");
  }
  const auto table = f.table(top);
  const auto n = f.tower().top_order();
  for (Element y = 1; y < n; ++y) {
    for (Element x = 0; x < y; ++x) {
      auto before = m(x, y);
      auto after = m(table[static_cast<std::size_t>(x)], table[static_cast<std::size_t>(y)]);
      if (before != after) return {false, std::pair{x, y}, before, after};
    }
  }
  return {};
}

std::optional<Triple> verify_ultrametric(const TowerMetric& m) {
  const auto n = m.tower().top_order();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (m(x, z) > std::max(m(x, y), m(y, z))) return Triple{x, y, z};
  return std::nullopt;
}

std::optional<Triple> verify_translation_invariance(const TowerMetric& m) {
  const auto& g = m.tower().level(m.tower().depth());
  const auto n = g.order();
  for (Element s = 0; s < n; ++s)
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        auto d = m(x, y);
        if (m(g.op(s, x), g.op(s, y)) != d || m(g.op(x, s), g.op(y, s)) != d) return Triple{s, x, y};
      }
  return std::nullopt;
}

std::vector<Element> closed_ball(const TowerMetric& m, Element center, DyadicDistance r) {
  std::vector<Element> ball;
  for (Element x = 0; x < m.tower().top_order(); ++x)
    if (m(center, x) <= r) ball.push_back(x);
  return ball;
}

std::vector<Element> open_ball(const TowerMetric& m, Element center, DyadicDistance r) {
  std::vector<Element> ball;
  for (Element x = 0; x < m.tower().top_order(); ++x)
    if (m(center, x) < r) ball.push_back(x);
  return ball;
}

}  // namespace profdyn
