#include "profdyn/analysis.hpp"

#include <algorithm>
#include <functional>

namespace profdyn {

namespace {

std::optional<Collision> first_collision(std::span<const Element> table) {
  std::vector<Element> preimage(table.size(), -1);
  for (std::size_t x = 0; x < table.size(); ++x) {
    auto& seen = preimage[static_cast<std::size_t>(table[x])];
    if (seen >= 0) return Collision{seen, static_cast<Element>(x), table[x]};
    seen = static_cast<Element>(x);
  }
  return std::nullopt;
}

std::vector<Rational> counts_to_weights(const std::vector<Element>& counts, Element total) {
  std::vector<Rational> weights;
  weights.reserve(counts.size());
  for (auto c : counts) weights.emplace_back(c, total);
  return weights;
}

bool all_equal(const std::vector<Rational>& w) {
  return std::adjacent_find(w.begin(), w.end(), std::not_equal_to<>()) == w.end();
}

}  // namespace

CycleStructure cycle_structure(std::span<const Element> table) {
  CycleStructure cs;
  cs.order = static_cast<Element>(table.size());
  cs.collision = first_collision(table);
  cs.bijective = !cs.collision.has_value();
  if (!cs.bijective) return cs;
  std::vector<char> seen(table.size(), 0);
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (seen[start]) continue;
    Element length = 0;
    for (auto x = static_cast<Element>(start); !seen[static_cast<std::size_t>(x)]; x = table[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      ++length;
    }
    cs.cycle_lengths.push_back(length);
  }
  std::sort(cs.cycle_lengths.begin(), cs.cycle_lengths.end());
  return cs;
}

CycleStructure cycle_structure(const CompatibleFamily& f, Level i) {
  auto cs = cycle_structure(f.table(i));
  cs.level = i;
  return cs;
}

MeasureVerdict is_measure_preserving(const CompatibleFamily& f) {
  MeasureVerdict v;
  v.certified_depth = f.depth();
  for (Level i = 1; i <= f.depth(); ++i) {
    if (auto c = first_collision(f.table(i))) {
      v.measure_preserving = false;
      v.failing_level = i;
      v.witness = c;
      return v;
    }
  }
  return v;
}

ErgodicVerdict is_ergodic(const CompatibleFamily& f) {
  ErgodicVerdict v;
  v.certified_depth = f.depth();
  for (Level i = 1; i <= f.depth(); ++i) {
    auto cs = cycle_structure(f, i);
    if (!cs.minimal()) {
      v.ergodic = false;
      v.failing_level = i;
      v.cycle_type = cs.cycle_lengths;
      v.witness = cs.collision;
      return v;
    }
  }
  return v;
}

EquivalenceReport equivalence_report(const CompatibleFamily& f) {
  EquivalenceReport report;
  for (Level i = 0; i <= f.depth(); ++i) {
    const auto table = f.table(i);
    const auto n = f.tower().order(i);
    LevelCriteria c;
    c.level = i;
    c.order = n;

    std::vector<Element> counts(static_cast<std::size_t>(n), 0);
    for (auto y : table) ++counts[static_cast<std::size_t>(y)];
    c.surjective = std::none_of(counts.begin(), counts.end(), [](Element k) { return k == 0; });

    c.injective = !first_collision(table).has_value();

    // Bijective: an inverse table exists and inverts on both sides.
    std::vector<Element> inverse(static_cast<std::size_t>(n), 0);
    for (Element x = 0; x < n; ++x) inverse[static_cast<std::size_t>(table[static_cast<std::size_t>(x)])] = x;
    c.bijective = true;
    for (Element x = 0; x < n && c.bijective; ++x) {
      c.bijective = inverse[static_cast<std::size_t>(table[static_cast<std::size_t>(x)])] == x &&
                    table[static_cast<std::size_t>(inverse[static_cast<std::size_t>(x)])] == x;
    }

    c.pushforward = counts_to_weights(counts, n);
    c.uniform_pushforward = all_equal(c.pushforward) && c.pushforward.front() == Rational(1, n);

    if (!c.consistent()) report.disagreements.push_back(i);
    report.levels.push_back(std::move(c));
  }
  return report;
}

std::optional<Obstruction> total_ergodicity_obstruction(const CompatibleFamily& f) {
  for (Level i = 1; i <= f.depth(); ++i) {
    const auto n = f.tower().order(i);
    if (n == 1 || !cycle_structure(f, i).minimal()) continue;
    Obstruction ob{i, n, true};
    for (Element x = 0; x < n && ob.certified; ++x) {
      ob.certified = apply_at_level(f, Point{x, i}, i, static_cast<int>(n)) == x;
    }
    return ob;
  }
  return std::nullopt;
}

std::vector<Element> orbit(const Dynamics& d, Point x, Level i, std::size_t length) {
  return trajectory(d, x, i, length);
}

Equidistribution equidistribution_stats(std::span<const Element> orbit, Level i, const Tower& t) {
  const auto n = t.order(i);
  std::vector<Element> counts(static_cast<std::size_t>(n), 0);
  for (auto y : orbit) {
    if (y < 0 || y >= n) throw InvalidInput("orbit symbol " + std::to_string(y) + " outside level " + std::to_string(i));
    ++counts[static_cast<std::size_t>(y)];
  }
  Equidistribution stats;
  const auto total = static_cast<Element>(orbit.size());
  const Rational uniform(1, n);
  for (auto c : counts) {
    stats.frequencies.push_back(total == 0 ? Rational(0) : Rational(c, total));
    stats.max_deviation = std::max(stats.max_deviation, abs(stats.frequencies.back() - uniform));
  }
  return stats;
}

std::vector<Rational> pushforward_uniform(const CompatibleFamily& f, Level i) {
  const auto n = f.tower().order(i);
  std::vector<Element> counts(static_cast<std::size_t>(n), 0);
  for (auto y : f.table(i)) ++counts[static_cast<std::size_t>(y)];
  return counts_to_weights(counts, n);
}

std::vector<Rational> pushforward_uniform(const PrecisionMap& m, Level i) {
  const auto j = m.required_level(i);
  if (j > m.depth()) throw PrecisionExhausted(j, m.depth());
  const auto inputs = m.tower().order(j);
  std::vector<Element> counts(static_cast<std::size_t>(m.tower().order(i)), 0);
  for (Element x = 0; x < inputs; ++x) ++counts[static_cast<std::size_t>(m.evaluate(x, i))];
  return counts_to_weights(counts, inputs);
}

AnalysisReport analyze(const CompatibleFamily& f) {
  AnalysisReport r;
  r.certified_depth = f.depth();
  r.measure = is_measure_preserving(f);
  r.ergodicity = is_ergodic(f);
  r.measure_preserving = r.measure.measure_preserving;
  r.ergodic = r.ergodicity.ergodic;
  r.obstruction = total_ergodicity_obstruction(f);
  r.totally_ergodic_possible = r.ergodic && !r.obstruction.has_value();
  r.equivalence = equivalence_report(f);
  for (Level i = 0; i <= f.depth(); ++i) r.cycles.push_back(cycle_structure(f, i));
  return r;
}

}  // namespace profdyn
