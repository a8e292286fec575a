#include "profdyn/maps.hpp"

#include <algorithm>

namespace profdyn {

namespace {

void check_point(const Tower& t, Point x, Level i) {
  if (x.level < 0 || x.level > t.depth()) {
    throw InvalidInput("point level " + std::to_string(x.level) + " outside the tower");
  }
  if (x.value < 0 || x.value >= t.order(x.level)) {
    throw InvalidInput("element " + std::to_string(x.value) + " out of range at level " +
                       std::to_string(x.level));
  }
  if (i < 0 || i > t.depth()) throw InvalidInput("level " + std::to_string(i) + " outside the tower");
}

bool is_prime(Element p) {
  if (p < 2) return false;
  for (Element d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

CompatibilityError::CompatibilityError(CompatibilityWitness w)
    : Error("incompatible level maps at level " + std::to_string(w.level) + ", element " +
            std::to_string(w.element) + " of level " + std::to_string(w.level + 1)),
      witness(w) {}

// ---------------------------------------------------------------------------
// CompatibleFamily

CompatibleFamily::CompatibleFamily(Tower tower, std::vector<std::vector<Element>> tables, std::string name)
    : tower_(std::move(tower)), tables_(std::move(tables)), name_(std::move(name)) {
  const auto depth = static_cast<std::size_t>(tower_.depth());
  if (tables_.size() == depth) tables_.insert(tables_.begin(), std::vector<Element>{0});
  if (tables_.size() != depth + 1) {
    throw InvalidInput("expected " + std::to_string(depth) + " level tables, got " +
                       std::to_string(tables_.size()));
  }
  for (Level i = 0; i <= tower_.depth(); ++i) {
    const auto n = tower_.order(i);
    const auto& table = tables_[static_cast<std::size_t>(i)];
    if (static_cast<Element>(table.size()) != n) {
      throw InvalidInput("level " + std::to_string(i) + " table has " + std::to_string(table.size()) +
                         " entries, expected " + std::to_string(n));
    }
    for (auto y : table) {
      if (y < 0 || y >= n) throw InvalidInput("level " + std::to_string(i) + " table entry out of range");
    }
  }
  if (auto w = check_compatibility(tower_, tables_)) throw CompatibilityError(*w);
}

std::span<const Element> CompatibleFamily::table(Level i) const {
  tower_.level(i);
  return tables_[static_cast<std::size_t>(i)];
}

CompatibleFamily CompatibleFamily::padded_to(Level target_depth) const {
  if (target_depth <= depth()) return *this;
  auto tables = tables_;
  while (static_cast<Level>(tables.size()) <= target_depth) tables.push_back(tables_.back());
  return CompatibleFamily(tower_.padded_to(target_depth), std::move(tables), name_);
}

std::optional<CompatibilityWitness> check_compatibility(const Tower& t,
                                                        const std::vector<std::vector<Element>>& tables) {
  for (Level i = 0; i < t.depth(); ++i) {
    const auto& lower = tables[static_cast<std::size_t>(i)];
    const auto& upper = tables[static_cast<std::size_t>(i + 1)];
    const auto& down = t.transition(i + 1);
    for (Element x = 0; x < t.order(i + 1); ++x) {
      if (down(upper[static_cast<std::size_t>(x)]) != lower[static_cast<std::size_t>(down(x))]) {
        return CompatibilityWitness{i, x};
      }
    }
  }
  return std::nullopt;
}

std::optional<CompatibilityWitness> check_compatibility(const CompatibleFamily& f) {
  std::vector<std::vector<Element>> tables;
  for (Level i = 0; i <= f.depth(); ++i) {
    auto row = f.table(i);
    tables.emplace_back(row.begin(), row.end());
  }
  return check_compatibility(f.tower(), tables);
}

CompatibleFamily tabulate(const Tower& t, const std::function<Element(Element, Level)>& rule, std::string name) {
  std::vector<std::vector<Element>> tables;
  for (Level i = 0; i <= t.depth(); ++i) {
    const auto n = t.order(i);
    if (n > kMaxTableOrder) {
      throw CapacityError("level " + std::to_string(i) + " order " + std::to_string(n) +
                          " is too large to tabulate");
    }
    std::vector<Element> table(static_cast<std::size_t>(n));
    for (Element x = 0; x < n; ++x) table[static_cast<std::size_t>(x)] = rule(x, i);
    tables.push_back(std::move(table));
  }
  return CompatibleFamily(t, std::move(tables), std::move(name));
}

CompatibleFamily from_polynomial(const Tower& t, std::span<const std::int64_t> coeffs) {
  if (t.kind() != Tower::Kind::Cyclic) throw UnsupportedError("polynomial maps need a cyclic tower");
  if (coeffs.empty()) throw InvalidInput("polynomial needs at least one coefficient");
  std::vector<std::int64_t> c(coeffs.begin(), coeffs.end());
  return tabulate(
      t,
      [&](Element x, Level i) {
        const auto n = t.order(i);
        Element acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
          acc = mod_reduce(mul_mod(acc, x, n) + mod_reduce(*it, n), n);
        }
        return acc;
      },
      "polynomial");
}

CompatibleFamily from_level_tables(const Tower& t, std::vector<std::vector<Element>> tables) {
  return CompatibleFamily(t, std::move(tables), "tables");
}

CompatibleFamily from_matrix(const Tower& t, const IntMatrix& m) {
  const auto& comps = t.components();
  const auto k = static_cast<Eigen::Index>(comps.size());
  if (t.kind() != Tower::Kind::Product || k == 0) {
    throw UnsupportedError("matrix maps need a product of cyclic towers");
  }
  if (m.rows() != k || m.cols() != k) {
    throw InvalidInput("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       " but the tower has " + std::to_string(k) + " components");
  }
  for (const auto& c : comps) {
    if (c.kind() != Tower::Kind::Cyclic || c.base() != comps.front().base() || c.depth() != t.depth()) {
      throw UnsupportedError("matrix maps need equal cyclic components of the same base and depth");
    }
  }
  return tabulate(
      t,
      [&](Element x, Level i) {
        const auto n = comps.front().order(i);
        const auto digits = t.level(i).decode(x);
        std::vector<Element> image(static_cast<std::size_t>(k), 0);
        for (Eigen::Index r = 0; r < k; ++r) {
          Element acc = 0;
          for (Eigen::Index c = 0; c < k; ++c) {
            acc = (acc + mul_mod(mod_reduce(m(r, c), n), digits[static_cast<std::size_t>(c)], n)) % n;
          }
          image[static_cast<std::size_t>(r)] = acc;
        }
        return t.level(i).encode(image);
      },
      "matrix");
}

CompatibleFamily from_matrix(Element p, Level depth, const IntMatrix& m) {
  std::vector<Tower> comps(static_cast<std::size_t>(m.rows()), make_cyclic_tower(p, depth));
  return from_matrix(make_product_tower(std::move(comps)), m);
}

CompatibleFamily product_map(const std::vector<CompatibleFamily>& families) {
  if (families.empty()) throw InvalidInput("product map needs at least one family");
  Level depth = 0;
  for (const auto& f : families) depth = std::max(depth, f.depth());
  std::vector<CompatibleFamily> padded;
  std::vector<Tower> towers;
  for (const auto& f : families) {
    padded.push_back(f.padded_to(depth));
    towers.push_back(padded.back().tower());
  }
  const auto t = make_product_tower(std::move(towers));
  return tabulate(
      t,
      [&](Element x, Level i) {
        auto digits = t.level(i).decode(x);
        for (std::size_t c = 0; c < padded.size(); ++c) digits[c] = padded[c](digits[c], i);
        return t.level(i).encode(digits);
      },
      "product");
}

// ---------------------------------------------------------------------------
// PrecisionMap

PrecisionMap::PrecisionMap(Tower tower, Contract contract, Evaluator evaluate, std::string name)
    : tower_(std::move(tower)), contract_(std::move(contract)), evaluate_(std::move(evaluate)), name_(std::move(name)) {
  Level previous = 0;
  for (Level i = 0; i <= tower_.depth(); ++i) {
    const auto j = contract_(i);
    if (j < i || j < previous) throw InvalidInput("precision contract must satisfy j(i) >= i and be monotone");
    previous = j;
  }
}

Element PrecisionMap::evaluate(Element x, Level i) const {
  const auto j = contract_(i);
  if (j > depth()) throw PrecisionExhausted(j, depth());
  if (x < 0 || x >= tower_.order(j)) {
    throw InvalidInput("element " + std::to_string(x) + " out of range at level " + std::to_string(j));
  }
  return evaluate_(x, i);
}

PrecisionMap shift_map(const Tower& t) {
  const auto p = t.base();
  return PrecisionMap(
      t, [](Level i) { return i + 1; },
      [p](Element x, Level) { return x / p; }, "shift");
}

PrecisionMap binomial_map(const Tower& t) {
  const auto p = t.base();
  if (!is_prime(p)) throw InvalidInput("binomial map needs a prime base");
  Element unit = 1;  // (p-1)!, the unit part of p!
  for (Element k = 2; k < p; ++k) unit *= k;
  return PrecisionMap(
      t, [](Level i) { return i + 1; },
      [t, p, unit](Element x, Level i) -> Element {
        if (i == 0) return 0;
        const auto wide = t.order(i + 1);
        const auto n = t.order(i);
        Element numerator = 1;
        for (Element k = 0; k < p; ++k) numerator = mul_mod(numerator, mod_reduce(x - k, wide), wide);
        // p consecutive integers contain a multiple of p, so this division is exact.
        return mul_mod((numerator / p) % n, inverse_mod(unit % n, n), n);
      },
      "binomial");
}

std::vector<Level> precision_chain(const PrecisionMap& m, Level i, int k) {
  std::vector<Level> chain{i};
  for (int s = 0; s < k; ++s) chain.push_back(m.required_level(chain.back()));
  return chain;
}

std::optional<CoherenceWitness> check_coherence(const PrecisionMap& m, Element exhaustive_limit) {
  const auto& t = m.tower();
  for (Level i = 1; i <= m.depth(); ++i) {
    const auto j = m.required_level(i);
    if (j > m.depth() || t.order(j) > exhaustive_limit) continue;
    for (Level lower = 0; lower < i; ++lower) {
      const auto j_lower = m.required_level(lower);
      for (Element x = 0; x < t.order(j); ++x) {
        auto projected = project(t, m.evaluate(x, i), i, lower);
        if (projected != m.evaluate(project(t, x, j, j_lower), lower)) return CoherenceWitness{i, lower, x};
      }
    }
  }
  return std::nullopt;
}

const Tower& tower_of(const Dynamics& d) {
  return std::visit([](const auto& m) -> const Tower& { return m.tower(); }, d);
}

// ---------------------------------------------------------------------------
// Iteration

Element apply_at_level(const CompatibleFamily& f, Point x, Level i, int k) {
  check_point(f.tower(), x, i);
  if (x.level < i) throw PrecisionExhausted(i, x.level);
  auto y = project(f.tower(), x.value, x.level, i);
  for (int s = 0; s < k; ++s) y = f(y, i);
  return y;
}

Element apply_at_level(const PrecisionMap& m, Point x, Level i, int k) {
  check_point(m.tower(), x, i);
  const auto chain = precision_chain(m, i, k);
  const auto needed = chain.back();
  if (needed > m.depth()) throw PrecisionExhausted(needed, m.depth());
  if (needed > x.level) throw PrecisionExhausted(needed, x.level);
  auto y = project(m.tower(), x.value, x.level, needed);
  for (int s = k; s-- > 0;) y = m.evaluate(y, chain[static_cast<std::size_t>(s)]);
  return y;
}

Element apply_at_level(const Dynamics& d, Point x, Level i, int k) {
  return std::visit([&](const auto& m) { return apply_at_level(m, x, i, k); }, d);
}

std::vector<Element> trajectory(const CompatibleFamily& f, Point x, Level i, std::size_t length) {
  check_point(f.tower(), x, i);
  if (x.level < i) throw PrecisionExhausted(i, x.level);
  std::vector<Element> out;
  out.reserve(length);
  auto y = project(f.tower(), x.value, x.level, i);
  for (std::size_t s = 0; s < length; ++s) {
    out.push_back(y);
    y = f(y, i);
  }
  return out;
}

std::vector<Element> trajectory(const PrecisionMap& m, Point x, Level i, std::size_t length) {
  check_point(m.tower(), x, i);
  if (length == 0) return {};
  const auto chain = precision_chain(m, i, static_cast<int>(length) - 1);
  const auto needed = chain.back();
  if (needed > m.depth()) throw PrecisionExhausted(needed, m.depth());
  if (needed > x.level) throw PrecisionExhausted(needed, x.level);
  // Walk down the chain: after s steps y is T^s(x) known at level chain[length-1-s].
  std::vector<Element> out;
  out.reserve(length);
  auto y = project(m.tower(), x.value, x.level, needed);
  for (std::size_t s = 0; s < length; ++s) {
    const auto at = chain[length - 1 - s];
    out.push_back(project(m.tower(), y, at, i));
    if (s + 1 < length) y = m.evaluate(y, chain[length - 2 - s]);
  }
  return out;
}

std::vector<Element> trajectory(const Dynamics& d, Point x, Level i, std::size_t length) {
  return std::visit([&](const auto& m) { return trajectory(m, x, i, length); }, d);
}

Level trajectory_input_level(const Dynamics& d, Level i, std::size_t length) {
  if (const auto* m = std::get_if<PrecisionMap>(&d)) {
    if (length == 0) return i;
    return precision_chain(*m, i, static_cast<int>(length) - 1).back();
  }
  return i;
}

}  // namespace profdyn
