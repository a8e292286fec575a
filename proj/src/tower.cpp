#include "profdyn/tower.hpp"

#include <algorithm>
#include <numeric>

namespace profdyn {

namespace {

void check_element(Element x, Element order) {
  if (x < 0 || x >= order) {
    throw InvalidInput("element " + std::to_string(x) + " out of range for order " +
                       std::to_string(order));
  }
}

std::vector<Element> decode_radix(Element x, const std::vector<Element>& radices) {
  std::vector<Element> digits(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    digits[k] = x % radices[k];
    x /= radices[k];
  }
  return digits;
}

Element encode_radix(std::span<const Element> digits, const std::vector<Element>& radices) {
  Element x = 0;
  for (std::size_t k = 0; k < radices.size(); ++k) {
    x = x * radices[k] + digits[k];
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteQuotient

FiniteQuotient FiniteQuotient::cyclic(Element n) {
  if (n < 1) throw InvalidInput("cyclic group order must be positive");
  if (n > kMaxOrder) throw CapacityError("cyclic group order exceeds 2^31-1");
  FiniteQuotient q;
  q.kind_ = Kind::Cyclic;
  q.order_ = n;
  return q;
}

FiniteQuotient FiniteQuotient::direct_product(std::vector<FiniteQuotient> components) {
  if (components.empty()) throw InvalidInput("direct product of no components");
  FiniteQuotient q;
  q.kind_ = Kind::DirectProduct;
  q.order_ = 1;
  for (const auto& c : components) {
    if (q.order_ > kMaxOrder / c.order()) {
      throw CapacityError("direct product order exceeds 2^31-1");
    }
    q.order_ *= c.order();
  }
  std::vector<Element> identity_digits;
  for (const auto& c : components) identity_digits.push_back(c.identity());
  q.components_ = std::move(components);
  q.identity_ = q.encode(identity_digits);
  return q;
}

FiniteQuotient FiniteQuotient::from_table(const std::vector<std::vector<Element>>& table) {
  const auto n = static_cast<Element>(table.size());
  if (n < 1) throw InvalidInput("empty operation table");
  if (n > kMaxTableKindOrder) throw CapacityError("operation table larger than 4096");
  FiniteQuotient q;
  q.kind_ = Kind::Table;
  q.order_ = n;
  q.table_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : table) {
    if (static_cast<Element>(row.size()) != n) throw InvalidInput("operation table is not square");
    for (auto v : row) {
      if (v < 0 || v >= n) throw InvalidInput("operation table entry out of range");
      q.table_.push_back(v);
    }
  }
  auto at = [&](Element x, Element y) { return q.table_[static_cast<std::size_t>(x * n + y)]; };

  Element identity = -1;
  for (Element e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw InvalidInput("operation table has no two-sided identity");
  q.identity_ = identity;

  q.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (at(x, y) == identity && at(y, x) == identity) {
        q.inverse_[static_cast<std::size_t>(x)] = y;
        break;
      }
    }
    if (q.inverse_[static_cast<std::size_t>(x)] < 0) {
      throw InvalidInput("element " + std::to_string(x) + " has no two-sided inverse");
    }
  }

  if (n <= kMaxAssociativityCheck) {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z)
          if (at(at(x, y), z) != at(x, at(y, z))) {
            throw InvalidInput("operation table is not associative at (" + std::to_string(x) + "," +
                               std::to_string(y) + "," + std::to_string(z) + ")");
          }
  }
  return q;
}

Element FiniteQuotient::op(Element x, Element y) const {
  switch (kind_) {
    case Kind::Cyclic: {
      auto s = x + y;
      return s >= order_ ? s - order_ : s;
    }
    case Kind::Table:
      return table_[static_cast<std::size_t>(x * order_ + y)];
    case Kind::DirectProduct: {
      auto a = decode(x);
      auto b = decode(y);
      for (std::size_t k = 0; k < components_.size(); ++k) a[k] = components_[k].op(a[k], b[k]);
      return encode(a);
    }
  }
  return 0;
}

Element FiniteQuotient::inv(Element x) const {
  switch (kind_) {
    case Kind::Cyclic:
      return x == 0 ? 0 : order_ - x;
    case Kind::Table:
      return inverse_[static_cast<std::size_t>(x)];
    case Kind::DirectProduct: {
      auto a = decode(x);
      for (std::size_t k = 0; k < components_.size(); ++k) a[k] = components_[k].inv(a[k]);
      return encode(a);
    }
  }
  return 0;
}

std::vector<Element> FiniteQuotient::decode(Element x) const {
  if (kind_ != Kind::DirectProduct) return {x};
  std::vector<Element> digits(components_.size());
  for (std::size_t k = components_.size(); k-- > 0;) {
    digits[k] = x % components_[k].order();
    x /= components_[k].order();
  }
  return digits;
}

Element FiniteQuotient::encode(std::span<const Element> digits) const {
  if (kind_ != Kind::DirectProduct) return digits.front();
  if (digits.size() != components_.size()) throw InvalidInput("wrong number of product digits");
  Element x = 0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    check_element(digits[k], components_[k].order());
    x = x * components_[k].order() + digits[k];
  }
  return x;
}

std::vector<std::vector<Element>> FiniteQuotient::operation_table() const {
  std::vector<std::vector<Element>> table(static_cast<std::size_t>(order_),
                                          std::vector<Element>(static_cast<std::size_t>(order_)));
  for (Element x = 0; x < order_; ++x)
    for (Element y = 0; y < order_; ++y)
      table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = op(x, y);
  return table;
}

// ---------------------------------------------------------------------------
// TransitionMap

TransitionMap TransitionMap::reduction(Level source, Element target_order) {
  TransitionMap m;
  m.rule_ = Rule::Reduction;
  m.source_ = source;
  m.modulus_ = target_order;
  return m;
}

TransitionMap TransitionMap::identity(Level source) {
  TransitionMap m;
  m.rule_ = Rule::Identity;
  m.source_ = source;
  return m;
}

TransitionMap TransitionMap::componentwise(Level source, std::vector<TransitionMap> parts,
                                           std::vector<Element> source_radices,
                                           std::vector<Element> target_radices) {
  TransitionMap m;
  m.rule_ = Rule::Componentwise;
  m.source_ = source;
  m.parts_ = std::move(parts);
  m.source_radices_ = std::move(source_radices);
  m.target_radices_ = std::move(target_radices);
  return m;
}

TransitionMap TransitionMap::from_table(Level source, std::vector<Element> table) {
  TransitionMap m;
  m.rule_ = Rule::Table;
  m.source_ = source;
  m.table_ = std::move(table);
  return m;
}

Element TransitionMap::operator()(Element x) const {
  switch (rule_) {
    case Rule::Reduction:
      return x % modulus_;
    case Rule::Identity:
      return x;
    case Rule::Table:
      return table_.at(static_cast<std::size_t>(x));
    case Rule::Componentwise: {
      auto digits = decode_radix(x, source_radices_);
      for (std::size_t k = 0; k < parts_.size(); ++k) digits[k] = parts_[k](digits[k]);
      return encode_radix(digits, target_radices_);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Tower

Tower Tower::cyclic(Element p, Level depth) {
  if (p < 2) throw InvalidInput("cyclic tower base must be at least 2");
  if (depth < 1) throw InvalidInput("tower depth must be at least 1");
  Tower t;
  t.kind_ = Kind::Cyclic;
  t.base_ = p;
  t.levels_.push_back(FiniteQuotient::cyclic(1));
  for (Level k = 1; k <= depth; ++k) {
    t.levels_.push_back(FiniteQuotient::cyclic(checked_power(p, k)));
    t.transitions_.push_back(TransitionMap::reduction(k, t.levels_[static_cast<std::size_t>(k - 1)].order()));
  }
  return t;
}

Tower Tower::product(std::vector<Tower> components) {
  if (components.empty()) throw InvalidInput("product tower needs at least one component");
  Level depth = 0;
  for (const auto& c : components) depth = std::max(depth, c.depth());
  for (auto& c : components) c = c.padded_to(depth);

  Tower t;
  t.kind_ = Kind::Product;
  for (Level k = 0; k <= depth; ++k) {
    std::vector<FiniteQuotient> parts;
    for (const auto& c : components) parts.push_back(c.level(k));
    t.levels_.push_back(FiniteQuotient::direct_product(std::move(parts)));
  }
  for (Level k = 1; k <= depth; ++k) {
    std::vector<TransitionMap> parts;
    std::vector<Element> source_radices;
    std::vector<Element> target_radices;
    for (const auto& c : components) {
      parts.push_back(c.transition(k));
      source_radices.push_back(c.order(k));
      target_radices.push_back(c.order(k - 1));
    }
    t.transitions_.push_back(TransitionMap::componentwise(k, std::move(parts), std::move(source_radices),
                                                          std::move(target_radices)));
  }
  t.components_ = std::move(components);
  return t;
}

Tower Tower::assemble(std::vector<FiniteQuotient> levels, std::vector<TransitionMap> transitions) {
  if (levels.empty()) throw InvalidInput("tower needs at least level 0");
  if (transitions.size() + 1 != levels.size()) {
    throw InvalidInput("tower needs exactly one transition per adjacent pair of levels");
  }
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    if (transitions[k].source_level() != static_cast<Level>(k + 1)) {
      throw InvalidInput("transition " + std::to_string(k) + " has the wrong source level");
    }
  }
  Tower t;
  t.kind_ = Kind::Generic;
  t.levels_ = std::move(levels);
  t.transitions_ = std::move(transitions);
  return t;
}

const FiniteQuotient& Tower::level(Level k) const {
  if (k < 0 || k > depth()) {
    throw InvalidInput("level " + std::to_string(k) + " outside 0.." + std::to_string(depth()));
  }
  return levels_[static_cast<std::size_t>(k)];
}

const TransitionMap& Tower::transition(Level k) const {
  if (k < 1 || k > depth()) {
    throw InvalidInput("no transition out of level " + std::to_string(k));
  }
  return transitions_[static_cast<std::size_t>(k - 1)];
}

Element Tower::base() const {
  if (kind_ != Kind::Cyclic) throw UnsupportedError("tower is not cyclic");
  return base_;
}

Tower Tower::padded_to(Level target_depth) const {
  if (target_depth <= depth()) return *this;
  Tower t = *this;
  for (Level k = depth() + 1; k <= target_depth; ++k) {
    t.levels_.push_back(levels_.back());
    if (kind_ == Kind::Product) {
      // Keep the componentwise rule so product projections stay decodable.
      std::vector<TransitionMap> parts;
      std::vector<Element> radices;
      for (auto& c : t.components_) {
        c = c.padded_to(target_depth);
        parts.push_back(c.transition(k));
        radices.push_back(c.order(k));
      }
      t.transitions_.push_back(TransitionMap::componentwise(k, std::move(parts), radices, radices));
    } else {
      t.transitions_.push_back(TransitionMap::identity(k));
    }
  }
  return t;
}

Tower make_cyclic_tower(Element p, Level depth) { return Tower::cyclic(p, depth); }

Tower make_product_tower(std::vector<Tower> components) { return Tower::product(std::move(components)); }

Element project_stepwise(const Tower& t, Element x, Level from, Level to) {
  if (to > from) {
    throw InvalidInput("invalid level order: cannot project level " + std::to_string(from) +
                       " to level " + std::to_string(to));
  }
  check_element(x, t.order(from));
  t.level(to);
  for (Level k = from; k > to; --k) x = t.transition(k)(x);
  return x;
}

Element project(const Tower& t, Element x, Level from, Level to) {
  if (to > from) {
    throw InvalidInput("invalid level order: cannot project level " + std::to_string(from) +
                       " to level " + std::to_string(to));
  }
  check_element(x, t.order(from));
  switch (t.kind()) {
    case Tower::Kind::Cyclic:
      return x % t.order(to);
    case Tower::Kind::Product: {
      auto digits = t.level(from).decode(x);
      const auto& comps = t.components();
      for (std::size_t k = 0; k < comps.size(); ++k) digits[k] = project(comps[k], digits[k], from, to);
      return t.level(to).encode(digits);
    }
    case Tower::Kind::Generic:
      break;
  }
  return project_stepwise(t, x, from, to);
}

TowerReport verify_tower(const Tower& t, Element exhaustive_limit) {
  TowerReport report;
  if (t.order(0) != 1) {
    report.violations.push_back({TowerViolation::Kind::LevelZeroNotTrivial, 0, 0, 0, 0});
  }
  for (Level j = 1; j <= t.depth(); ++j) {
    const auto& src = t.level(j);
    const auto& dst = t.level(j - 1);
    const auto& map = t.transition(j);
    const Element n = src.order();

    std::vector<Element> image(static_cast<std::size_t>(n));
    std::vector<char> hit(static_cast<std::size_t>(dst.order()), 0);
    bool in_range = true;
    for (Element x = 0; x < n; ++x) {
      auto y = map(x);
      if (y < 0 || y >= dst.order()) {
        in_range = false;
        report.violations.push_back({TowerViolation::Kind::NotHomomorphism, j, j - 1, x, x});
        break;
      }
      image[static_cast<std::size_t>(x)] = y;
      hit[static_cast<std::size_t>(y)] = 1;
    }
    if (!in_range) continue;

    if (n <= exhaustive_limit) {
      bool found = false;
      for (Element x = 0; x < n && !found; ++x) {
        for (Element y = 0; y < n && !found; ++y) {
          if (image[static_cast<std::size_t>(src.op(x, y))] !=
              dst.op(image[static_cast<std::size_t>(x)], image[static_cast<std::size_t>(y)])) {
            report.violations.push_back({TowerViolation::Kind::NotHomomorphism, j, j - 1, x, y});
            found = true;
          }
        }
      }
    } else {
      report.unchecked_levels.push_back(j);
    }

    auto missing = std::find(hit.begin(), hit.end(), 0);
    if (missing != hit.end()) {
      report.violations.push_back(
          {TowerViolation::Kind::NotSurjective, j, j - 1, static_cast<Element>(missing - hit.begin()), 0});
    }
  }

  // project() may shortcut through the chain; it must agree with every factorization.
  if (report.clean()) {
    for (Level j = 2; j <= t.depth(); ++j) {
      if (t.order(j) > exhaustive_limit) continue;
      for (Level mid = 1; mid < j; ++mid) {
        for (Level i = 0; i < mid; ++i) {
          for (Element x = 0; x < t.order(j); ++x) {
            auto direct = project(t, x, j, i);
            auto composed = project(t, project(t, x, j, mid), mid, i);
            if (direct != composed || direct != project_stepwise(t, x, j, i)) {
              report.violations.push_back({TowerViolation::Kind::InconsistentComposition, j, i, x, mid});
              break;
            }
          }
        }
      }
    }
  }
  return report;
}

std::string describe(const TowerViolation& v) {
  auto pair = "(" + std::to_string(v.source) + "->" + std::to_string(v.target) + ")";
  switch (v.kind) {
    case TowerViolation::Kind::LevelZeroNotTrivial:
      return "level 0 is not the trivial group";
    case TowerViolation::Kind::NotHomomorphism:
      return "transition " + pair + " is not a homomorphism at x=" + std::to_string(v.x) +
             ", y=" + std::to_string(v.y);
    case TowerViolation::Kind::NotSurjective:
      return "transition " + pair + " misses element " + std::to_string(v.x);
    case TowerViolation::Kind::InconsistentComposition:
      return "projection " + pair + " disagrees with composition through level " +
             std::to_string(v.y) + " at x=" + std::to_string(v.x);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Subgroups

bool Subgroup::contains(Element x) const { return std::binary_search(elements.begin(), elements.end(), x); }

Subgroup make_subgroup(const FiniteQuotient& q, Level level, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (auto x : elements) check_element(x, q.order());
  Subgroup h{level, std::move(elements), false};
  if (!h.contains(q.identity())) throw InvalidInput("subgroup does not contain the identity");
  for (auto x : h.elements) {
    if (!h.contains(q.inv(x))) throw InvalidInput("subgroup not closed under inverses");
    for (auto y : h.elements) {
      if (!h.contains(q.op(x, y))) throw InvalidInput("subgroup not closed under the group operation");
    }
  }
  h.normal = true;
  for (Element g = 0; g < q.order() && h.normal; ++g) {
    auto g_inv = q.inv(g);
    for (auto x : h.elements) {
      if (!h.contains(q.op(q.op(g, x), g_inv))) {
        h.normal = false;
        break;
      }
    }
  }
  return h;
}

Subgroup make_subgroup(const Tower& t, Level level, std::vector<Element> elements) {
  return make_subgroup(t.level(level), level, std::move(elements));
}

Subgroup generate_subgroup(const FiniteQuotient& q, Level level, std::span<const Element> generators) {
  std::vector<char> member(static_cast<std::size_t>(q.order()), 0);
  std::vector<Element> elements{q.identity()};
  member[static_cast<std::size_t>(q.identity())] = 1;
  for (auto g : generators) {
    check_element(g, q.order());
    if (!member[static_cast<std::size_t>(g)]) {
      member[static_cast<std::size_t>(g)] = 1;
      elements.push_back(g);
    }
  }
  // In a finite group closure under the operation alone gives a subgroup.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto z : {q.op(elements[i], elements[j]), q.op(elements[j], elements[i])}) {
        if (!member[static_cast<std::size_t>(z)]) {
          member[static_cast<std::size_t>(z)] = 1;
          elements.push_back(z);
        }
      }
    }
  }
  return make_subgroup(q, level, std::move(elements));
}

Subgroup level_kernel(const Tower& t, Level top, Level k) {
  std::vector<Element> elements;
  const auto e = t.level(k).identity();
  for (Element x = 0; x < t.order(top); ++x) {
    if (project(t, x, top, k) == e) elements.push_back(x);
  }
  return Subgroup{top, std::move(elements), true};
}

}  // namespace profdyn
