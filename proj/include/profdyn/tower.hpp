#pragma once

#include <span>
#include <string>
#include <vector>

#include "profdyn/core.hpp"

namespace profdyn {

/// A finite group at one tower level. Elements are the dense indices 0..order-1.
class FiniteQuotient {
 public:
  enum class Kind { Cyclic, DirectProduct, Table };

  static FiniteQuotient cyclic(Element n);
  /// Mixed-radix product; the first component is the most significant digit.
  static FiniteQuotient direct_product(std::vector<FiniteQuotient> components);
  /// Validates closure, two-sided identity and inverses. Associativity is checked
  /// exhaustively when the order is at most kMaxAssociativityCheck.
  static FiniteQuotient from_table(const std::vector<std::vector<Element>>& table);

  static constexpr Element kMaxAssociativityCheck = 256;
  static constexpr Element kMaxTableKindOrder = 4096;

  Kind kind() const { return kind_; }
  Element order() const { return order_; }
  Element identity() const { return identity_; }
  Element op(Element x, Element y) const;
  Element inv(Element x) const;

  const std::vector<FiniteQuotient>& components() const { return components_; }
  std::vector<Element> decode(Element x) const;
  Element encode(std::span<const Element> digits) const;

  /// Normalized Haar measure of a single element.
  Rational haar_weight() const { return Rational(1, order_); }

  /// Full n x n operation table, row-major (materialized for any kind).
  std::vector<std::vector<Element>> operation_table() const;

 private:
  FiniteQuotient() = default;

  Kind kind_ = Kind::Cyclic;
  Element order_ = 1;
  Element identity_ = 0;
  std::vector<FiniteQuotient> components_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

/// Surjective homomorphism from level `source` onto level `source - 1`.
class TransitionMap {
 public:
  /// Reduction Z/m -> Z/n for n | m.
  static TransitionMap reduction(Level source, Element target_order);
  static TransitionMap identity(Level source);
  static TransitionMap componentwise(Level source, std::vector<TransitionMap> parts,
                                     std::vector<Element> source_radices,
                                     std::vector<Element> target_radices);
  static TransitionMap from_table(Level source, std::vector<Element> table);

  Level source_level() const { return source_; }
  Level target_level() const { return source_ - 1; }

  Element operator()(Element x) const;

 private:
  enum class Rule { Reduction, Identity, Componentwise, Table };

  Rule rule_ = Rule::Identity;
  Level source_ = 1;
  Element modulus_ = 1;
  std::vector<TransitionMap> parts_;
  std::vector<Element> source_radices_;
  std::vector<Element> target_radices_;
  std::vector<Element> table_;
};

/// A chain G_0 <- G_1 <- ... <- G_D of finite quotients, G_0 trivial.
class Tower {
 public:
  enum class Kind { Cyclic, Product, Generic };

  /// Z/p^k at level k. Composite p gives the Z/n^k chain.
  static Tower cyclic(Element p, Level depth);
  /// Diagonal product; shallower components are padded with identity transitions.
  static Tower product(std::vector<Tower> components);
  /// Generic tower from explicit levels and adjacent transitions (transitions[k-1] maps
  /// level k to level k-1). Checks arities only; see verify_tower for the group axioms.
  static Tower assemble(std::vector<FiniteQuotient> levels, std::vector<TransitionMap> transitions);

  Kind kind() const { return kind_; }
  Level depth() const { return static_cast<Level>(levels_.size()) - 1; }
  const FiniteQuotient& level(Level k) const;
  Element order(Level k) const { return level(k).order(); }
  Element top_order() const { return levels_.back().order(); }
  /// Map from level k to level k - 1, for 1 <= k <= depth.
  const TransitionMap& transition(Level k) const;

  /// Base p for cyclic towers.
  Element base() const;
  const std::vector<Tower>& components() const { return components_; }

  /// Same tower with the top level repeated (identity transitions) up to `depth`.
  Tower padded_to(Level depth) const;

 private:
  Tower() = default;

  Kind kind_ = Kind::Generic;
  Element base_ = 0;
  std::vector<FiniteQuotient> levels_;
  std::vector<TransitionMap> transitions_;
  std::vector<Tower> components_;
};

Tower make_cyclic_tower(Element p, Level depth);
Tower make_product_tower(std::vector<Tower> components);

/// Image of x (an element of level `from`) at level `to` <= from.
Element project(const Tower& t, Element x, Level from, Level to);

/// Image of x stepping through every adjacent transition, never taking shortcuts.
Element project_stepwise(const Tower& t, Element x, Level from, Level to);

struct TowerViolation {
  enum class Kind { LevelZeroNotTrivial, NotHomomorphism, NotSurjective, InconsistentComposition };
  Kind kind;
  Level source = 0;
  Level target = 0;
  Element x = 0;
  Element y = 0;
};

struct TowerReport {
  std::vector<TowerViolation> violations;
  /// Levels whose homomorphism check was skipped because the order exceeded the limit.
  std::vector<Level> unchecked_levels;
  bool clean() const { return violations.empty(); }
};

/// Lists every violated tower invariant; the homomorphism check is exhaustive for
/// source orders up to `exhaustive_limit`.
TowerReport verify_tower(const Tower& t, Element exhaustive_limit = 4096);

std::string describe(const TowerViolation& v);

/// A subgroup of one tower level, stored extensionally.
struct Subgroup {
  Level level = 0;
  std::vector<Element> elements;  // sorted
  bool normal = false;

  bool contains(Element x) const;
  Element size() const { return static_cast<Element>(elements.size()); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.level == b.level && a.elements == b.elements;
  }
};

/// Validates closure under op and inv and computes normality; throws InvalidInput.
Subgroup make_subgroup(const Tower& t, Level level, std::vector<Element> elements);
Subgroup make_subgroup(const FiniteQuotient& q, Level level, std::vector<Element> elements);
Subgroup generate_subgroup(const FiniteQuotient& q, Level level, std::span<const Element> generators);

/// Kernel of the projection from level `top` to level `k`, as a subgroup of level `top`.
Subgroup level_kernel(const Tower& t, Level top, Level k);

}  // namespace profdyn
