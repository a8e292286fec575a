#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "profdyn/core.hpp"
#include "profdyn/tower.hpp"

namespace profdyn {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Commuting-square failure: transition(T_{level+1} x) != T_level(transition x),
/// with x an element of level + 1.
struct CompatibilityWitness {
  Level level = 0;
  Element element = 0;
  friend bool operator==(const CompatibilityWitness&, const CompatibilityWitness&) = default;
};

class CompatibilityError : public Error {
 public:
  explicit CompatibilityError(CompatibilityWitness w);
  CompatibilityWitness witness;
};

/// Per-level self-maps T_i : G_i -> G_i commuting with the tower transitions,
/// stored as dense tables. Always verified at construction.
class CompatibleFamily {
 public:
  /// `tables` covers levels 1..D, or 0..D with a trivial level-0 table.
  CompatibleFamily(Tower tower, std::vector<std::vector<Element>> tables, std::string name = "tables");

  const Tower& tower() const { return tower_; }
  Level depth() const { return tower_.depth(); }
  const std::string& name() const { return name_; }

  /// T_i(x) for x in G_i.
  Element operator()(Element x, Level i) const { return tables_[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]; }
  std::span<const Element> table(Level i) const;

  /// Same family on the tower padded to `depth` (top table repeated).
  CompatibleFamily padded_to(Level depth) const;

 private:
  Tower tower_;
  std::vector<std::vector<Element>> tables_;
  std::string name_;
};

/// Builds level tables by evaluating `rule(x, i)` on every x of every level, then verifies.
CompatibleFamily tabulate(const Tower& t, const std::function<Element(Element, Level)>& rule,
                          std::string name = "tables");

/// T_i(x) = sum c_k x^k mod p^i, coefficients in ascending degree (any sign).
CompatibleFamily from_polynomial(const Tower& t, std::span<const std::int64_t> coeffs);
CompatibleFamily from_level_tables(const Tower& t, std::vector<std::vector<Element>> tables);
/// Column-vector action of M on the diagonal tower of (Z/p^i)^k.
CompatibleFamily from_matrix(const Tower& t, const IntMatrix& m);
CompatibleFamily from_matrix(Element p, Level depth, const IntMatrix& m);
/// Componentwise action on the product of the families' towers.
CompatibleFamily product_map(const std::vector<CompatibleFamily>& families);

/// First failing commuting square, scanning levels upward and elements in order.
std::optional<CompatibilityWitness> check_compatibility(const Tower& t,
                                                        const std::vector<std::vector<Element>>& tables);
std::optional<CompatibilityWitness> check_compatibility(const CompatibleFamily& f);

/// A self-map with a precision contract: the level-i output needs input at level
/// contract(i) >= i. Models maps that do not factor through the projections.
class PrecisionMap {
 public:
  using Contract = std::function<Level(Level)>;
  /// Evaluates the level-i image from an input given at level contract(i).
  using Evaluator = std::function<Element(Element, Level)>;

  PrecisionMap(Tower tower, Contract contract, Evaluator evaluate, std::string name);

  const Tower& tower() const { return tower_; }
  Level depth() const { return tower_.depth(); }
  const std::string& name() const { return name_; }

  Level required_level(Level i) const { return contract_(i); }
  /// x is an element of level required_level(i); throws PrecisionExhausted past the top.
  Element evaluate(Element x, Level i) const;

 private:
  Tower tower_;
  Contract contract_;
  Evaluator evaluate_;
  std::string name_;
};

/// T(c + p d) = d, contract j(i) = i + 1.
PrecisionMap shift_map(const Tower& t);
/// f(x) = C(x, p) for prime p, contract j(i) = i + 1.
PrecisionMap binomial_map(const Tower& t);

/// Input levels needed to produce T^0..T^k at output level i: chain[0] = i,
/// chain[s+1] = contract(chain[s]).
std::vector<Level> precision_chain(const PrecisionMap& m, Level i, int k);

struct CoherenceWitness {
  Level level = 0;
  Level lower_level = 0;
  Element element = 0;
};

/// Checks that projecting the level-i output agrees with direct evaluation at every
/// lower level i', over all inputs of orders up to `exhaustive_limit`.
std::optional<CoherenceWitness> check_coherence(const PrecisionMap& m, Element exhaustive_limit = 1 << 16);

using Dynamics = std::variant<CompatibleFamily, PrecisionMap>;

const Tower& tower_of(const Dynamics& d);

/// Level-i image of T^k(x).
Element apply_at_level(const CompatibleFamily& f, Point x, Level i, int k);
Element apply_at_level(const PrecisionMap& m, Point x, Level i, int k);
Element apply_at_level(const Dynamics& d, Point x, Level i, int k);

/// [pi_i(x), pi_i(Tx), ..., pi_i(T^{length-1} x)].
std::vector<Element> trajectory(const CompatibleFamily& f, Point x, Level i, std::size_t length);
std::vector<Element> trajectory(const PrecisionMap& m, Point x, Level i, std::size_t length);
std::vector<Element> trajectory(const Dynamics& d, Point x, Level i, std::size_t length);

/// Input level needed for a trajectory of `length` symbols at level i (i itself for families).
Level trajectory_input_level(const Dynamics& d, Level i, std::size_t length);

}  // namespace profdyn
