#pragma once

#include <optional>
#include <span>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"

namespace profdyn {

/// Two distinct points with the same image; x < y, y is the first repeat in scan order.
struct Collision {
  Element x = 0;
  Element y = 0;
  Element image = 0;
  friend bool operator==(const Collision&, const Collision&) = default;
};

struct CycleStructure {
  Level level = 0;
  Element order = 0;
  bool bijective = false;
  std::vector<Element> cycle_lengths;  // ascending; empty unless bijective
  std::optional<Collision> collision;

  /// A single cycle through every point.
  bool minimal() const { return bijective && cycle_lengths.size() == 1; }
};

/// Cycle type of a self-map given as a table on 0..n-1.
CycleStructure cycle_structure(std::span<const Element> table);
CycleStructure cycle_structure(const CompatibleFamily& f, Level i);

struct MeasureVerdict {
  bool measure_preserving = true;
  Level certified_depth = 0;
  std::optional<Level> failing_level;
  std::optional<Collision> witness;
};

MeasureVerdict is_measure_preserving(const CompatibleFamily& f);

struct ErgodicVerdict {
  bool ergodic = true;
  Level certified_depth = 0;
  std::optional<Level> failing_level;
  /// Cycle type at the failing level (empty when that level is not a bijection).
  std::vector<Element> cycle_type;
  std::optional<Collision> witness;
};

ErgodicVerdict is_ergodic(const CompatibleFamily& f);

/// The four finite-level forms of measure preservation, each computed on its own.
/// Nonsingularity is not listed: with uniform measure on a finite set it is surjectivity.
struct LevelCriteria {
  Level level = 0;
  Element order = 0;
  bool bijective = false;
  bool surjective = false;
  bool injective = false;
  bool uniform_pushforward = false;
  std::vector<Rational> pushforward;

  bool consistent() const {
    return bijective == surjective && surjective == injective && injective == uniform_pushforward;
  }
};

struct EquivalenceReport {
  std::vector<LevelCriteria> levels;
  /// Levels where the criteria disagree; non-empty means an implementation bug.
  std::vector<Level> disagreements;
  bool consistent() const { return disagreements.empty(); }
};

EquivalenceReport equivalence_report(const CompatibleFamily& f);

struct Obstruction {
  Level level = 0;
  /// T^period projects to the identity at `level`, so T^period is not ergodic.
  Element period = 0;
  bool certified = false;
};

/// Smallest nontrivial level on which T is minimal, or none when no level is.
std::optional<Obstruction> total_ergodicity_obstruction(const CompatibleFamily& f);

std::vector<Element> orbit(const Dynamics& d, Point x, Level i, std::size_t length);

struct Equidistribution {
  std::vector<Rational> frequencies;
  Rational max_deviation;
};

Equidistribution equidistribution_stats(std::span<const Element> orbit, Level i, const Tower& t);

/// Image of the uniform measure on the input level under the level-i map.
std::vector<Rational> pushforward_uniform(const CompatibleFamily& f, Level i);
std::vector<Rational> pushforward_uniform(const PrecisionMap& m, Level i);

struct AnalysisReport {
  Level certified_depth = 0;
  bool measure_preserving = false;
  bool ergodic = false;
  bool totally_ergodic_possible = false;
  MeasureVerdict measure;
  ErgodicVerdict ergodicity;
  std::optional<Obstruction> obstruction;
  EquivalenceReport equivalence;
  std::vector<CycleStructure> cycles;
};

AnalysisReport analyze(const CompatibleFamily& f);

}  // namespace profdyn
