#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"
#include "profdyn/tower.hpp"

namespace profdyn {

// Text form of a tower and a map on it:
//
//   spec  := tower ";" map
//   tower := "zp" INT "depth" INT | "prod" "[" tower ("," tower)* "]" | "table" PATH
//   map   := "poly" "[" INT ("," INT)* "]" | "matrix" "[" row ("," row)* "]"
//          | "shift" | "binom" | "prod" "[" map ("," map)* "]" | "tables" PATH
//   row   := "[" INT ("," INT)* "]"
//
// PATH is either a double-quoted string or a bare run of characters up to
// whitespace, ',', ';' or ']'. Integers are non-negative decimals.

struct TowerSpec {
  enum class Kind { Cyclic, Product, TableFile };
  Kind kind = Kind::Cyclic;
  Element p = 0;
  Level depth = 0;
  std::vector<TowerSpec> components;
  std::string path;

  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

struct MapExpr {
  enum class Kind { Polynomial, Matrix, Shift, Binomial, Product, TablesFile };
  Kind kind = Kind::Polynomial;
  std::vector<std::int64_t> coeffs;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<MapExpr> components;
  std::string path;

  friend bool operator==(const MapExpr&, const MapExpr&) = default;
};

struct MapSpec {
  TowerSpec tower;
  MapExpr map;

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

class SpecError : public Error {
 public:
  SpecError(const std::string& message, int line, int column);
  int line;
  int column;
};

MapSpec parse_spec(std::string_view text);
std::string render(const TowerSpec& t);
std::string render(const MapExpr& m);
std::string render(const MapSpec& s);

struct BuildOptions {
  /// Replaces the depth of every cyclic tower.
  std::optional<Level> depth_override;
  /// Rejects towers with a level order above this.
  Element max_order = kMaxTableOrder;
};

struct BuiltSystem {
  Tower tower;
  Dynamics dynamics;
  /// Component families when the map is a product of quotient-preserving maps.
  std::vector<CompatibleFamily> components;
};

Tower build_tower(const TowerSpec& spec, const BuildOptions& options = {});
BuiltSystem build(const MapSpec& spec, const BuildOptions& options = {});

}  // namespace profdyn
