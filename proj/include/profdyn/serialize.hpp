#pragma once

#include <json.hpp>

#include "profdyn/analysis.hpp"
#include "profdyn/maps.hpp"
#include "profdyn/metric.hpp"
#include "profdyn/product.hpp"
#include "profdyn/shift_factor.hpp"
#include "profdyn/spec.hpp"
#include "profdyn/tower.hpp"

namespace profdyn {

inline constexpr int kReportSchema = 1;

// Towers: {"kind":"cyclic","p":P,"depth":D}, {"kind":"product","components":[...]},
// or {"kind":"tables","tables":[{"op":[[...]],"transition":[...]}, ...]} for levels
// 1..D, where "transition" maps the level onto the one below it.
nlohmann::json tower_to_json(const Tower& t);
Tower tower_from_json(const nlohmann::json& j);

// Maps: {"type":"polynomial","coeffs":[...]}, {"type":"matrix","rows":[[...]]},
// {"type":"shift"}, {"type":"binomial"}, {"type":"product","components":[...]},
// {"type":"tables","tables":[[...], ...]} (levels 1..D, or a "path").
nlohmann::json map_to_json(const MapExpr& m);
MapExpr map_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const CompatibleFamily& f);

nlohmann::json report_to_json(const AnalysisReport& r, const std::string& map_name);
nlohmann::json to_json(const ProductVerdict& v);
nlohmann::json to_json(const IsometryVerdict& v);
/// Keys are comma-joined symbols, values "a/b".
nlohmann::json to_json(const WordFrequencies& freq);
nlohmann::json to_json(const DeterminismVerdict& v);
nlohmann::json weights_to_json(const std::vector<Rational>& weights);

/// Per-level pushforward of the uniform measure for a precision-contracted map.
nlohmann::json precision_report_to_json(const PrecisionMap& m);

}  // namespace profdyn
