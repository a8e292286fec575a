#include "profdyn/serialize.hpp"

namespace profdyn {

using nlohmann::json;

json tower_to_json(const Tower& t) {
  switch (t.kind()) {
    case Tower::Kind::Cyclic: {
      // A padded component repeats its top level; record the depth it was built with.
      Level depth = t.depth();
      while (depth > 0 && t.order(depth - 1) == t.top_order()) --depth;
      return {{"kind", "cyclic"}, {"p", t.base()}, {"depth", depth}};
    }
    case Tower::Kind::Product: {
      json comps = json::array();
      for (const auto& c : t.components()) comps.push_back(tower_to_json(c));
      return {{"kind", "product"}, {"components", comps}};
    }
    case Tower::Kind::Generic:
      break;
  }
  json levels = json::array();
  for (Level k = 1; k <= t.depth(); ++k) {
    std::vector<Element> transition;
    for (Element x = 0; x < t.order(k); ++x) transition.push_back(t.transition(k)(x));
    levels.push_back({{"op", t.level(k).operation_table()}, {"transition", transition}});
  }
  return {{"kind", "tables"}, {"tables", levels}};
}

Tower tower_from_json(const json& j) {
  try {
    if (j.contains("components")) {
      std::vector<Tower> comps;
      for (const auto& c : j.at("components")) comps.push_back(tower_from_json(c));
      return make_product_tower(std::move(comps));
    }
    if (j.contains("tables")) {
      std::vector<FiniteQuotient> levels{FiniteQuotient::cyclic(1)};
      std::vector<TransitionMap> transitions;
      Level k = 1;
      for (const auto& level : j.at("tables")) {
        levels.push_back(FiniteQuotient::from_table(level.at("op").get<std::vector<std::vector<Element>>>()));
        transitions.push_back(TransitionMap::from_table(k++, level.at("transition").get<std::vector<Element>>()));
      }
      return Tower::assemble(std::move(levels), std::move(transitions));
    }
    return make_cyclic_tower(j.at("p").get<Element>(), j.at("depth").get<Level>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed tower JSON: ") + e.what());
  }
}

json map_to_json(const MapExpr& m) {
  switch (m.kind) {
    case MapExpr::Kind::Polynomial:
      return {{"type", "polynomial"}, {"coeffs", m.coeffs}};
    case MapExpr::Kind::Matrix:
      return {{"type", "matrix"}, {"rows", m.rows}};
    case MapExpr::Kind::Shift:
      return {{"type", "shift"}};
    case MapExpr::Kind::Binomial:
      return {{"type", "binomial"}};
    case MapExpr::Kind::Product: {
      json comps = json::array();
      for (const auto& c : m.components) comps.push_back(map_to_json(c));
      return {{"type", "product"}, {"components", comps}};
    }
    case MapExpr::Kind::TablesFile:
      return {{"type", "tables"}, {"path", m.path}};
  }
  return {};
}

MapExpr map_from_json(const json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    MapExpr m;
    if (type == "polynomial") {
      m.kind = MapExpr::Kind::Polynomial;
      m.coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    } else if (type == "matrix") {
      m.kind = MapExpr::Kind::Matrix;
      m.rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
    } else if (type == "shift") {
      m.kind = MapExpr::Kind::Shift;
    } else if (type == "binomial") {
      m.kind = MapExpr::Kind::Binomial;
    } else if (type == "product") {
      m.kind = MapExpr::Kind::Product;
      for (const auto& c : j.at("components")) m.components.push_back(map_from_json(c));
    } else if (type == "tables") {
      m.kind = MapExpr::Kind::TablesFile;
      m.path = j.at("path").get<std::string>();
    } else {
      throw InvalidInput("unknown map type '" + type + "'");
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed map JSON: ") + e.what());
  }
}

json family_to_json(const CompatibleFamily& f) {
  json tables = json::array();
  for (Level i = 1; i <= f.depth(); ++i) {
    auto row = f.table(i);
    tables.push_back(std::vector<Element>(row.begin(), row.end()));
  }
  return {{"type", "tables"}, {"tables", tables}};
}

namespace {

json collision_json(const Collision& c) { return {{"x", c.x}, {"y", c.y}, {"image", c.image}}; }

}  // namespace

json weights_to_json(const std::vector<Rational>& weights) {
  json out = json::object();
  for (std::size_t y = 0; y < weights.size(); ++y) out[std::to_string(y)] = to_string(weights[y]);
  return out;
}

json report_to_json(const AnalysisReport& r, const std::string& map_name) {
  json j;
  j["schema"] = kReportSchema;
  j["map"] = map_name;
  j["certified_depth"] = r.certified_depth;
  j["measure_preserving"] = r.measure_preserving;
  j["ergodic"] = r.ergodic;
  j["totally_ergodic_possible"] = r.totally_ergodic_possible;
  j["obstruction_period"] = r.obstruction ? json(r.obstruction->period) : json(nullptr);
  if (r.obstruction) {
    j["obstruction"] = {{"level", r.obstruction->level},
                        {"period", r.obstruction->period},
                        {"certified", r.obstruction->certified}};
  }
  if (!r.measure.measure_preserving) {
    j["measure_witness"] = collision_json(*r.measure.witness);
    j["measure_witness"]["level"] = *r.measure.failing_level;
  }
  if (!r.ergodicity.ergodic) {
    json w = {{"level", *r.ergodicity.failing_level}, {"cycle_type", r.ergodicity.cycle_type}};
    if (r.ergodicity.witness) w["collision"] = collision_json(*r.ergodicity.witness);
    j["ergodicity_witness"] = w;
  }
  j["equivalence_consistent"] = r.equivalence.consistent();

  json levels = json::array();
  for (std::size_t k = 0; k < r.cycles.size(); ++k) {
    const auto& c = r.cycles[k];
    const auto& e = r.equivalence.levels[k];
    json level = {{"level", c.level},
                  {"order", c.order},
                  {"bijective", e.bijective},
                  {"surjective", e.surjective},
                  {"injective", e.injective},
                  {"uniform_pushforward", e.uniform_pushforward},
                  {"minimal", c.minimal()},
                  {"cycle_type", c.cycle_lengths}};
    if (c.collision) level["witness"] = collision_json(*c.collision);
    levels.push_back(level);
  }
  j["levels"] = levels;
  return j;
}

json to_json(const ProductVerdict& v) {
  json j = {{"ergodic", v.ergodic}};
  if (v.ergodicity_failure) {
    j["ergodicity_witness"] = {{"component", v.ergodicity_failure->component}, {"level", v.ergodicity_failure->level}};
  }
  if (v.coprimality_failure) {
    const auto& c = *v.coprimality_failure;
    j["coprimality_witness"] = {{"first", c.first},
                                {"second", c.second},
                                {"first_order", c.first_order},
                                {"second_order", c.second_order},
                                {"gcd", c.gcd}};
  }
  return j;
}

json to_json(const IsometryVerdict& v) {
  json j = {{"isometry", v.isometry}};
  if (v.witness) {
    auto exponent = [](const DyadicDistance& d) { return d.exponent ? json(*d.exponent) : json(nullptr); };
    j["witness"] = {{"x", v.witness->first},
                    {"y", v.witness->second},
                    {"distance", to_string(v.distance.value())},
                    {"distance_exponent", exponent(v.distance)},
                    {"image_distance", to_string(v.image_distance.value())},
                    {"image_distance_exponent", exponent(v.image_distance)}};
  }
  return j;
}

json to_json(const WordFrequencies& freq) {
  json out = json::object();
  for (const auto& [word, weight] : freq) {
    std::string key;
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (k > 0) key += ',';
      key += std::to_string(word[k]);
    }
    out[key] = to_string(weight);
  }
  return out;
}

json to_json(const DeterminismVerdict& v) {
  json j = {{"deterministic", v.deterministic}, {"input_level", v.input_level}};
  if (v.witness) {
    j["witness"] = {{"x", v.witness->first},
                    {"y", v.witness->second},
                    {"x_sequence", v.first_sequence},
                    {"y_sequence", v.second_sequence}};
  }
  return j;
}

json precision_report_to_json(const PrecisionMap& m) {
  json j;
  j["schema"] = kReportSchema;
  j["map"] = m.name();
  bool all = true;
  Level certified = 0;
  json levels = json::array();
  for (Level i = 1; i <= m.depth() && m.required_level(i) <= m.depth(); ++i) {
    const auto weights = pushforward_uniform(m, i);
    bool uniform = true;
    for (const auto& w : weights) uniform = uniform && w == Rational(1, m.tower().order(i));
    all = all && uniform;
    certified = i;
    levels.push_back({{"level", i},
                      {"order", m.tower().order(i)},
                      {"input_level", m.required_level(i)},
                      {"uniform_pushforward", uniform},
                      {"pushforward", weights_to_json(weights)}});
  }
  j["certified_depth"] = certified;
  j["measure_preserving"] = all;
  j["levels"] = levels;
  return j;
}

}  // namespace profdyn
