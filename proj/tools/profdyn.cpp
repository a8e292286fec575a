// profdyn: analyze quotient-preserving and precision-contracted maps on
// finite-quotient towers.
//
//   profdyn analyze "zp 3 depth 4; poly [1,1]" [--metric] [--cylinders W]
//   profdyn orbit "zp 2 depth 4; shift" --x 11 --level 1 --length 4
//   profdyn tower "prod [zp 2 depth 2, zp 3 depth 2]; poly [0]"
//
// Exit codes: 0 ok, 2 spec error, 3 precision exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "profdyn/analysis.hpp"
#include "profdyn/metric.hpp"
#include "profdyn/product.hpp"
#include "profdyn/serialize.hpp"
#include "profdyn/shift_factor.hpp"
#include "profdyn/spec.hpp"

namespace {

using namespace profdyn;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSpec = 2;
constexpr int kExitPrecision = 3;

struct Common {
  std::string spec;
  std::optional<int> depth_override;
  std::string format = "json";
};

std::string spec_text(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw InvalidInput("cannot open spec file " + arg.substr(1));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

BuildOptions options_from(const Common& c) {
  BuildOptions options;
  options.depth_override = c.depth_override;
  if (const char* cap = std::getenv("PROFDYN_MAX_ORDER")) {
    try {
      options.max_order = std::stoll(cap);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("PROFDYN_MAX_ORDER is not an integer: ") + cap);
    }
  }
  return options;
}

void print_text(const json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      print_text(value, out, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        out << indent << "  -\n";
        print_text(item, out, indent + "    ");
      }
    } else {
      out << indent << key << ": " << value.dump() << '\n';
    }
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "text") {
    print_text(j, std::cout);
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

int run_analyze(const Common& c, bool metric, std::optional<int> cylinders) {
  const auto system = build(parse_spec(spec_text(c.spec)), options_from(c));
  json report;
  if (const auto* f = std::get_if<CompatibleFamily>(&system.dynamics)) {
    report = report_to_json(analyze(*f), f->name());
    if (!system.components.empty()) {
      report["product"] = to_json(product_ergodicity(system.components));
      json orders = json::array();
      for (const auto& comp : system.components) orders.push_back(quotient_order_set(comp).orders);
      report["product"]["quotient_orders"] = orders;
    }
    if (metric) report["metric"] = to_json(verify_isometry(*f, build_metric(f->tower())));
  } else {
    const auto& m = std::get<PrecisionMap>(system.dynamics);
    report = precision_report_to_json(m);
    if (metric) report["metric"] = {{"isometry", nullptr}, {"note", "precision maps do not act level-wise"}};
  }
  if (cylinders) {
    if (*cylinders < 1) throw InvalidInput("--cylinders needs a positive word length");
    const auto w = static_cast<std::size_t>(*cylinders);
    const auto input = std::max(trajectory_input_level(system.dynamics, 1, w), Level{1});
    report["cylinders"] = {{"level", 1},
                           {"word_length", w},
                           {"input_level", input},
                           {"frequencies", to_json(cylinder_frequencies(system.dynamics, 1, w, input))}};
  }
  emit(report, c.format);
  return kExitOk;
}

int run_orbit(const Common& c, Element x, std::optional<int> x_level, int level, std::size_t length) {
  const auto system = build(parse_spec(spec_text(c.spec)), options_from(c));
  const Point start{x, x_level.value_or(system.tower.depth())};
  const auto seq = phi_sequence(system.dynamics, start, level, length);
  if (c.format == "json") {
    std::cout << json{{"level", seq.level}, {"source", seq.source}, {"symbols", seq.symbols}}.dump() << '\n';
  } else {
    std::cout << to_csv(seq);
  }
  return kExitOk;
}

int run_tower(const Common& c) {
  const auto system = build(parse_spec(spec_text(c.spec)), options_from(c));
  const auto report = verify_tower(system.tower);
  json orders = json::array();
  for (Level k = 0; k <= system.tower.depth(); ++k) orders.push_back(system.tower.order(k));
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(describe(v));
  emit({{"schema", kReportSchema},
        {"tower", tower_to_json(system.tower)},
        {"orders", orders},
        {"clean", report.clean()},
        {"violations", violations}},
       c.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of dynamics on finite-quotient towers"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", common.spec, "tower and map, e.g. \"zp 2 depth 8; poly [1,1]\" (or @file)")->required();
    sub->add_option("--depth-override", common.depth_override, "replace the depth of every zp tower");
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "measure preservation, ergodicity and obstructions");
  add_common(analyze_cmd);
  bool metric = false;
  std::optional<int> cylinders;
  analyze_cmd->add_flag("--metric", metric, "also check the isometry criterion");
  analyze_cmd->add_option("--cylinders", cylinders, "word length for level-1 cylinder frequencies");

  auto* orbit_cmd = app.add_subcommand("orbit", "symbol sequence of a point at one level (CSV)");
  add_common(orbit_cmd);
  Element x = 0;
  std::optional<int> x_level;
  int level = 1;
  std::size_t length = 0;
  orbit_cmd->add_option("--x", x, "start element")->required();
  orbit_cmd->add_option("--x-level", x_level, "level the start element is given at (default: top)");
  orbit_cmd->add_option("--level", level, "output level")->required();
  orbit_cmd->add_option("--length", length, "number of symbols")->required();

  auto* tower_cmd = app.add_subcommand("tower", "describe and verify the tower of a spec");
  add_common(tower_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitSpec;
  }

  // Default orbit output is CSV.
  if (orbit_cmd->parsed() && orbit_cmd->count("--format") == 0) common.format = "text";

  try {
    if (analyze_cmd->parsed()) return run_analyze(common, metric, cylinders);
    if (orbit_cmd->parsed()) return run_orbit(common, x, x_level, level, length);
    return run_tower(common);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "profdyn: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const Error& e) {
    std::cerr << "profdyn: " << e.what() << '\n';
    return kExitSpec;
  }
}
