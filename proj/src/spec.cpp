#include "profdyn/spec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "profdyn/serialize.hpp"

namespace profdyn {

SpecError::SpecError(const std::string& message, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MapSpec parse() {
    MapSpec spec;
    spec.tower = tower();
    expect(';');
    spec.map = map();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SpecError(message, line_, column_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string word() {
    skip_space();
    std::string w;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      w += text_[pos_];
      advance();
    }
    if (w.empty()) fail("expected a keyword");
    return w;
  }

  std::int64_t integer() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (start == pos_) fail("expected a non-negative integer");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) fail("integer out of range");
    return value;
  }

  std::string path() {
    skip_space();
    std::string p;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        p += text_[pos_];
        advance();
      }
      if (pos_ == text_.size()) fail("unterminated quoted path");
      advance();
    } else {
      while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == ']') break;
        if (c == '"') fail("quote inside an unquoted path");
        p += c;
        advance();
      }
    }
    if (p.empty()) fail("expected a path");
    return p;
  }

  template <class Item>
  std::vector<Item> bracketed(Item (Parser::*item)()) {
    expect('[');
    std::vector<Item> items{(this->*item)()};
    while (peek(',')) {
      advance();
      items.push_back((this->*item)());
    }
    expect(']');
    return items;
  }

  std::vector<std::int64_t> row() { return bracketed(&Parser::integer); }

  TowerSpec tower() {
    skip_space();
    const int line = line_, column = column_;
    const auto kw = word();
    TowerSpec t;
    if (kw == "zp") {
      t.kind = TowerSpec::Kind::Cyclic;
      t.p = integer();
      if (word() != "depth") fail("expected 'depth'");
      const auto depth = integer();
      if (depth > std::numeric_limits<Level>::max()) fail("depth out of range");
      t.depth = static_cast<Level>(depth);
    } else if (kw == "prod") {
      t.kind = TowerSpec::Kind::Product;
      t.components = bracketed(&Parser::tower);
    } else if (kw == "table") {
      t.kind = TowerSpec::Kind::TableFile;
      t.path = path();
    } else {
      throw SpecError("unknown tower '" + kw + "' (expected zp, prod or table)", line, column);
    }
    return t;
  }

  MapExpr map() {
    skip_space();
    const int line = line_, column = column_;
    const auto kw = word();
    MapExpr m;
    if (kw == "poly") {
      m.kind = MapExpr::Kind::Polynomial;
      m.coeffs = row();
    } else if (kw == "matrix") {
      m.kind = MapExpr::Kind::Matrix;
      m.rows = bracketed(&Parser::row);
    } else if (kw == "shift") {
      m.kind = MapExpr::Kind::Shift;
    } else if (kw == "binom") {
      m.kind = MapExpr::Kind::Binomial;
    } else if (kw == "prod") {
      m.kind = MapExpr::Kind::Product;
      m.components = bracketed(&Parser::map);
    } else if (kw == "tables") {
      m.kind = MapExpr::Kind::TablesFile;
      m.path = path();
    } else {
      throw SpecError("unknown map '" + kw + "' (expected poly, matrix, shift, binom, prod or tables)", line, column);
    }
    return m;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

template <class T, class F>
std::string join(const std::vector<T>& items, F&& render_item) {
  std::string out = "[";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ", ";
    out += render_item(items[k]);
  }
  return out + "]";
}

std::string quote(const std::string& path) { return "\"" + path + "\""; }

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void check_orders(const Tower& t, Element max_order) {
  for (Level k = 0; k <= t.depth(); ++k) {
    if (t.order(k) > max_order) {
      throw CapacityError("level " + std::to_string(k) + " has order " + std::to_string(t.order(k)) +
                          ", above the cap " + std::to_string(max_order));
    }
  }
}

Dynamics build_map(const MapExpr& m, const TowerSpec& ts, const Tower& t, std::vector<CompatibleFamily>* components) {
  auto need_cyclic = [&](const char* what) {
    if (ts.kind != TowerSpec::Kind::Cyclic) {
      throw InvalidInput(std::string(what) + " needs a 'zp' tower, got '" + render(ts) + "'");
    }
  };
  switch (m.kind) {
    case MapExpr::Kind::Polynomial:
      need_cyclic("poly");
      return from_polynomial(t, m.coeffs);
    case MapExpr::Kind::Shift:
      need_cyclic("shift");
      return shift_map(t);
    case MapExpr::Kind::Binomial:
      need_cyclic("binom");
      return binomial_map(t);
    case MapExpr::Kind::Matrix: {
      const auto k = m.rows.size();
      if (ts.kind != TowerSpec::Kind::Product || ts.components.size() != k) {
        throw InvalidInput("a " + std::to_string(k) + "x" + std::to_string(k) + " matrix needs a product of " +
                           std::to_string(k) + " zp towers");
      }
      IntMatrix mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
      for (std::size_t r = 0; r < k; ++r) {
        if (m.rows[r].size() != k) throw InvalidInput("matrix row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < k; ++c) mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m.rows[r][c];
      }
      return from_matrix(t, mat);
    }
    case MapExpr::Kind::Product: {
      if (ts.kind != TowerSpec::Kind::Product || ts.components.size() != m.components.size()) {
        throw InvalidInput("product map has " + std::to_string(m.components.size()) +
                           " components but the tower is '" + render(ts) + "'");
      }
      std::vector<CompatibleFamily> families;
      for (std::size_t c = 0; c < m.components.size(); ++c) {
        auto d = build_map(m.components[c], ts.components[c], t.components()[c], nullptr);
        auto* f = std::get_if<CompatibleFamily>(&d);
        if (f == nullptr) throw UnsupportedError("product components must be quotient-preserving maps");
        families.push_back(std::move(*f));
      }
      auto family = product_map(families);
      if (components != nullptr) *components = std::move(families);
      return family;
    }
    case MapExpr::Kind::TablesFile: {
      const auto j = read_json_file(m.path);
      const auto& tables = j.is_object() ? j.at("tables") : j;
      return from_level_tables(t, tables.get<std::vector<std::vector<Element>>>());
    }
  }
  throw std::logic_error("unhandled map kind");
}

}  // namespace

MapSpec parse_spec(std::string_view text) { return Parser(text).parse(); }

std::string render(const TowerSpec& t) {
  switch (t.kind) {
    case TowerSpec::Kind::Cyclic:
      return "zp " + std::to_string(t.p) + " depth " + std::to_string(t.depth);
    case TowerSpec::Kind::Product:
      return "prod " + join(t.components, [](const TowerSpec& c) { return render(c); });
    case TowerSpec::Kind::TableFile:
      return "table " + quote(t.path);
  }
  return {};
}

std::string render(const MapExpr& m) {
  auto ints = [](const std::vector<std::int64_t>& v) {
    return join(v, [](std::int64_t x) { return std::to_string(x); });
  };
  switch (m.kind) {
    case MapExpr::Kind::Polynomial:
      return "poly " + ints(m.coeffs);
    case MapExpr::Kind::Matrix:
      return "matrix " + join(m.rows, ints);
    case MapExpr::Kind::Shift:
      return "shift";
    case MapExpr::Kind::Binomial:
      return "binom";
    case MapExpr::Kind::Product:
      return "prod " + join(m.components, [](const MapExpr& c) { return render(c); });
    case MapExpr::Kind::TablesFile:
      return "tables " + quote(m.path);
  }
  return {};
}

std::string render(const MapSpec& s) { return render(s.tower) + "; " + render(s.map); }

Tower build_tower(const TowerSpec& spec, const BuildOptions& options) {
  switch (spec.kind) {
    case TowerSpec::Kind::Cyclic: {
      auto t = make_cyclic_tower(spec.p, options.depth_override.value_or(spec.depth));
      check_orders(t, options.max_order);
      return t;
    }
    case TowerSpec::Kind::Product: {
      std::vector<Tower> comps;
      for (const auto& c : spec.components) comps.push_back(build_tower(c, options));
      auto t = make_product_tower(std::move(comps));
      check_orders(t, options.max_order);
      return t;
    }
    case TowerSpec::Kind::TableFile: {
      auto t = tower_from_json(read_json_file(spec.path));
      check_orders(t, options.max_order);
      auto report = verify_tower(t);
      if (!report.clean()) throw InvalidInput(spec.path + ": " + describe(report.violations.front()));
      return t;
    }
  }
  throw std::logic_error("unhandled tower kind");
}

BuiltSystem build(const MapSpec& spec, const BuildOptions& options) {
  auto tower = build_tower(spec.tower, options);
  std::vector<CompatibleFamily> components;
  auto dynamics = build_map(spec.map, spec.tower, tower, &components);
  return BuiltSystem{tower_of(dynamics), std::move(dynamics), std::move(components)};
}

}  // namespace profdyn
