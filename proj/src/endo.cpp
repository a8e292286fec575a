#include "profdyn/endo.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace profdyn {

namespace {

void require_homomorphism(const CompatibleFamily& f) {
  if (auto fail = check_homomorphism(f)) {
    throw DomainError("level map " + std::to_string(fail->level) + " is not a homomorphism at (" +
                      std::to_string(fail->x) + "," + std::to_string(fail->y) + ")");
  }
}

void require_normal(const Subgroup& n) {
  if (!n.normal) throw InvalidInput("subgroup is not normal");
}

bool is_surjective(std::span<const Element> table) {
  std::vector<char> hit(table.size(), 0);
  for (auto y : table) hit[static_cast<std::size_t>(y)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

std::vector<Element> intersect(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Element determinant_mod_p(const IntMatrix& m, Element p) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const auto n = m.rows();
  IntMatrix a = m.unaryExpr([p](std::int64_t v) { return mod_reduce(v, p); });
  Element det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = mod_reduce(-det, p);
    }
    det = mul_mod(det, a(col, col), p);
    const auto inv = inverse_mod(a(col, col), p);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const auto factor = mul_mod(a(r, col), inv, p);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) = mod_reduce(a(r, c) - mul_mod(factor, a(col, c), p), p);
    }
  }
  return det;
}

bool is_unit_matrix(const IntMatrix& m, Element p) { return determinant_mod_p(m, p) != 0; }

std::optional<HomomorphismFailure> check_homomorphism(const CompatibleFamily& f) {
  for (Level i = 0; i <= f.depth(); ++i) {
    const auto& g = f.tower().level(i);
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        if (f(g.op(x, y), i) != g.op(f(x, i), f(y, i))) return HomomorphismFailure{i, x, y};
  }
  return std::nullopt;
}

Subgroup preimage(const CompatibleFamily& f, const Subgroup& n) {
  std::vector<Element> elements;
  const auto table = f.table(n.level);
  for (Element x = 0; x < static_cast<Element>(table.size()); ++x)
    if (n.contains(table[static_cast<std::size_t>(x)])) elements.push_back(x);
  return make_subgroup(f.tower(), n.level, std::move(elements));
}

FactorVerdict factors_through(const CompatibleFamily& f, const Subgroup& n) {
  require_homomorphism(f);
  require_normal(n);
  FactorVerdict v;
  v.preimage = preimage(f, n);
  v.factors = std::includes(v.preimage.elements.begin(), v.preimage.elements.end(), n.elements.begin(),
                            n.elements.end());
  if (v.factors && is_surjective(f.table(n.level))) {
    v.equality_checked = true;
    if (v.preimage.elements != n.elements) {
      throw std::logic_error("surjective homomorphism with N inside T^-1(N) but not equal to it");
    }
  }
  return v;
}

Subgroup finite_factor_closure(const CompatibleFamily& f, const Subgroup& n) {
  require_homomorphism(f);
  require_normal(n);
  if (!is_surjective(f.table(n.level))) {
    throw DomainError("level map " + std::to_string(n.level) + " is not surjective");
  }
  // current = N ∩ T^-1(N) ∩ ... ∩ T^-k(N); the next term is N ∩ T^-1(current).
  Subgroup current = n;
  const auto cap = f.tower().order(n.level);
  for (Element step = 0; step <= cap; ++step) {
    auto next = make_subgroup(f.tower(), n.level, intersect(n.elements, preimage(f, current).elements));
    if (next.elements == current.elements) return current;
    current = std::move(next);
  }
  throw std::logic_error("preimage intersection did not stabilize");
}

std::optional<FixedIdentityWitness> hom_nonergodic_witness(const CompatibleFamily& f) {
  require_homomorphism(f);
  for (Level i = 1; i <= f.depth(); ++i) {
    const auto& g = f.tower().level(i);
    if (g.order() == 1) continue;
    if (f(g.identity(), i) != g.identity()) throw std::logic_error("homomorphism moved the identity");
    return FixedIdentityWitness{i, g.identity()};
  }
  return std::nullopt;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteQuotient& q, Level level) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> found{generate_subgroup(q, level, {})};
  seen.insert(found.front().elements);
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (Element g = 0; g < q.order(); ++g) {
      if (found[k].contains(g)) continue;
      auto gens = found[k].elements;
      gens.push_back(g);
      auto h = generate_subgroup(q, level, gens);
      if (seen.insert(h.elements).second) found.push_back(std::move(h));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Subgroup& a, const Subgroup& b) {
              return std::pair(a.size(), a.elements) < std::pair(b.size(), b.elements);
            });
  return found;
}

}  // namespace profdyn
