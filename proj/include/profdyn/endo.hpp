#pragma once

#include <optional>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"
#include "profdyn/tower.hpp"

namespace profdyn {

/// det(M) mod p, by elimination over F_p (p prime).
Element determinant_mod_p(const IntMatrix& m, Element p);

/// det(M) is a p-adic unit.
bool is_unit_matrix(const IntMatrix& m, Element p);

struct HomomorphismFailure {
  Level level = 0;
  Element x = 0;
  Element y = 0;
};

/// First (level, x, y) with T(xy) != T(x)T(y), exhaustive at every level.
std::optional<HomomorphismFailure> check_homomorphism(const CompatibleFamily& f);

/// T_i^{-1}(N) as a subgroup of level i (T_i must be a homomorphism).
Subgroup preimage(const CompatibleFamily& f, const Subgroup& n);

struct FactorVerdict {
  bool factors = false;
  Subgroup preimage;
  /// T_i surjective, so N = T_i^{-1}(N) was also checked.
  bool equality_checked = false;
};

/// Whether T_i descends to G_i / N, i.e. N is contained in T_i^{-1}(N).
FactorVerdict factors_through(const CompatibleFamily& f, const Subgroup& n);

/// N' = intersection over k of T^{-k}(N), the largest T-invariant subgroup inside N.
Subgroup finite_factor_closure(const CompatibleFamily& f, const Subgroup& n);

struct FixedIdentityWitness {
  Level level = 0;
  Element identity = 0;
};

/// The identity of the first nontrivial level is fixed by any homomorphism, so that
/// level map is not minimal. Empty when every level is trivial.
std::optional<FixedIdentityWitness> hom_nonergodic_witness(const CompatibleFamily& f);

/// Every subgroup of q, built by adjoining one element at a time to known subgroups.
std::vector<Subgroup> enumerate_subgroups(const FiniteQuotient& q, Level level);

}  // namespace profdyn
