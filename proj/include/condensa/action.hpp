#pragma once
// Symmetry actions on pointed theories and the condensation obstructions.
//
// An action is a homomorphism alpha: G -> isometries of M together with a
// fractionalization cochain omega in Z^2_alpha(G, Inv(C)).  Against an
// algebra supported on B it restricts to w = ring_operator(omega)|_B valued
// in B-hat; the twisted product B-hat x_w G presents the automorphism group
// of the induced algebra, and its splittings are exactly the equivariant
// structures.  No splitting means the symmetry is categorically broken.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "condensa/cohomology.hpp"
#include "condensa/condense.hpp"
#include "condensa/errors.hpp"
#include "condensa/groups.hpp"
#include "condensa/metric.hpp"

namespace condensa {

struct CategoricalAction {
  MetricGroup M;
  CayleyGroup G;
  std::vector<Perm> alpha;  // per G element, an isometry of M
  Cochain2 omega;           // fractionalization, valued in element indices of M
};

inline CategoricalAction make_categorical_action(MetricGroup M, CayleyGroup G,
                                                 std::vector<Perm> alpha, Cochain2 omega) {
  // make_coeff_module validates alpha as a homomorphism into Aut(M.A)
  const auto module = make_coeff_module(G, to_cayley(M.A), alpha);
  for (int g = 0; g < G.order(); ++g)
    for (int x = 0; x < M.order(); ++x)
      if (M.q[alpha[g][x]] != M.q[x])
        fail_validation("make_categorical_action: alpha at " + G.label(g) +
                        " is not an isometry: q moves at " + M.label(x));
  validate_cochain2(module, omega);
  if (!is_twisted_2cocycle(module, omega))
    fail_validation("make_categorical_action: omega is not a twisted 2-cocycle");
  return CategoricalAction{std::move(M), std::move(G), std::move(alpha), std::move(omega)};
}

inline CategoricalAction trivial_action(const MetricGroup& M, const CayleyGroup& G) {
  std::vector<Perm> alpha(G.order(), identity_perm(M.order()));
  Cochain2 omega(G.order(), std::vector<int>(G.order(), 0));
  return make_categorical_action(M, G, std::move(alpha), std::move(omega));
}

// The action transported to a subgroup of G (same theory, same omega block).
inline CategoricalAction restrict_action(const CategoricalAction& act,
                                         const std::vector<int>& subgroup_elements) {
  const auto view = subgroup_view(act.G, subgroup_elements);
  const int k = view.group.order();
  std::vector<Perm> alpha(k);
  Cochain2 omega(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i) {
    alpha[i] = act.alpha[view.to_parent[i]];
    for (int j = 0; j < k; ++j) omega[i][j] = act.omega[view.to_parent[i]][view.to_parent[j]];
  }
  return make_categorical_action(act.M, view.group, std::move(alpha), std::move(omega));
}

namespace detail {

inline void require_same_ambient(const CategoricalAction& act, const EtaleAlgebra& A) {
  if (!(act.M.A == A.ambient.A) || act.M.q != A.ambient.q)
    fail_validation("action and algebra live in different ambient theories");
}

}  // namespace detail

// Witness that some isometry fails to stabilize the support setwise.
struct FirstObstructionWitness {
  int g;  // G element whose isometry moves the support
  int b;  // support element thrown out
};

inline std::optional<FirstObstructionWitness> first_obstruction_witness(
    const CategoricalAction& act, const EtaleAlgebra& A) {
  detail::require_same_ambient(act, A);
  for (int g = 0; g < act.G.order(); ++g)
    for (int b : A.B.elements)
      if (!std::binary_search(A.B.elements.begin(), A.B.elements.end(), act.alpha[g][b]))
        return FirstObstructionWitness{g, b};
  return std::nullopt;
}

// True when every alpha_g fixes the support setwise (the algebra survives the
// first level; false already breaks the symmetry).
inline bool first_obstruction(const CategoricalAction& act, const EtaleAlgebra& A) {
  return !first_obstruction_witness(act, A).has_value();
}

// The action restricted to the algebra: B-hat with its ambient realization,
// the dual G-action on it, and omega pushed through the ring operators.
struct RestrictedAction {
  EtaleAut aut;
  CoeffModule module;  // G acting on B-hat by (g.xi)(b) = xi(alpha_g^{-1}(b))
  Cochain2 w;          // valued in B-hat indices
};

inline RestrictedAction restricted_cocycle(const CategoricalAction& act, const EtaleAlgebra& A) {
  if (const auto bad = first_obstruction_witness(act, A))
    fail_validation("first obstruction failed: alpha at " + act.G.label(bad->g) + " moves " +
                    act.M.label(bad->b) + " out of the algebra");
  auto aut = etale_aut_group(A);
  const int ng = act.G.order();
  const int nc = aut.chars.order();
  // Through the realization the dual action is g.[b(a,-)] = [b(alpha_g(a),-)].
  std::vector<int> pre(nc, -1);
  for (int a = act.M.order() - 1; a >= 0; --a) pre[aut.char_of_element[a]] = a;
  std::vector<Perm> dual(ng, Perm(nc));
  for (int g = 0; g < ng; ++g)
    for (int chi = 0; chi < nc; ++chi) dual[g][chi] = aut.char_of_element[act.alpha[g][pre[chi]]];
  auto module = make_coeff_module(act.G, to_cayley(aut.chars), std::move(dual));
  Cochain2 w(ng, std::vector<int>(ng));
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h) w[g][h] = aut.char_of_element[act.omega[g][h]];
  if (!is_twisted_2cocycle(module, w))
    throw std::logic_error("restricted_cocycle: pushed cochain lost the cocycle law");
  return RestrictedAction{std::move(aut), std::move(module), std::move(w)};
}

// Aut of the induced algebra: the twisted product E = B-hat x_w G, with its
// exact sequence 1 -> B-hat -> E -> G -> 1.
struct ObstructionExtension {
  RestrictedAction restricted;
  TwistedProduct product;
  ExtensionPresentation extension;
};

inline ObstructionExtension obstruction_extension(const CategoricalAction& act,
                                                  const EtaleAlgebra& A,
                                                  std::size_t cap = kDefaultCap) {
  auto r = restricted_cocycle(act, A);
  auto tp = twisted_product_group(r.module, r.w, cap);
  auto ext = extension_of_twisted_product(tp, act.G);
  return ObstructionExtension{std::move(r), std::move(tp), std::move(ext)};
}

// Direct-input mode: the fractionalization is specified at the character
// level from the start; alpha still supplies the dual action on B-hat.
inline ObstructionExtension obstruction_extension_direct(const CategoricalAction& act,
                                                         const EtaleAlgebra& A, Cochain2 w,
                                                         std::size_t cap = kDefaultCap) {
  auto r = restricted_cocycle(act, A);
  validate_cochain2(r.module, w);
  if (!is_twisted_2cocycle(r.module, w))
    fail_validation("obstruction_extension: cochain is not a twisted 2-cocycle");
  r.w = std::move(w);
  auto tp = twisted_product_group(r.module, r.w, cap);
  auto ext = extension_of_twisted_product(tp, act.G);
  return ObstructionExtension{std::move(r), std::move(tp), std::move(ext)};
}

// chi: G -> B-hat with chi(e) = 0 and chi(gh) = chi(g) + g.chi(h) + w(g,h).
struct EquivariantStructure {
  std::vector<int> chi;  // G index -> B-hat index
};

inline bool is_equivariant_structure(const RestrictedAction& r, const std::vector<int>& chi) {
  const auto& G = r.module.G;
  if (static_cast<int>(chi.size()) != G.order()) return false;
  if (chi[G.identity()] != r.module.mzero()) return false;
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (chi[G.mul(g, h)] != r.module.madd(r.module.madd(chi[g], r.module.act(g, chi[h])), r.w[g][h]))
        return false;
  return true;
}

struct EquivariantEnumeration {
  std::vector<EquivariantStructure> structures;   // sorted by chi vector
  std::vector<std::vector<std::size_t>> classes;  // B-hat conjugacy orbits
};

// All equivariant structures, by DFS over character values on a generating
// sequence with the law used to propagate; then B-hat-conjugacy classes,
// which for abelian B-hat are the coboundary shifts chi + (xi - g.xi).
inline EquivariantEnumeration enumerate_equivariant_structures(
    const RestrictedAction& r, std::size_t cap = kDefaultCochainCap) {
  const auto& G = r.module.G;
  const int ng = G.order();
  const int nc = r.module.M.order();
  const auto gens = generating_sequence(G);
  detail::checked_power(static_cast<std::size_t>(nc), gens.size(), cap,
                        "enumerate_equivariant_structures");
  // Reach every element once from the identity through generator products.
  std::vector<int> parent(ng, -1), via(ng, -1), order_of_discovery;
  order_of_discovery.push_back(G.identity());
  std::vector<char> seen(ng, 0);
  seen[G.identity()] = 1;
  for (std::size_t head = 0; head < order_of_discovery.size(); ++head) {
    const int x = order_of_discovery[head];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const int y = G.mul(x, gens[s]);
      if (seen[y]) continue;
      seen[y] = 1;
      parent[y] = x;
      via[y] = static_cast<int>(s);
      order_of_discovery.push_back(y);
    }
  }
  std::vector<EquivariantStructure> structures;
  std::vector<int> assign(gens.size(), 0);
  while (true) {
    std::vector<int> chi(ng, -1);
    chi[G.identity()] = r.module.mzero();
    for (std::size_t i = 1; i < order_of_discovery.size(); ++i) {
      const int y = order_of_discovery[i];
      const int x = parent[y];
      const int s = gens[via[y]];
      chi[y] = r.module.madd(r.module.madd(chi[x], r.module.act(x, assign[via[y]])), r.w[x][s]);
    }
    if (is_equivariant_structure(r, chi)) structures.push_back(EquivariantStructure{chi});
    if (gens.empty() || !detail::advance_odometer(assign, nc)) break;
  }
  std::sort(structures.begin(), structures.end(),
            [](const EquivariantStructure& a, const EquivariantStructure& b) { return a.chi < b.chi; });
  // Conjugacy by B-hat: chi ~ chi + d(xi).
  std::map<std::vector<int>, std::size_t> where;
  for (std::size_t i = 0; i < structures.size(); ++i) where[structures[i].chi] = i;
  std::vector<char> used(structures.size(), 0);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    if (used[i]) continue;
    std::set<std::size_t> members;
    for (int xi = 0; xi < nc; ++xi) {
      std::vector<int> shifted(ng);
      for (int g = 0; g < ng; ++g)
        shifted[g] = r.module.madd(structures[i].chi[g],
                                   r.module.madd(xi, r.module.mneg(r.module.act(g, xi))));
      const auto it = where.find(shifted);
      if (it == where.end())
        throw std::logic_error("enumerate_equivariant_structures: shift left the solution set");
      members.insert(it->second);
    }
    for (std::size_t m : members) used[m] = 1;
    classes.emplace_back(members.begin(), members.end());
  }
  return EquivariantEnumeration{std::move(structures), std::move(classes)};
}

inline EquivariantEnumeration enumerate_equivariant_structures(
    const CategoricalAction& act, const EtaleAlgebra& A, std::size_t cap = kDefaultCochainCap) {
  return enumerate_equivariant_structures(restricted_cocycle(act, A), cap);
}

// The two directions of the splittings <-> equivariant structures bijection.
inline std::vector<int> section_of_structure(const ObstructionExtension& oe,
                                             const EquivariantStructure& s) {
  const int ng = oe.extension.G.order();
  std::vector<int> sigma(ng);
  for (int g = 0; g < ng; ++g) sigma[g] = oe.product.index_of(s.chi[g], g);
  return sigma;
}

inline EquivariantStructure structure_of_section(const ObstructionExtension& oe,
                                                 const std::vector<int>& sigma) {
  const int ng = oe.extension.G.order();
  std::vector<int> chi(ng);
  for (int g = 0; g < ng; ++g) {
    if (oe.product.proj[sigma[g]] != g)
      fail_validation("structure_of_section: the map is not a section of the projection");
    chi[g] = sigma[g] / ng;
  }
  return EquivariantStructure{std::move(chi)};
}

// The action the condensed theory inherits once an equivariant structure
// exists.  At the invertible level the descended data depends only on
// (alpha, omega); lambda is the certificate that descent is allowed, and is
// re-validated here.
inline CategoricalAction induce_condensed_action(const CategoricalAction& act,
                                                 const EtaleAlgebra& A,
                                                 const EquivariantStructure& lambda) {
  const auto r = restricted_cocycle(act, A);
  if (!is_equivariant_structure(r, lambda.chi))
    fail_validation("induce_condensed_action: lambda is not an equivariant structure");
  const auto ct = condense(A);
  const int ng = act.G.order();
  const int k = ct.theory.order();
  std::vector<Perm> abar(ng, Perm(k));
  for (int g = 0; g < ng; ++g) {
    for (int i = 0; i < k; ++i) {
      const int y = act.alpha[g][ct.reps[i]];
      if (ct.proj[y] < 0)
        throw std::logic_error("induce_condensed_action: isometry left the complement");
      abar[g][i] = ct.proj[y];
    }
    for (int x : ct.complement.elements)
      if (ct.proj[act.alpha[g][x]] != abar[g][ct.proj[x]])
        throw std::logic_error("induce_condensed_action: descent is not constant on cosets");
  }
  Cochain2 obar(ng, std::vector<int>(ng));
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h) {
      const int v = act.omega[g][h];
      if (ct.proj[v] < 0)
        fail_validation("fractionalization does not descend: omega(" + act.G.label(g) + "," +
                        act.G.label(h) + ") = " + act.M.label(v) +
                        " is not transparent to the algebra");
      obar[g][h] = ct.proj[v];
    }
  return make_categorical_action(ct.theory, act.G, std::move(abar), std::move(obar));
}

}  // namespace condensa
