#pragma once

// Short exact sequences 1 -> N -> E -> G -> 1 treated as symmetry scenarios.
// For the double of N with its charge Lagrangian condensed, the obstruction
// sequence is the input sequence itself, so the preserved/broken question is
// pure group theory: does the projection split, and which subgroups of G
// still admit sections when it does not.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "condensa/action.hpp"

namespace condensa {

struct UniversalScenario {
  ExtensionPresentation ext;
  std::vector<int> lift;  // least preimage per base element; lift of identity is identity
};

inline UniversalScenario make_universal_scenario(CayleyGroup E, CayleyGroup G,
                                                 std::vector<int> proj) {
  auto ext = make_extension(std::move(E), std::move(G), std::move(proj));
  std::vector<int> lift(ext.G.order(), -1);
  for (int x = 0; x < ext.E.order(); ++x)
    if (lift[ext.proj[x]] < 0) lift[ext.proj[x]] = x;
  lift[ext.G.identity()] = ext.E.identity();
  return UniversalScenario{std::move(ext), std::move(lift)};
}

namespace detail {

inline int kernel_position(const std::vector<int>& kernel, int x, const char* who) {
  const auto it = std::lower_bound(kernel.begin(), kernel.end(), x);
  if (it == kernel.end() || *it != x) throw std::logic_error(std::string(who) + ": element left the kernel");
  return static_cast<int>(it - kernel.begin());
}

}  // namespace detail

// Conjugation by the chosen lift, as a permutation of kernel positions.
inline Perm conjugation_on_kernel(const UniversalScenario& sc, int g) {
  const auto& K = sc.ext.kernel;
  Perm p(K.size());
  for (std::size_t i = 0; i < K.size(); ++i)
    p[i] = detail::kernel_position(K, sc.ext.E.conj(sc.lift[g], K[i]), "conjugation_on_kernel");
  return p;
}

// f(g,h) = lift(g) lift(h) lift(gh)^-1, valued in kernel positions. The lift
// normalization makes this a normalized factor set.
inline Cochain2 factor_set(const UniversalScenario& sc) {
  const auto& E = sc.ext.E;
  const auto& G = sc.ext.G;
  const int ng = G.order();
  Cochain2 f(ng, std::vector<int>(ng));
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h) {
      const int x = E.mul(E.mul(sc.lift[g], sc.lift[h]), E.inv(sc.lift[G.mul(g, h)]));
      f[g][h] = detail::kernel_position(sc.ext.kernel, x, "factor_set");
    }
  return f;
}

// The sub-extension over a subgroup H of the base: 1 -> N -> proj^-1(H) -> H -> 1.
inline ExtensionPresentation restrict_extension(const UniversalScenario& sc,
                                                const std::vector<int>& subgroup_elements) {
  const auto Hv = subgroup_view(sc.ext.G, subgroup_elements);
  std::vector<int> pre;
  for (int x = 0; x < sc.ext.E.order(); ++x)
    if (Hv.from_parent[sc.ext.proj[x]] >= 0) pre.push_back(x);
  const auto Ev = subgroup_view(sc.ext.E, pre);
  std::vector<int> proj(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) proj[i] = Hv.from_parent[sc.ext.proj[pre[i]]];
  return make_extension(Ev.group, Hv.group, std::move(proj));
}

struct SubgroupRestriction {
  std::vector<int> elements;  // subgroup of the base group, sorted
  std::size_t splitting_count;
  std::size_t class_count;
};

struct UniversalAnalysis {
  std::vector<std::vector<int>> splittings;
  std::vector<std::vector<std::size_t>> classes;
  bool preserved;
  std::vector<SubgroupRestriction> subgroups;  // one row per subgroup of the base
};

inline UniversalAnalysis analyze(const UniversalScenario& sc, std::size_t cap = kDefaultCap) {
  if (static_cast<std::size_t>(sc.ext.E.order()) > cap)
    fail_cap("analyze", static_cast<std::size_t>(sc.ext.E.order()), cap);
  UniversalAnalysis out;
  out.splittings = enumerate_splittings(sc.ext);
  out.classes = splitting_classes(sc.ext, out.splittings);
  out.preserved = !out.splittings.empty();
  for (const auto& H : enumerate_subgroups(sc.ext.G)) {
    const auto extH = restrict_extension(sc, H.elements);
    const auto sp = enumerate_splittings(extH);
    out.subgroups.push_back(
        SubgroupRestriction{H.elements, sp.size(), splitting_classes(extH, sp).size()});
  }
  return out;
}

// Realizes the scenario categorically for an abelian kernel N: the ambient
// theory is the double of N, the condensate is the charge Lagrangian (the
// function algebra on N), alpha is lifted conjugation (fluxes move by phi_g,
// charges by its dual), and omega is the factor set as pure fluxes. The
// obstruction extension must then reproduce the input sequence on the nose:
// the dictionary sends x = n lift(g) to (ev_n, g) with ev_n the ring operator
// of the flux n. Returns false if any leg of that dictionary fails to match.
inline bool cross_check_abelian(const UniversalScenario& sc, std::size_t cap = kDefaultCap) {
  const auto& E = sc.ext.E;
  const auto& G = sc.ext.G;
  const auto NV = subgroup_view(E, sc.ext.kernel);
  if (!NV.group.is_abelian()) fail_validation("cross_check_abelian: the kernel is not abelian");
  if (static_cast<std::size_t>(NV.group.order()) > cap)
    fail_cap("cross_check_abelian", static_cast<std::size_t>(NV.group.order()), cap);
  const auto co = coordinatize_abelian(NV.group);
  const auto& N = co.group;
  const int nn = N.order();
  const auto dd = drinfeld_double_abelian(N, cap);
  const Coords zero(N.rank(), 0);
  const auto flux_of = [&](int na) { return dd.index_of(N.coords_of(na), zero); };
  const auto charge_of = [&](int nc) { return dd.index_of(zero, N.coords_of(nc)); };

  // pairing rows identify each charge by its values on all fluxes
  std::vector<std::vector<QZ>> rows(nn);
  std::map<std::vector<QZ>, int> row_of;
  for (int c = 0; c < nn; ++c) {
    rows[c].reserve(nn);
    for (int f = 0; f < nn; ++f) rows[c].push_back(dd.theory.bform(charge_of(c), flux_of(f)));
    row_of.emplace(rows[c], c);
  }

  std::vector<Perm> alpha(G.order());
  for (int g = 0; g < G.order(); ++g) {
    Perm phi(nn), phi_inv(nn);
    for (int i = 0; i < nn; ++i) {
      const int y = E.conj(sc.lift[g], NV.to_parent[co.elem_of_coords[i]]);
      phi[i] = co.coords_of_elem[NV.from_parent[y]];
    }
    for (int i = 0; i < nn; ++i) phi_inv[phi[i]] = i;
    std::vector<int> dual(nn);
    for (int c = 0; c < nn; ++c) {
      std::vector<QZ> row(nn);
      for (int f = 0; f < nn; ++f) row[f] = rows[c][phi_inv[f]];
      dual[c] = row_of.at(row);
    }
    Perm a(dd.theory.order());
    for (int x = 0; x < dd.theory.order(); ++x) {
      const auto fc = dd.split(x);
      a[x] = dd.index_of(N.coords_of(phi[N.index_of(fc.first)]),
                         N.coords_of(dual[N.index_of(fc.second)]));
    }
    alpha[g] = std::move(a);
  }

  const auto f = factor_set(sc);
  Cochain2 omega(G.order(), std::vector<int>(G.order()));
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) omega[g][h] = flux_of(co.coords_of_elem[f[g][h]]);

  const auto act = make_categorical_action(dd.theory, G, alpha, omega);
  std::vector<int> charges(nn);
  for (int c = 0; c < nn; ++c) charges[c] = charge_of(c);
  std::sort(charges.begin(), charges.end());
  const auto A = make_etale_algebra(dd.theory, charges);
  const auto oe = obstruction_extension(act, A);

  std::vector<int> img(E.order());
  for (int x = 0; x < E.order(); ++x) {
    const int g = sc.ext.proj[x];
    const int ns = NV.from_parent[E.mul(x, E.inv(sc.lift[g]))];
    if (ns < 0) return false;
    const int chi = oe.restricted.aut.char_of_element[flux_of(co.coords_of_elem[ns])];
    img[x] = oe.product.index_of(chi, g);
  }
  std::vector<int> seen = img;
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < E.order(); ++i)
    if (seen[i] != i) return false;
  try {
    make_hom(E, oe.product.E, img);
  } catch (const validation_error&) {
    return false;
  }
  for (int x = 0; x < E.order(); ++x)
    if (oe.extension.proj[img[x]] != sc.ext.proj[x]) return false;
  for (int k : sc.ext.kernel)
    if (!std::binary_search(oe.extension.kernel.begin(), oe.extension.kernel.end(), img[k]))
      return false;
  return true;
}

}  // namespace condensa
