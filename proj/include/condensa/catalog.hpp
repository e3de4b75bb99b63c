#pragma once

// Named small groups.  The catalog holds one representative of every
// isomorphism class of order <= 16 (42 classes); identify_group matches an
// arbitrary CayleyGroup against it.

#include <string>
#include <vector>

#include "condensa/groups.hpp"

namespace condensa {

inline CayleyGroup cyclic_group(int n) { return cyclic_cayley(n); }

// Dihedral group of the given order 2n: rotations r^i and reflections r^i s.
inline CayleyGroup dihedral_group(int order) {
  if (order < 2 || order % 2 != 0) fail_validation("dihedral_group: order must be even and >= 2");
  const int n = order / 2;
  const auto rot = cyclic_cayley(n);
  Perm neg(n);
  for (int i = 0; i < n; ++i) neg[i] = (n - i) % n;
  auto G = semidirect_product(rot, cyclic_cayley(2), {identity_perm(n), neg});
  std::vector<std::string> labels(order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string s = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
      if (j) s += s.empty() ? "s" : " s";
      labels[i * 2 + j] = s.empty() ? "e" : s;
    }
  G.set_labels(labels);
  return G;
}

// Dicyclic group of order 4m: <a, b | a^{2m} = e, b^2 = a^m, b a b^-1 = a^-1>.
inline CayleyGroup dicyclic_group(int order) {
  if (order < 4 || order % 4 != 0) fail_validation("dicyclic_group: order must be divisible by 4");
  const int m = order / 4;
  const int twom = 2 * m;
  auto idx = [&](int i, int j) { return j * twom + i; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int i = 0; i < twom; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < twom; ++k)
        for (int l = 0; l < 2; ++l) {
          int v;
          if (j == 0)
            v = idx((i + k) % twom, l);
          else if (l == 0)
            v = idx(((i - k) % twom + twom) % twom, 1);
          else
            v = idx(((i - k + m) % twom + twom) % twom, 0);
          t[idx(i, j)][idx(k, l)] = v;
        }
  std::vector<std::string> labels(order);
  for (int i = 0; i < twom; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string s = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
      if (j) s += s.empty() ? "b" : " b";
      labels[idx(i, j)] = s.empty() ? "e" : s;
    }
  return CayleyGroup(std::move(t), std::move(labels));
}

inline CayleyGroup symmetric3() { return dihedral_group(6); }

inline CayleyGroup alternating4() {
  const auto V = to_cayley(FiniteAbelianGroup({2, 2}));
  const Perm sigma{0, 2, 3, 1};  // 3-cycle on the involutions of the Klein group
  return semidirect_product(V, cyclic_cayley(3), {identity_perm(4), sigma, compose_perms(sigma, sigma)});
}

struct CatalogEntry {
  std::string name;
  CayleyGroup group;
};

namespace detail {

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto ab = [&](std::vector<int> factors) {
    FiniteAbelianGroup A(std::move(factors));
    c.push_back(CatalogEntry{A.name(), to_cayley(A)});
  };
  auto add = [&](std::string name, CayleyGroup g) { c.push_back(CatalogEntry{std::move(name), std::move(g)}); };

  const auto z2 = cyclic_cayley(2);
  c.push_back(CatalogEntry{"Z1", cyclic_cayley(1)});
  ab({2});
  ab({3});
  ab({4});
  ab({2, 2});
  ab({5});
  ab({6});
  add("S3", symmetric3());
  ab({7});
  ab({8});
  ab({2, 4});
  ab({2, 2, 2});
  add("D8", dihedral_group(8));
  add("Q8", dicyclic_group(8));
  ab({9});
  ab({3, 3});
  ab({10});
  add("D10", dihedral_group(10));
  ab({11});
  ab({12});
  ab({2, 6});
  add("D12", dihedral_group(12));
  add("Dic12", dicyclic_group(12));
  add("A4", alternating4());
  ab({13});
  ab({14});
  add("D14", dihedral_group(14));
  ab({15});
  ab({16});
  ab({2, 8});
  ab({4, 4});
  ab({2, 2, 4});
  ab({2, 2, 2, 2});
  add("D16", dihedral_group(16));
  add("SD16", semidirect_product(cyclic_cayley(8), z2,
                                 {identity_perm(8), Perm{0, 3, 6, 1, 4, 7, 2, 5}}));  // r -> r^3
  add("Q16", dicyclic_group(16));
  add("M16", semidirect_product(cyclic_cayley(8), z2,
                                {identity_perm(8), Perm{0, 5, 2, 7, 4, 1, 6, 3}}));  // r -> r^5
  add("D8 x Z2", direct_product(dihedral_group(8), z2));
  add("Q8 x Z2", direct_product(dicyclic_group(8), z2));
  {
    const auto z4 = cyclic_cayley(4);
    const Perm neg{0, 3, 2, 1};
    add("Z4 : Z4", semidirect_product(z4, z4, {identity_perm(4), neg, identity_perm(4), neg}));
    const Perm swap{0, 2, 1, 3};  // swap the two Z2 coordinates
    add("(Z2 x Z2) : Z4",
        semidirect_product(to_cayley(FiniteAbelianGroup({2, 2})), z4,
                           {identity_perm(4), swap, identity_perm(4), swap}));
    // Central product D8 o Z4: identify r^2 with the square in Z4.
    const auto P = direct_product(dihedral_group(8), z4);
    const int rr = 4;  // index of r^2 in dihedral_group(8): (i=2, j=0) -> 2*2+0
    add("D8 o Z4", quotient_group(P, {0, rr * 4 + 2}).group);
  }
  return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& group_catalog() {
  static const std::vector<CatalogEntry> c = detail::build_catalog();
  return c;
}

inline std::string identify_group(const CayleyGroup& G) {
  for (const auto& e : group_catalog())
    if (e.group.order() == G.order() && is_isomorphic(G, e.group)) return e.name;
  return "order-" + std::to_string(G.order()) + " group (id unassigned)";
}

// Abelian groups are self-describing via their invariant factors.
inline std::string identify_group(const FiniteAbelianGroup& A) { return A.name(); }

}  // namespace condensa
