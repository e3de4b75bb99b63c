#pragma once

// Low-degree group cohomology by exhaustive enumeration.
//
// Coefficients are an abelian CayleyGroup M (written additively below) with a
// G-action by automorphisms.  Cochains are normalized: they vanish whenever
// any argument is the identity.  All enumerations are lexicographic over
// element indices, so outputs are deterministic.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "condensa/groups.hpp"

namespace condensa {

struct CoeffModule {
  CayleyGroup G;
  CayleyGroup M;
  std::vector<Perm> action;  // action[g] = automorphism of M

  int act(int g, int m) const { return action[g][m]; }
  int madd(int a, int b) const { return M.mul(a, b); }
  int mneg(int a) const { return M.inv(a); }
  int mzero() const { return M.identity(); }
};

inline CoeffModule make_coeff_module(CayleyGroup G, CayleyGroup M, std::vector<Perm> action) {
  if (!M.is_abelian()) fail_validation("make_coeff_module: coefficients must be abelian");
  if (static_cast<int>(action.size()) != G.order()) fail_validation("make_coeff_module: action size mismatch");
  for (int g = 0; g < G.order(); ++g) {
    if (!is_permutation(action[g], M.order()))
      fail_validation("make_coeff_module: action of g=" + std::to_string(g) + " is not a permutation");
    for (int a = 0; a < M.order(); ++a)
      for (int b = 0; b < M.order(); ++b)
        if (action[g][M.mul(a, b)] != M.mul(action[g][a], action[g][b]))
          fail_validation("make_coeff_module: action of g=" + std::to_string(g) + " is not an automorphism");
  }
  if (action[G.identity()] != identity_perm(M.order()))
    fail_validation("make_coeff_module: identity must act trivially");
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (action[G.mul(g, h)] != compose_perms(action[g], action[h]))
        fail_validation("make_coeff_module: action is not a homomorphism");
  return CoeffModule{std::move(G), std::move(M), std::move(action)};
}

inline CoeffModule trivial_module(const CayleyGroup& G, const CayleyGroup& M) {
  return make_coeff_module(G, M, std::vector<Perm>(G.order(), identity_perm(M.order())));
}

// ---------------------------------------------------------------------------
// Cochains
// ---------------------------------------------------------------------------

using Cochain1 = std::vector<int>;               // gamma[g] = M index, gamma[e] = 0
using Cochain2 = std::vector<std::vector<int>>;  // w[g][h] = M index, w normalized

inline Cochain2 zero_cochain2(const CoeffModule& mod) {
  return Cochain2(mod.G.order(), std::vector<int>(mod.G.order(), mod.mzero()));
}

inline void validate_cochain2(const CoeffModule& mod, const Cochain2& w) {
  const int n = mod.G.order();
  if (static_cast<int>(w.size()) != n) fail_validation("cochain: row count mismatch");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(w[g].size()) != n) fail_validation("cochain: column count mismatch");
    for (int h = 0; h < n; ++h)
      if (w[g][h] < 0 || w[g][h] >= mod.M.order()) fail_validation("cochain: value out of range");
  }
  for (int g = 0; g < n; ++g)
    if (w[mod.G.identity()][g] != mod.mzero() || w[g][mod.G.identity()] != mod.mzero())
      fail_validation("cochain: not normalized (nonzero on identity arguments)");
}

namespace detail {

inline bool cocycle_condition(const CoeffModule& mod, const Cochain2& w) {
  const int n = mod.G.order();
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        int t = mod.act(g, w[h][k]);
        t = mod.madd(t, mod.mneg(w[mod.G.mul(g, h)][k]));
        t = mod.madd(t, w[g][mod.G.mul(h, k)]);
        t = mod.madd(t, mod.mneg(w[g][h]));
        if (t != mod.mzero()) return false;
      }
  return true;
}

}  // namespace detail

inline bool is_twisted_2cocycle(const CoeffModule& mod, const Cochain2& w) {
  validate_cochain2(mod, w);
  return detail::cocycle_condition(mod, w);
}

// (d gamma)(g, h) = g.gamma(h) - gamma(gh) + gamma(g)
inline Cochain2 coboundary_of(const CoeffModule& mod, const Cochain1& gamma) {
  const int n = mod.G.order();
  Cochain2 w = zero_cochain2(mod);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int t = mod.act(g, gamma[h]);
      t = mod.madd(t, mod.mneg(gamma[mod.G.mul(g, h)]));
      t = mod.madd(t, gamma[g]);
      w[g][h] = t;
    }
  return w;
}

inline Cochain2 add_cochains(const CoeffModule& mod, const Cochain2& a, const Cochain2& b) {
  Cochain2 r = a;
  for (int g = 0; g < mod.G.order(); ++g)
    for (int h = 0; h < mod.G.order(); ++h) r[g][h] = mod.madd(a[g][h], b[g][h]);
  return r;
}

inline Cochain2 sub_cochains(const CoeffModule& mod, const Cochain2& a, const Cochain2& b) {
  Cochain2 r = a;
  for (int g = 0; g < mod.G.order(); ++g)
    for (int h = 0; h < mod.G.order(); ++h) r[g][h] = mod.madd(a[g][h], mod.mneg(b[g][h]));
  return r;
}

namespace detail {

// Free positions of a normalized cochain on G^k: non-identity arguments only.
// The odometer advances the last slot fastest, so tuples come out in
// lexicographic order.
inline std::vector<int> non_identity_elements(const CayleyGroup& G) {
  std::vector<int> v;
  for (int g = 0; g < G.order(); ++g)
    if (g != G.identity()) v.push_back(g);
  return v;
}

inline bool advance_odometer(std::vector<int>& digits, int base) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const char* op) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (c > cap / std::max<std::size_t>(base, 1)) fail_cap(op, cap + 1, cap);
    c *= base;
  }
  if (c > cap) fail_cap(op, c, cap);
  return c;
}

}  // namespace detail

// First normalized 1-cochain (lexicographic) whose coboundary equals w.
inline std::optional<Cochain1> is_coboundary(const CoeffModule& mod, const Cochain2& w,
                                             std::size_t cap = kDefaultCochainCap) {
  validate_cochain2(mod, w);
  const auto free = detail::non_identity_elements(mod.G);
  detail::checked_power(mod.M.order(), free.size(), cap, "is_coboundary candidates");
  std::vector<int> digits(free.size(), 0);
  Cochain1 gamma(mod.G.order(), mod.mzero());
  do {
    for (std::size_t i = 0; i < free.size(); ++i) gamma[free[i]] = digits[i];
    if (coboundary_of(mod, gamma) == w) return gamma;
  } while (detail::advance_odometer(digits, mod.M.order()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// H^2 by enumeration
// ---------------------------------------------------------------------------

struct H2Result {
  std::vector<Cochain2> reps;     // one per class; the trivial class comes
                                  // first, represented by the zero cochain
  std::size_t cocycle_count;     // |Z^2|
  std::size_t coboundary_count;  // |B^2|
};

inline H2Result h2_classes(const CoeffModule& mod, std::size_t cap = kDefaultCochainCap) {
  const int m = mod.M.order();
  const auto free = detail::non_identity_elements(mod.G);
  const std::size_t slots = free.size() * free.size();
  detail::checked_power(m, slots, cap, "h2_classes candidates");

  // All normalized twisted 2-cocycles, generated in lexicographic order.
  std::vector<Cochain2> cocycles;
  {
    std::vector<int> digits(slots, 0);
    Cochain2 w = zero_cochain2(mod);
    do {
      std::size_t k = 0;
      for (int g : free)
        for (int h : free) w[g][h] = digits[k++];
      if (detail::cocycle_condition(mod, w)) cocycles.push_back(w);
    } while (detail::advance_odometer(digits, m));
  }

  // All coboundaries.
  std::set<Cochain2> boundaries;
  {
    std::vector<int> digits(free.size(), 0);
    Cochain1 gamma(mod.G.order(), mod.mzero());
    do {
      for (std::size_t i = 0; i < free.size(); ++i) gamma[free[i]] = digits[i];
      boundaries.insert(coboundary_of(mod, gamma));
    } while (detail::advance_odometer(digits, m));
  }

  // Partition the (sorted) cocycle list into coboundary cosets.
  std::vector<char> seen(cocycles.size(), 0);
  auto locate = [&](const Cochain2& w) {
    const auto it = std::lower_bound(cocycles.begin(), cocycles.end(), w);
    if (it == cocycles.end() || *it != w) fail_validation("h2_classes: coset left the cocycle set");
    return static_cast<std::size_t>(it - cocycles.begin());
  };
  H2Result out;
  out.cocycle_count = cocycles.size();
  out.coboundary_count = boundaries.size();
  const Cochain2 zero = zero_cochain2(mod);
  // Mark the trivial class first so its representative is the zero cochain.
  out.reps.push_back(zero);
  for (const auto& b : boundaries) seen[locate(add_cochains(mod, zero, b))] = 1;
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    if (seen[i]) continue;
    out.reps.push_back(cocycles[i]);
    for (const auto& b : boundaries) seen[locate(add_cochains(mod, cocycles[i], b))] = 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crossed homomorphisms: Z^1, B^1, H^1
// ---------------------------------------------------------------------------

// gamma(gh) = gamma(g) + g.gamma(h)
inline bool is_crossed_hom(const CoeffModule& mod, const Cochain1& gamma) {
  const int n = mod.G.order();
  if (static_cast<int>(gamma.size()) != n || gamma[mod.G.identity()] != mod.mzero()) return false;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (gamma[mod.G.mul(g, h)] != mod.madd(gamma[g], mod.act(g, gamma[h]))) return false;
  return true;
}

inline std::vector<Cochain1> enumerate_z1(const CoeffModule& mod, std::size_t cap = kDefaultCochainCap) {
  const auto gens = generating_sequence(mod.G);
  detail::checked_power(mod.M.order(), gens.size(), cap, "enumerate_z1 candidates");
  std::vector<Cochain1> out;
  std::vector<int> digits(gens.size(), 0);
  do {
    // Propagate gamma over words in the generators; conflicts reject.
    Cochain1 gamma(mod.G.order(), -1);
    gamma[mod.G.identity()] = mod.mzero();
    bool ok = true;
    for (std::size_t i = 0; i < gens.size() && ok; ++i) {
      if (gamma[gens[i]] == -1)
        gamma[gens[i]] = digits[i];
      else if (gamma[gens[i]] != digits[i])
        ok = false;
    }
    std::vector<int> queue{mod.G.identity()};
    for (int g : gens) queue.push_back(g);
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const int a = queue[qi];
      if (gamma[a] == -1) continue;
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        const int b = mod.G.mul(a, gens[i]);
        const int v = mod.madd(gamma[a], mod.act(a, digits[i]));
        if (gamma[b] == -1) {
          gamma[b] = v;
          queue.push_back(b);
        } else if (gamma[b] != v) {
          ok = false;
        }
      }
    }
    if (ok) {
      for (int v : gamma) ok = ok && v != -1;
      if (ok && is_crossed_hom(mod, gamma)) out.push_back(gamma);
    }
  } while (detail::advance_odometer(digits, mod.M.order()));
  std::sort(out.begin(), out.end());
  return out;
}

// Principal crossed homomorphisms gamma_n(g) = n - g.n
inline std::vector<Cochain1> enumerate_b1(const CoeffModule& mod) {
  std::set<Cochain1> out;
  for (int n = 0; n < mod.M.order(); ++n) {
    Cochain1 gamma(mod.G.order());
    for (int g = 0; g < mod.G.order(); ++g) gamma[g] = mod.madd(n, mod.mneg(mod.act(g, n)));
    out.insert(gamma);
  }
  return {out.begin(), out.end()};
}

struct H1Result {
  std::size_t z1_count;
  std::size_t b1_count;
  std::size_t h1_count;
  std::size_t fixed_points;  // |M^G|
};

inline H1Result h1_counts(const CoeffModule& mod, std::size_t cap = kDefaultCochainCap) {
  const auto z1 = enumerate_z1(mod, cap);
  const auto b1 = enumerate_b1(mod);
  std::size_t fixed = 0;
  for (int m = 0; m < mod.M.order(); ++m) {
    bool fp = true;
    for (int g = 0; g < mod.G.order() && fp; ++g) fp = mod.act(g, m) == m;
    if (fp) ++fixed;
  }
  if (b1.empty() || z1.size() % b1.size() != 0) fail_validation("h1_counts: |B1| does not divide |Z1|");
  // Orbit-counting consistency: |B^1| = |M| / |M^G|.
  if (b1.size() * fixed != static_cast<std::size_t>(mod.M.order()))
    fail_validation("h1_counts: principal crossed homs disagree with fixed-point count");
  return H1Result{z1.size(), b1.size(), z1.size() / b1.size(), fixed};
}

// ---------------------------------------------------------------------------
// Extensions and splittings
// ---------------------------------------------------------------------------

struct ExtensionPresentation {
  CayleyGroup E;
  CayleyGroup G;
  std::vector<int> proj;    // surjective hom E -> G
  std::vector<int> kernel;  // sorted preimage of the identity
};

inline ExtensionPresentation make_extension(CayleyGroup E, CayleyGroup G, std::vector<int> proj) {
  const auto hom = make_hom(E, G, proj);
  if (!is_surjective(hom)) fail_validation("make_extension: projection is not surjective");
  std::vector<int> kernel;
  for (int x = 0; x < E.order(); ++x)
    if (proj[x] == G.identity()) kernel.push_back(x);
  return ExtensionPresentation{std::move(E), std::move(G), std::move(proj), std::move(kernel)};
}

// Group-homomorphism sections of the projection, sorted lexicographically.
inline std::vector<std::vector<int>> enumerate_splittings(const ExtensionPresentation& ext,
                                                          std::size_t cap = kDefaultCochainCap) {
  const auto& G = ext.G;
  const auto& E = ext.E;
  const auto gens = generating_sequence(G);
  std::vector<std::vector<int>> candidates(gens.size());
  std::size_t space = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (int x = 0; x < E.order(); ++x)
      if (ext.proj[x] == gens[i] && E.element_order(x) == G.element_order(gens[i]))
        candidates[i].push_back(x);
    if (space > cap / std::max<std::size_t>(candidates[i].size(), 1))
      fail_cap("enumerate_splittings candidates", cap + 1, cap);
    space *= std::max<std::size_t>(candidates[i].size(), 1);
    if (candidates[i].empty()) return {};
  }
  std::vector<std::vector<int>> out;
  std::vector<int> images;
  std::vector<int> f;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == gens.size()) {
      if (!detail::extend_on_generators(G, E, gens, images, f)) return;
      for (int v : f)
        if (v == -1) return;
      if (!detail::full_hom_check(G, E, f)) return;
      for (int g = 0; g < G.order(); ++g)
        if (ext.proj[f[g]] != g) return;
      out.push_back(f);
      return;
    }
    for (int x : candidates[i]) {
      images.push_back(x);
      if (detail::extend_on_generators(G, E, gens, images, f)) dfs(i + 1);
      images.pop_back();
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Partition of splittings under conjugation by kernel elements.  Classes are
// listed by least member index; members are indices into the input list.
inline std::vector<std::vector<std::size_t>> splitting_classes(const ExtensionPresentation& ext,
                                                               const std::vector<std::vector<int>>& splittings) {
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < splittings.size(); ++i) index[splittings[i]] = i;
  std::vector<char> assigned(splittings.size(), 0);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < splittings.size(); ++i) {
    if (assigned[i]) continue;
    std::set<std::size_t> members;
    for (int n : ext.kernel) {
      std::vector<int> conj(ext.G.order());
      for (int g = 0; g < ext.G.order(); ++g) conj[g] = ext.E.mul(ext.E.mul(n, splittings[i][g]), ext.E.inv(n));
      const auto it = index.find(conj);
      if (it == index.end()) fail_validation("splitting_classes: conjugate left the splitting set");
      members.insert(it->second);
    }
    for (std::size_t mbr : members) assigned[mbr] = 1;
    classes.emplace_back(members.begin(), members.end());
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Twisted product: the extension M x_w G
// ---------------------------------------------------------------------------

struct TwistedProduct {
  CayleyGroup E;
  std::vector<int> proj;         // E index -> G index
  std::vector<int> embed_coeff;  // M index -> E index

  int index_of(int m, int g) const { return m * static_cast<int>(proj.size() / embed_coeff.size()) + g; }
};

// (m, g)(m', g') = (m + g.m' + w(g, g'), gg').  Associativity of this product
// is exactly the twisted 2-cocycle condition on w.
inline TwistedProduct twisted_product_group(const CoeffModule& mod, const Cochain2& w,
                                            std::size_t cap = kDefaultCap) {
  if (!is_twisted_2cocycle(mod, w))
    fail_validation("twisted_product_group: cochain is not a twisted 2-cocycle");
  const int nm = mod.M.order();
  const int ng = mod.G.order();
  const int n = nm * ng;
  auto idx = [&](int m, int g) { return m * ng + g; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int m1 = 0; m1 < nm; ++m1)
    for (int g1 = 0; g1 < ng; ++g1)
      for (int m2 = 0; m2 < nm; ++m2)
        for (int g2 = 0; g2 < ng; ++g2) {
          const int m = mod.madd(mod.madd(m1, mod.act(g1, m2)), w[g1][g2]);
          t[idx(m1, g1)][idx(m2, g2)] = idx(m, mod.G.mul(g1, g2));
        }
  std::vector<std::string> labels(n);
  for (int m = 0; m < nm; ++m)
    for (int g = 0; g < ng; ++g) labels[idx(m, g)] = "(" + mod.M.label(m) + "," + mod.G.label(g) + ")";
  TwistedProduct out{CayleyGroup(std::move(t), std::move(labels), cap), {}, {}};
  out.proj.resize(n);
  out.embed_coeff.resize(nm);
  for (int m = 0; m < nm; ++m) {
    out.embed_coeff[m] = idx(m, mod.G.identity());
    for (int g = 0; g < ng; ++g) out.proj[idx(m, g)] = g;
  }
  return out;
}

inline ExtensionPresentation extension_of_twisted_product(const TwistedProduct& tp, const CayleyGroup& G) {
  return make_extension(tp.E, G, tp.proj);
}

}  // namespace condensa
