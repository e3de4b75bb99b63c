#pragma once

// Finite group plumbing.
//
// Two group representations are used throughout:
//   FiniteAbelianGroup  - coordinate tuples over invariant factors d1|d2|...|dk
//   CayleyGroup         - explicit multiplication table, validated on construction
//
// Conventions fixed here and relied on everywhere else:
//   * abelian elements are ordered lexicographically on coordinate tuples
//     (element index == lexicographic rank, first coordinate most significant);
//   * generating sequences are chosen greedily over elements sorted by
//     (element order, index); isomorphism searches backtrack over generator
//     images in that order, so the first witness found is deterministic;
//   * subgroup lists are sorted by (order, canonical generator list).

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "condensa/errors.hpp"

namespace condensa {

using Coords = std::vector<int>;

inline std::string tuple_label(const Coords& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup
// ---------------------------------------------------------------------------

class FiniteAbelianGroup {
 public:
  // factors must be the canonical invariant-factor chain: each >= 2 and
  // d[i] | d[i+1].  The empty list is the trivial group.
  explicit FiniteAbelianGroup(std::vector<int> factors = {}) : factors_(std::move(factors)) {
    order_ = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const int d = factors_[i];
      if (d < 2) fail_validation("FiniteAbelianGroup: invariant factor " + std::to_string(d) + " < 2");
      if (i > 0 && factors_[i - 1] != 0 && d % factors_[i - 1] != 0)
        fail_validation("FiniteAbelianGroup: " + std::to_string(factors_[i - 1]) + " does not divide " +
                        std::to_string(d) + " (factors must form a divisibility chain)");
      order_ *= d;
    }
  }

  static FiniteAbelianGroup trivial() { return FiniteAbelianGroup(std::vector<int>{}); }
  static FiniteAbelianGroup cyclic(int n) {
    if (n < 1) fail_validation("cyclic: order must be >= 1");
    return n == 1 ? trivial() : FiniteAbelianGroup({n});
  }

  const std::vector<int>& invariant_factors() const { return factors_; }
  int order() const { return order_; }
  int rank() const { return static_cast<int>(factors_.size()); }

  int index_of(const Coords& x) const {
    if (static_cast<int>(x.size()) != rank()) fail_validation("index_of: coordinate arity mismatch");
    int idx = 0;
    for (int i = 0; i < rank(); ++i) {
      int c = x[i] % factors_[i];
      if (c < 0) c += factors_[i];
      idx = idx * factors_[i] + c;
    }
    return idx;
  }

  Coords coords_of(int idx) const {
    Coords x(rank());
    for (int i = rank() - 1; i >= 0; --i) {
      x[i] = idx % factors_[i];
      idx /= factors_[i];
    }
    return x;
  }

  Coords zero() const { return Coords(rank(), 0); }

  Coords add(const Coords& a, const Coords& b) const {
    Coords r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = (a[i] + b[i]) % factors_[i];
    return r;
  }

  Coords neg(const Coords& a) const {
    Coords r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = (factors_[i] - a[i]) % factors_[i];
    return r;
  }

  Coords scale(long long n, const Coords& a) const {
    Coords r(rank());
    for (int i = 0; i < rank(); ++i) {
      long long v = (n * a[i]) % factors_[i];
      if (v < 0) v += factors_[i];
      r[i] = static_cast<int>(v);
    }
    return r;
  }

  int add_index(int a, int b) const { return index_of(add(coords_of(a), coords_of(b))); }
  int neg_index(int a) const { return index_of(neg(coords_of(a))); }

  int element_order(const Coords& a) const {
    long long o = 1;
    for (int i = 0; i < rank(); ++i) {
      const int d = factors_[i] / std::gcd(factors_[i], a[i] == 0 ? factors_[i] : a[i]);
      o = std::lcm(o, static_cast<long long>(d));
    }
    return static_cast<int>(o);
  }
  int element_order_index(int a) const { return element_order(coords_of(a)); }

  bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

  // "Z1" for the trivial group, otherwise "Z2 x Z4" style.
  std::string name() const {
    if (factors_.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " x ";
      s += "Z" + std::to_string(factors_[i]);
    }
    return s;
  }

 private:
  std::vector<int> factors_;
  int order_ = 1;
};

// ---------------------------------------------------------------------------
// Permutation helpers (used for automorphisms, isometries, group actions)
// ---------------------------------------------------------------------------

using Perm = std::vector<int>;  // perm[i] = image of i

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// compose(f, g) applies g first: (f*g)(x) = f(g(x)).
inline Perm compose_perms(const Perm& f, const Perm& g) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
  return r;
}

inline Perm invert_perm(const Perm& f) {
  Perm r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[f[i]] = static_cast<int>(i);
  return r;
}

inline bool is_permutation(const Perm& f, int n) {
  if (static_cast<int>(f.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : f) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline std::string cycle_string(const Perm& f, const std::vector<std::string>* names = nullptr) {
  std::vector<char> seen(f.size(), 0);
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (seen[i] || f[i] == static_cast<int>(i)) continue;
    s += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) s += " ";
      s += names ? (*names)[j] : std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(f[j]);
    }
    s += ")";
  }
  return s.empty() ? "id" : s;
}

// ---------------------------------------------------------------------------
// CayleyGroup
// ---------------------------------------------------------------------------

class CayleyGroup {
 public:
  explicit CayleyGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels = {},
                       std::size_t cap = kDefaultCap) {
    n_ = static_cast<int>(table.size());
    if (n_ < 1) fail_validation("CayleyGroup: empty table");
    if (static_cast<std::size_t>(n_) > cap) fail_cap("CayleyGroup order", n_, cap);
    t_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
      if (static_cast<int>(table[a].size()) != n_) fail_validation("CayleyGroup: table is not square");
      for (int b = 0; b < n_; ++b) {
        const int v = table[a][b];
        if (v < 0 || v >= n_)
          fail_validation("CayleyGroup: entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        t_[static_cast<std::size_t>(a) * n_ + b] = v;
      }
    }
    validate(table);
    if (!labels.empty()) {
      if (static_cast<int>(labels.size()) != n_) fail_validation("CayleyGroup: label count mismatch");
      labels_ = std::move(labels);
    } else {
      labels_.reserve(n_);
      for (int i = 0; i < n_; ++i) labels_.push_back("g" + std::to_string(i));
    }
    ord_.assign(n_, 0);
    for (int a = 0; a < n_; ++a) {
      int x = a, o = 1;
      while (x != e_) {
        x = mul(x, a);
        ++o;
      }
      ord_[a] = o;
    }
  }

  int order() const { return n_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return t_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int element_order(int a) const { return ord_[a]; }

  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

  int power(int a, long long k) const {
    if (k < 0) return power(inv(a), -k);
    int r = e_;
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[a]; }
  void set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_) fail_validation("set_labels: label count mismatch");
    labels_ = std::move(labels);
  }

  std::vector<int> element_orders() const { return ord_; }

  bool same_table(const CayleyGroup& o) const { return n_ == o.n_ && t_ == o.t_; }

 private:
  void validate(const std::vector<std::vector<int>>& table) {
    // Latin square.
    for (int a = 0; a < n_; ++a) {
      std::vector<char> row(n_, 0), col(n_, 0);
      for (int b = 0; b < n_; ++b) {
        if (row[mul(a, b)]++) fail_validation("CayleyGroup: row " + std::to_string(a) + " is not a permutation");
        if (col[mul(b, a)]++) fail_validation("CayleyGroup: column " + std::to_string(a) + " is not a permutation");
      }
    }
    // Two-sided identity.
    e_ = -1;
    for (int a = 0; a < n_; ++a) {
      bool ok = true;
      for (int b = 0; b < n_ && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
      if (ok) {
        e_ = a;
        break;
      }
    }
    if (e_ < 0) fail_validation("CayleyGroup: no identity element");
    // Inverses.
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == e_ && mul(b, a) == e_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) fail_validation("CayleyGroup: element " + std::to_string(a) + " has no inverse");
    }
    // Associativity, O(n^3).
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            fail_validation("CayleyGroup: not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
    (void)table;
  }

  int n_ = 0;
  std::vector<int> t_;
  int e_ = 0;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<int> ord_;
};

inline CayleyGroup to_cayley(const FiniteAbelianGroup& A, std::size_t cap = kDefaultCap) {
  const int n = A.order();
  if (static_cast<std::size_t>(n) > cap) fail_cap("to_cayley", n, cap);
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = A.add_index(a, b);
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) labels[a] = tuple_label(A.coords_of(a));
  return CayleyGroup(std::move(t), std::move(labels), cap);
}

inline CayleyGroup cyclic_cayley(int n, std::size_t cap = kDefaultCap) {
  return to_cayley(FiniteAbelianGroup::cyclic(n), cap);
}

// ---------------------------------------------------------------------------
// GroupHom
// ---------------------------------------------------------------------------

struct GroupHom {
  CayleyGroup source;
  CayleyGroup target;
  std::vector<int> map;  // map[a] = image of a

  int operator()(int a) const { return map[a]; }
};

inline GroupHom make_hom(const CayleyGroup& src, const CayleyGroup& tgt, std::vector<int> map) {
  if (static_cast<int>(map.size()) != src.order()) fail_validation("make_hom: map size mismatch");
  for (int v : map)
    if (v < 0 || v >= tgt.order()) fail_validation("make_hom: image out of range");
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      if (map[src.mul(a, b)] != tgt.mul(map[a], map[b]))
        fail_validation("make_hom: not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return GroupHom{src, tgt, std::move(map)};
}

inline bool is_injective(const GroupHom& f) {
  std::vector<char> seen(f.target.order(), 0);
  for (int v : f.map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline bool is_surjective(const GroupHom& f) {
  std::vector<char> seen(f.target.order(), 0);
  int cnt = 0;
  for (int v : f.map)
    if (!seen[v]) {
      seen[v] = 1;
      ++cnt;
    }
  return cnt == f.target.order();
}

// ---------------------------------------------------------------------------
// Closure, generating sequences, subgroups
// ---------------------------------------------------------------------------

inline std::vector<int> closure(const CayleyGroup& G, std::vector<int> seeds) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> members;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  push(G.identity());
  for (int s : seeds) push(s);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      push(G.mul(members[i], members[j]));
      push(G.mul(members[j], members[i]));
    }
  std::sort(members.begin(), members.end());
  return members;
}

// Elements sorted by (order, index); greedy generating sequence in that order.
inline std::vector<int> generating_sequence(const CayleyGroup& G) {
  std::vector<int> by_order(G.order());
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](int a, int b) { return G.element_order(a) < G.element_order(b); });
  std::vector<int> gens;
  std::vector<char> in(G.order(), 0);
  in[G.identity()] = 1;
  int covered = 1;
  for (int x : by_order) {
    if (in[x]) continue;
    gens.push_back(x);
    const auto cl = closure(G, gens);
    covered = static_cast<int>(cl.size());
    for (int y : cl) in[y] = 1;
    if (covered == G.order()) break;
  }
  return gens;
}

struct Subgroup {
  std::vector<int> elements;    // sorted element indices
  std::vector<int> generators;  // canonical greedy generator list
};

// Greedy canonical generators: repeatedly adjoin the least element not yet
// generated.  Used both for display and as the subgroup sort key.
inline std::vector<int> canonical_generators(const CayleyGroup& G, const std::vector<int>& elements) {
  std::vector<int> gens;
  std::vector<int> cl = closure(G, {});
  while (cl.size() < elements.size()) {
    int next = -1;
    for (int x : elements)
      if (!std::binary_search(cl.begin(), cl.end(), x)) {
        next = x;
        break;
      }
    gens.push_back(next);
    cl = closure(G, gens);
  }
  return gens;
}

namespace detail {

inline void sort_subgroups(std::vector<Subgroup>& subs) {
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.generators < b.generators;
  });
}

}  // namespace detail

// All subgroups, found by closing each known subgroup with one new element.
inline std::vector<Subgroup> enumerate_subgroups(const CayleyGroup& G, std::size_t cap = kDefaultCap) {
  if (static_cast<std::size_t>(G.order()) > cap) fail_cap("enumerate_subgroups", G.order(), cap);
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  const auto triv = closure(G, {});
  found.insert(triv);
  queue.push_back(triv);
  while (!queue.empty()) {
    const auto S = queue.back();
    queue.pop_back();
    for (int x = 0; x < G.order(); ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      auto seeds = S;
      seeds.push_back(x);
      auto T = closure(G, seeds);
      if (found.insert(T).second) queue.push_back(T);
    }
  }
  std::vector<Subgroup> subs;
  subs.reserve(found.size());
  for (const auto& S : found) subs.push_back(Subgroup{S, canonical_generators(G, S)});
  detail::sort_subgroups(subs);
  return subs;
}

// Abelian fast path: extending a subgroup S by x is the union of cosets S+kx.
inline std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& A, std::size_t cap = kDefaultCap) {
  const int n = A.order();
  if (static_cast<std::size_t>(n) > cap) fail_cap("enumerate_subgroups", n, cap);
  std::vector<std::vector<int>> addt(n);
  for (int a = 0; a < n; ++a) {
    addt[a].resize(n);
    for (int b = 0; b < n; ++b) addt[a][b] = A.add_index(a, b);
  }
  const int zero = A.index_of(A.zero());
  auto extend = [&](const std::vector<int>& S, int x) {
    std::vector<char> in(n, 0);
    std::vector<int> T;
    for (int s : S) {
      in[s] = 1;
      T.push_back(s);
    }
    int kx = x;
    while (kx != zero) {
      for (int s : S) {
        const int v = addt[s][kx];
        if (!in[v]) {
          in[v] = 1;
          T.push_back(v);
        }
      }
      kx = addt[kx][x];
    }
    std::sort(T.begin(), T.end());
    return T;
  };
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  std::vector<int> triv{zero};
  found.insert(triv);
  queue.push_back(triv);
  while (!queue.empty()) {
    const auto S = queue.back();
    queue.pop_back();
    for (int x = 0; x < n; ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      auto T = extend(S, x);
      if (found.insert(T).second) queue.push_back(T);
    }
  }
  // Canonical generators via the same greedy rule, in index order.
  auto greedy_gens = [&](const std::vector<int>& S) {
    std::vector<int> gens;
    std::vector<int> cl{zero};
    while (cl.size() < S.size()) {
      int next = -1;
      for (int x : S)
        if (!std::binary_search(cl.begin(), cl.end(), x)) {
          next = x;
          break;
        }
      gens.push_back(next);
      cl = extend(cl, next);
    }
    return gens;
  };
  std::vector<Subgroup> subs;
  subs.reserve(found.size());
  for (const auto& S : found) subs.push_back(Subgroup{S, greedy_gens(S)});
  detail::sort_subgroups(subs);
  return subs;
}

// A subgroup re-packaged as a CayleyGroup of its own, with index maps.
struct SubgroupView {
  CayleyGroup group;
  std::vector<int> to_parent;    // sub index -> parent index
  std::vector<int> from_parent;  // parent index -> sub index or -1
};

inline SubgroupView subgroup_view(const CayleyGroup& G, const std::vector<int>& elements,
                                  std::size_t cap = kDefaultCap) {
  const int m = static_cast<int>(elements.size());
  std::vector<int> from(G.order(), -1);
  for (int i = 0; i < m; ++i) from[elements[i]] = i;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int v = from[G.mul(elements[i], elements[j])];
      if (v < 0) fail_validation("subgroup_view: element set is not closed");
      t[i][j] = v;
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = G.label(elements[i]);
  return SubgroupView{CayleyGroup(std::move(t), std::move(labels), cap), elements, std::move(from)};
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

namespace detail {

// Extends generator images to a map on <gens>; -1 marks unassigned.  Returns
// false on any conflict with the two tables.
inline bool extend_on_generators(const CayleyGroup& G, const CayleyGroup& H, const std::vector<int>& gens,
                                 const std::vector<int>& images, std::vector<int>& f) {
  f.assign(G.order(), -1);
  f[G.identity()] = H.identity();
  for (std::size_t i = 0; i < images.size(); ++i) {
    int g = gens[i];
    if (f[g] != -1 && f[g] != images[i]) return false;
    f[g] = images[i];
  }
  std::vector<int> queue;
  queue.push_back(G.identity());
  for (std::size_t i = 0; i < images.size(); ++i) queue.push_back(gens[i]);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int a = queue[qi];
    for (std::size_t i = 0; i < images.size(); ++i) {
      const int b = G.mul(a, gens[i]);
      const int fb = H.mul(f[a], images[i]);
      if (f[b] == -1) {
        f[b] = fb;
        queue.push_back(b);
      } else if (f[b] != fb) {
        return false;
      }
    }
  }
  return true;
}

inline bool full_hom_check(const CayleyGroup& G, const CayleyGroup& H, const std::vector<int>& f) {
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (f[G.mul(a, b)] != H.mul(f[a], f[b])) return false;
  return true;
}

}  // namespace detail

// Backtracking search for isomorphisms G -> H over generator images.
// compatible(g, h) may add pruning beyond the built-in order match; accept()
// filters complete bijective homomorphisms.  result_cap == 0 means "first
// witness only".
inline std::vector<std::vector<int>> enumerate_isomorphisms(
    const CayleyGroup& G, const CayleyGroup& H, const std::function<bool(int, int)>& compatible = nullptr,
    const std::function<bool(const std::vector<int>&)>& accept = nullptr, std::size_t result_cap = 0) {
  std::vector<std::vector<int>> results;
  if (G.order() != H.order()) return results;
  auto og = G.element_orders();
  auto oh = H.element_orders();
  {
    auto sg = og, sh = oh;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return results;
  }
  const auto gens = generating_sequence(G);
  std::vector<int> images;
  std::vector<int> f;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (i == gens.size()) {
      if (!detail::extend_on_generators(G, H, gens, images, f)) return false;
      for (int v : f)
        if (v == -1) return false;
      std::vector<char> seen(H.order(), 0);
      for (int v : f) {
        if (seen[v]) return false;
        seen[v] = 1;
      }
      if (!detail::full_hom_check(G, H, f)) return false;
      if (accept && !accept(f)) return false;
      results.push_back(f);
      return result_cap == 0;  // stop at first witness when uncapped
    }
    for (int h = 0; h < H.order(); ++h) {
      if (oh[h] != og[gens[i]]) continue;
      if (compatible && !compatible(gens[i], h)) continue;
      images.push_back(h);
      const bool consistent = detail::extend_on_generators(G, H, gens, images, f);
      bool stop = false;
      if (consistent) stop = dfs(i + 1);
      images.pop_back();
      if (stop) return true;
      if (result_cap != 0 && results.size() > result_cap) return true;
    }
    return false;
  };
  dfs(0);
  return results;
}

// First isomorphism witness in the documented search order, if any.
inline std::optional<GroupHom> is_isomorphic(const CayleyGroup& G, const CayleyGroup& H) {
  auto res = enumerate_isomorphisms(G, H);
  if (res.empty()) return std::nullopt;
  return make_hom(G, H, res.front());
}

inline std::optional<GroupHom> is_isomorphic(const FiniteAbelianGroup& A, const FiniteAbelianGroup& B) {
  return is_isomorphic(to_cayley(A), to_cayley(B));
}

inline std::optional<GroupHom> is_isomorphic(const FiniteAbelianGroup& A, const CayleyGroup& H) {
  return is_isomorphic(to_cayley(A), H);
}

inline std::optional<GroupHom> is_isomorphic(const CayleyGroup& G, const FiniteAbelianGroup& B) {
  return is_isomorphic(G, to_cayley(B));
}

// ---------------------------------------------------------------------------
// Automorphism groups
// ---------------------------------------------------------------------------

struct AutomorphismGroup {
  CayleyGroup group;                   // product = composition (right factor applied first)
  std::vector<std::vector<int>> maps;  // maps[i] aligns with group element i
};

namespace detail {

inline AutomorphismGroup package_maps(std::vector<std::vector<int>> maps, std::size_t cap,
                                      const std::vector<std::string>* names) {
  std::sort(maps.begin(), maps.end());
  const int m = static_cast<int>(maps.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[maps[i]] = i;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto it = index.find(compose_perms(maps[i], maps[j]));
      if (it == index.end()) fail_validation("automorphism set not closed under composition");
      t[i][j] = it->second;
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = cycle_string(maps[i], names);
  return AutomorphismGroup{CayleyGroup(std::move(t), std::move(labels), std::max(cap, maps.size())),
                           std::move(maps)};
}

}  // namespace detail

// Full automorphism group as explicit bijections.  The cap bounds both the
// input order and the number of automorphisms returned.
inline AutomorphismGroup automorphism_group(const CayleyGroup& G, std::size_t cap = kDefaultCap) {
  if (static_cast<std::size_t>(G.order()) > cap) fail_cap("automorphism_group", G.order(), cap);
  auto maps = enumerate_isomorphisms(G, G, nullptr, nullptr, cap);
  if (maps.size() > cap) fail_cap("automorphism_group result", maps.size(), cap);
  return detail::package_maps(std::move(maps), cap, &G.labels());
}

inline AutomorphismGroup automorphism_group(const FiniteAbelianGroup& A, std::size_t cap = kDefaultCap) {
  return automorphism_group(to_cayley(A, cap), cap);
}

// ---------------------------------------------------------------------------
// Products and quotients
// ---------------------------------------------------------------------------

inline CayleyGroup direct_product(const CayleyGroup& A, const CayleyGroup& B, std::size_t cap = kDefaultCap) {
  const int n = A.order() * B.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto idx = [&](int a, int b) { return a * B.order() + b; };
  for (int a1 = 0; a1 < A.order(); ++a1)
    for (int b1 = 0; b1 < B.order(); ++b1)
      for (int a2 = 0; a2 < A.order(); ++a2)
        for (int b2 = 0; b2 < B.order(); ++b2)
          t[idx(a1, b1)][idx(a2, b2)] = idx(A.mul(a1, a2), B.mul(b1, b2));
  std::vector<std::string> labels(n);
  for (int a = 0; a < A.order(); ++a)
    for (int b = 0; b < B.order(); ++b) labels[idx(a, b)] = "(" + A.label(a) + "," + B.label(b) + ")";
  return CayleyGroup(std::move(t), std::move(labels), cap);
}

// Semidirect product N x| H.  act[h] must be an automorphism of N and
// h -> act[h] a homomorphism (left action): act[h1 h2] = act[h1] o act[h2].
inline CayleyGroup semidirect_product(const CayleyGroup& N, const CayleyGroup& H,
                                      const std::vector<Perm>& act, std::size_t cap = kDefaultCap) {
  if (static_cast<int>(act.size()) != H.order()) fail_validation("semidirect_product: action size mismatch");
  for (int h = 0; h < H.order(); ++h) {
    if (!is_permutation(act[h], N.order())) fail_validation("semidirect_product: action is not a permutation");
    for (int a = 0; a < N.order(); ++a)
      for (int b = 0; b < N.order(); ++b)
        if (act[h][N.mul(a, b)] != N.mul(act[h][a], act[h][b]))
          fail_validation("semidirect_product: action of h=" + std::to_string(h) + " is not an automorphism");
  }
  if (act[H.identity()] != identity_perm(N.order()))
    fail_validation("semidirect_product: identity must act trivially");
  for (int h1 = 0; h1 < H.order(); ++h1)
    for (int h2 = 0; h2 < H.order(); ++h2)
      if (act[H.mul(h1, h2)] != compose_perms(act[h1], act[h2]))
        fail_validation("semidirect_product: action is not a homomorphism");
  const int n = N.order() * H.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto idx = [&](int a, int h) { return a * H.order() + h; };
  for (int a1 = 0; a1 < N.order(); ++a1)
    for (int h1 = 0; h1 < H.order(); ++h1)
      for (int a2 = 0; a2 < N.order(); ++a2)
        for (int h2 = 0; h2 < H.order(); ++h2)
          t[idx(a1, h1)][idx(a2, h2)] = idx(N.mul(a1, act[h1][a2]), H.mul(h1, h2));
  std::vector<std::string> labels(n);
  for (int a = 0; a < N.order(); ++a)
    for (int h = 0; h < H.order(); ++h) labels[idx(a, h)] = "(" + N.label(a) + "," + H.label(h) + ")";
  return CayleyGroup(std::move(t), std::move(labels), cap);
}

struct QuotientGroup {
  CayleyGroup group;
  std::vector<int> projection;  // parent index -> coset index
  std::vector<int> reps;        // coset index -> least parent representative
};

inline QuotientGroup quotient_group(const CayleyGroup& G, const std::vector<int>& normal,
                                    std::size_t cap = kDefaultCap) {
  if (closure(G, normal) != normal) fail_validation("quotient_group: subgroup set is not closed");
  for (int g = 0; g < G.order(); ++g)
    for (int x : normal)
      if (!std::binary_search(normal.begin(), normal.end(), G.conj(g, x)))
        fail_validation("quotient_group: subgroup is not normal");
  std::vector<int> proj(G.order(), -1);
  std::vector<int> reps;
  for (int g = 0; g < G.order(); ++g) {
    if (proj[g] != -1) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : normal) proj[G.mul(g, x)] = c;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = proj[G.mul(reps[i], reps[j])];
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = "[" + G.label(reps[i]) + "]";
  return QuotientGroup{CayleyGroup(std::move(t), std::move(labels), cap), std::move(proj), std::move(reps)};
}

// ---------------------------------------------------------------------------
// Abelian structure recovery
// ---------------------------------------------------------------------------

// Invariant factors of an abelian group presented by any multiplication rule,
// recovered from the element-order statistics (these determine the type).
inline std::vector<int> abelian_invariants_from_orders(const std::vector<int>& orders) {
  const int n = static_cast<int>(orders.size());
  std::vector<int> primes;
  for (int p = 2, m = n; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  // partitions[p] = exponents of the p-primary decomposition, descending.
  std::vector<std::vector<int>> partitions;
  std::size_t max_parts = 0;
  for (int p : primes) {
    // f[k] = #elements whose p-part order divides p^k.
    std::vector<long long> f{1};
    while (true) {
      long long pk = 1;
      for (std::size_t i = 0; i < f.size(); ++i) pk *= p;
      long long cnt = 0;
      for (int o : orders) {
        int po = 1;
        int oo = o;
        while (oo % p == 0) {
          oo /= p;
          po *= p;
        }
        if (oo == 1 && po <= pk) ++cnt;  // order divides p^k
      }
      f.push_back(cnt);
      if (cnt == f[f.size() - 2]) break;  // stabilized
    }
    // s[k] = log_p f[k]; conjugate-partition counts m_k = s_k - s_{k-1}.
    std::vector<int> s;
    for (long long v : f) {
      int e = 0;
      while (v > 1) {
        v /= p;
        ++e;
      }
      s.push_back(e);
    }
    std::vector<int> part;  // part[i] = lambda_{i+1}, descending
    for (std::size_t k = 1; k < s.size(); ++k) {
      const int mk = s[k] - s[k - 1];  // #parts of size >= k
      while (static_cast<int>(part.size()) < mk) part.push_back(0);
      for (int i = 0; i < mk; ++i) part[i] = static_cast<int>(k);
    }
    partitions.push_back(part);
    max_parts = std::max(max_parts, part.size());
  }
  std::vector<int> factors;
  for (std::size_t j = 0; j < max_parts; ++j) {  // j = 0 is the largest factor
    long long d = 1;
    for (std::size_t pi = 0; pi < primes.size(); ++pi)
      if (j < partitions[pi].size()) {
        for (int e = 0; e < partitions[pi][j]; ++e) d *= primes[pi];
      }
    factors.push_back(static_cast<int>(d));
  }
  std::reverse(factors.begin(), factors.end());  // ascending chain
  return factors;
}

inline std::vector<int> abelian_invariant_factors(const CayleyGroup& G) {
  if (!G.is_abelian()) fail_validation("abelian_invariant_factors: group is not abelian");
  return abelian_invariants_from_orders(G.element_orders());
}

// Coordinates for an abelian structure given as (size, multiplication rule,
// identity).  Produces invariant factors, a basis realizing them, and the
// two-way element <-> coordinate translation.
struct AbelianCoordinatization {
  FiniteAbelianGroup group;
  std::vector<int> basis;                // basis[i] has order group.invariant_factors()[i]
  std::vector<int> elem_of_coords;       // group index -> structure element
  std::vector<int> coords_of_elem;       // structure element -> group index
};

inline AbelianCoordinatization coordinatize_abelian(int n, const std::function<int(int, int)>& mul,
                                                    int identity) {
  std::vector<int> orders(n);
  for (int a = 0; a < n; ++a) {
    int x = a, o = 1;
    while (x != identity) {
      x = mul(x, a);
      ++o;
    }
    orders[a] = o;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) != mul(b, a)) fail_validation("coordinatize_abelian: structure is not abelian");
  const auto factors = abelian_invariants_from_orders(orders);
  FiniteAbelianGroup A(factors);
  const int r = A.rank();
  // DFS for a basis: basis[i] of order factors[i], products all distinct.
  // The least significant slot (last coordinate) is filled first, so a
  // structure already in canonical lex order coordinatizes to itself.
  std::vector<int> basis(r, -1);
  std::vector<int> span{identity};
  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i < 0) return true;
    for (int cand = 0; cand < n; ++cand) {
      if (orders[cand] != factors[i]) continue;
      std::vector<int> next = span;
      std::vector<char> in(n, 0);
      for (int s : span) in[s] = 1;
      bool ok = true;
      int pw = cand;
      for (int k = 1; k < factors[i] && ok; ++k) {
        for (int s : span) {
          const int v = mul(s, pw);
          if (in[v]) {
            ok = false;
            break;
          }
          in[v] = 1;
          next.push_back(v);
        }
        pw = mul(pw, cand);
      }
      if (!ok) continue;
      basis[i] = cand;
      auto save = span;
      span = next;
      if (dfs(i - 1)) return true;
      span = save;
    }
    return false;
  };
  if (!dfs(r - 1)) fail_validation("coordinatize_abelian: no basis found (inconsistent structure)");
  std::vector<int> elem_of(A.order());
  std::vector<int> coords_of(n, -1);
  for (int idx = 0; idx < A.order(); ++idx) {
    const Coords c = A.coords_of(idx);
    int e = identity;
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c[i]; ++k) e = mul(e, basis[i]);
    elem_of[idx] = e;
    if (coords_of[e] != -1) fail_validation("coordinatize_abelian: basis span collision");
    coords_of[e] = idx;
  }
  return AbelianCoordinatization{A, basis, std::move(elem_of), std::move(coords_of)};
}

inline AbelianCoordinatization coordinatize_abelian(const CayleyGroup& G) {
  return coordinatize_abelian(G.order(), [&](int a, int b) { return G.mul(a, b); }, G.identity());
}

// ---------------------------------------------------------------------------
// Canonical products (CRT): arbitrary moduli -> invariant-factor chain
// ---------------------------------------------------------------------------

// Mixed products such as Z3 x Z3 x Z2 x Z2 do not form a divisibility chain.
// ProductLayout rewrites such a product as its canonical FiniteAbelianGroup
// and keeps the two-way element translation so that structure defined on the
// original coordinates (a quadratic form, a pairing) can be transported.
struct ProductLayout {
  FiniteAbelianGroup group;
  std::vector<int> moduli;          // original moduli, each >= 1
  std::vector<int> to_canonical;    // original mixed-radix index -> group index
  std::vector<int> from_canonical;  // group index -> original mixed-radix index

  int original_order() const {
    int n = 1;
    for (int m : moduli) n *= m;
    return n;
  }
  int original_index(const Coords& x) const {
    int idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      int c = x[i] % moduli[i];
      if (c < 0) c += moduli[i];
      idx = idx * moduli[i] + c;
    }
    return idx;
  }
  Coords original_coords(int idx) const {
    Coords x(moduli.size());
    for (int i = static_cast<int>(moduli.size()) - 1; i >= 0; --i) {
      x[i] = idx % moduli[i];
      idx /= moduli[i];
    }
    return x;
  }
};

namespace detail {

inline long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  const long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// CRT combine for pairwise coprime moduli: residues r[i] mod m[i].
inline long long crt(const std::vector<long long>& r, const std::vector<long long>& m) {
  long long M = 1;
  for (long long mi : m) M *= mi;
  long long v = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const long long Mi = M / m[i];
    long long x, y;
    egcd(Mi % m[i], m[i], x, y);
    x %= m[i];
    if (x < 0) x += m[i];
    v = (v + r[i] % m[i] * Mi % M * x) % M;
  }
  return v;
}

}  // namespace detail

inline ProductLayout canonical_abelian_product(std::vector<int> moduli) {
  struct Slot {
    int prime;
    int power;  // prime^exp
    int coord;  // original coordinate
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) fail_validation("canonical_abelian_product: modulus < 1");
    int m = moduli[i];
    for (int p = 2; m > 1; ++p)
      if (m % p == 0) {
        int pw = 1;
        while (m % p == 0) {
          m /= p;
          pw *= p;
        }
        slots.push_back(Slot{p, pw, static_cast<int>(i)});
      }
  }
  std::vector<int> primes;
  for (const auto& s : slots)
    if (std::find(primes.begin(), primes.end(), s.prime) == primes.end()) primes.push_back(s.prime);
  std::sort(primes.begin(), primes.end());
  // Per prime, sort that prime's slots by power descending (ties: coordinate
  // ascending) and right-align them against the canonical factor positions.
  std::size_t rmax = 0;
  std::map<int, std::vector<int>> per_prime;  // prime -> slot indices, largest first
  for (int p : primes) {
    std::vector<int> v;
    for (std::size_t si = 0; si < slots.size(); ++si)
      if (slots[si].prime == p) v.push_back(static_cast<int>(si));
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) { return slots[a].power > slots[b].power; });
    rmax = std::max(rmax, v.size());
    per_prime[p] = v;
  }
  std::vector<long long> canon(rmax, 1);          // canonical factors, ascending
  std::vector<int> slot_pos(slots.size(), -1);    // slot -> canonical position
  for (int p : primes) {
    const auto& v = per_prime[p];
    for (std::size_t t = 0; t < v.size(); ++t) {
      const std::size_t pos = rmax - 1 - t;  // largest power to the last factor
      slot_pos[v[t]] = static_cast<int>(pos);
      canon[pos] *= slots[v[t]].power;
    }
  }
  std::vector<int> factors;
  for (long long d : canon)
    if (d > 1) factors.push_back(static_cast<int>(d));
  const std::size_t dropped = canon.size() - factors.size();
  FiniteAbelianGroup A(factors);

  ProductLayout L;
  L.group = A;
  L.moduli = moduli;
  const int n = L.original_order();
  if (n != A.order()) fail_validation("canonical_abelian_product: order mismatch");
  L.to_canonical.assign(n, -1);
  L.from_canonical.assign(n, -1);
  for (int idx = 0; idx < n; ++idx) {
    const Coords x = L.original_coords(idx);
    // Gather residues per canonical position, then CRT-combine.
    Coords y(A.rank(), 0);
    for (int j = 0; j < A.rank(); ++j) {
      std::vector<long long> res, mods;
      for (std::size_t si = 0; si < slots.size(); ++si)
        if (slot_pos[si] == static_cast<int>(j + dropped)) {
          res.push_back(x[slots[si].coord] % slots[si].power);
          mods.push_back(slots[si].power);
        }
      y[j] = static_cast<int>(detail::crt(res, mods));
    }
    const int cidx = A.index_of(y);
    if (L.to_canonical[idx] != -1 || L.from_canonical[cidx] != -1)
      fail_validation("canonical_abelian_product: mapping is not a bijection");
    L.to_canonical[idx] = cidx;
    L.from_canonical[cidx] = idx;
  }
  return L;
}

}  // namespace condensa
