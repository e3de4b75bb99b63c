#pragma once
// Connected etale algebras in pointed theories and anyon condensation.
//
// An algebra is supported on an isotropic subgroup B (every summand is a
// boson).  Condensing it passes to B-perp / B with the induced form, and the
// algebra's automorphism group is the character group of B, realized on the
// ambient theory by ring operators a |-> b(a,-)|_B.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "condensa/errors.hpp"
#include "condensa/groups.hpp"
#include "condensa/metric.hpp"
#include "condensa/qz.hpp"

namespace condensa {

struct EtaleAlgebra {
  MetricGroup ambient;
  Subgroup B;  // isotropic support, elements sorted ascending
};

namespace detail {

// S must already be a subgroup; returns the subgroup generated by S and x.
inline std::vector<int> abelian_extend(const FiniteAbelianGroup& A, const std::vector<int>& S,
                                       int x) {
  std::vector<char> in(A.order(), 0);
  std::vector<int> T = S;
  for (int s : S) in[s] = 1;
  for (int kx = x; kx != 0; kx = A.add_index(kx, x))
    for (int s : S) {
      const int v = A.add_index(s, kx);
      if (!in[v]) {
        in[v] = 1;
        T.push_back(v);
      }
    }
  std::sort(T.begin(), T.end());
  return T;
}

inline std::vector<int> abelian_greedy_generators(const FiniteAbelianGroup& A,
                                                  const std::vector<int>& elements) {
  std::vector<int> gens;
  std::vector<int> cl{0};
  while (cl.size() < elements.size()) {
    int next = -1;
    for (int x : elements)
      if (!std::binary_search(cl.begin(), cl.end(), x)) {
        next = x;
        break;
      }
    gens.push_back(next);
    cl = abelian_extend(A, cl, next);
  }
  return gens;
}

}  // namespace detail

inline bool is_isotropic(const MetricGroup& M, const std::vector<int>& elements) {
  for (int x : elements)
    if (!M.q[x].is_zero()) return false;
  return true;
}

inline EtaleAlgebra make_etale_algebra(const MetricGroup& M, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) fail_validation("make_etale_algebra: empty support");
  for (int x : elements)
    if (x < 0 || x >= M.order()) fail_validation("make_etale_algebra: element out of range");
  for (int x : elements)
    for (int y : elements)
      if (!std::binary_search(elements.begin(), elements.end(), M.A.add_index(x, y)))
        fail_validation("make_etale_algebra: support is not a subgroup: " + M.label(x) + " + " +
                        M.label(y) + " escapes it");
  for (int x : elements)
    if (!M.q[x].is_zero())
      fail_validation("make_etale_algebra: support is not isotropic: q(" + M.label(x) + ") = " +
                      M.q[x].str());
  auto gens = detail::abelian_greedy_generators(M.A, elements);
  return EtaleAlgebra{M, Subgroup{std::move(elements), std::move(gens)}};
}

inline bool is_lagrangian(const EtaleAlgebra& A) {
  const long long b = static_cast<long long>(A.B.elements.size());
  return b * b == A.ambient.order();
}

// All isotropic subgroups, smallest first; always starts with the trivial one.
inline std::vector<EtaleAlgebra> enumerate_etale(const MetricGroup& M,
                                                 std::size_t cap = kDefaultCap) {
  std::vector<EtaleAlgebra> out;
  for (auto& S : enumerate_subgroups(M.A, cap))
    if (is_isotropic(M, S.elements)) out.push_back(EtaleAlgebra{M, std::move(S)});
  return out;
}

inline std::string algebra_label(const EtaleAlgebra& A) {
  std::string s;
  for (int x : A.B.elements) {
    if (!s.empty()) s += " (+) ";
    s += A.ambient.label(x);
  }
  return s;
}

// A boson of order > 2 invites the ill-formed two-term label "1 (+) g": that
// set is not fusion-closed, so no enumerated algebra carries it.  One note per
// cyclic subgroup generated by such a boson, keyed to its least generator.
inline std::vector<std::string> etale_label_notes(const MetricGroup& M) {
  std::vector<std::string> notes;
  std::set<std::vector<int>> seen;
  for (int a = 1; a < M.order(); ++a) {
    if (!M.q[a].is_zero()) continue;
    const int k = M.A.element_order_index(a);
    if (k <= 2) continue;
    if (!seen.insert(detail::abelian_extend(M.A, {0}, a)).second) continue;
    notes.push_back("note: boson '" + M.label(a) + "' has order " + std::to_string(k) +
                    ", so '1 (+) " + M.label(a) +
                    "' is not a fusion-closed support; algebras through '" + M.label(a) +
                    "' are supported on subgroups of <" + M.label(a) + ">");
  }
  return notes;
}

// B-perp: everything that braids trivially with all of B.
inline Subgroup orthogonal_complement(const MetricGroup& M, const std::vector<int>& B) {
  std::vector<int> el;
  for (int x = 0; x < M.order(); ++x) {
    bool ok = true;
    for (int y : B)
      if (!M.bform(x, y).is_zero()) {
        ok = false;
        break;
      }
    if (ok) el.push_back(x);
  }
  return Subgroup{el, detail::abelian_greedy_generators(M.A, el)};
}

struct CondensedTheory {
  MetricGroup theory;     // induced form on B-perp / B
  std::vector<int> reps;  // theory index -> least ambient representative
  std::vector<int> proj;  // ambient index -> theory index, -1 outside B-perp
  Subgroup complement;    // B-perp in the ambient theory
};

// Local modules of the algebra: cosets of B inside B-perp, with the induced
// form.  The induced form being constant on cosets and nondegenerate are
// theorems here, but both are re-verified at runtime (the latter inside
// make_metric_group).
inline CondensedTheory condense(const EtaleAlgebra& A) {
  const MetricGroup& M = A.ambient;
  const int n = M.order();
  auto perp = orthogonal_complement(M, A.B.elements);
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x : perp.elements) {  // ascending scan: first visit is the least member
    if (coset_of[x] != -1) continue;
    const int r = static_cast<int>(reps.size());
    for (int b : A.B.elements) {
      const int y = M.A.add_index(x, b);
      coset_of[y] = r;
      if (M.q[y] != M.q[x]) throw std::logic_error("condense: form not constant on a coset");
    }
    reps.push_back(x);
  }
  const int k = static_cast<int>(reps.size());
  const auto coord = coordinatize_abelian(
      k, [&](int i, int j) { return coset_of[M.A.add_index(reps[i], reps[j])]; }, 0);
  std::vector<QZ> q(k);
  std::vector<std::string> labels(k);
  std::vector<int> out_reps(k);
  for (int i = 0; i < k; ++i) {
    const int r = reps[coord.elem_of_coords[i]];
    q[i] = M.q[r];
    labels[i] = "[" + M.label(r) + "]";
    out_reps[i] = r;
  }
  auto theory = make_metric_group(coord.group, std::move(q), std::move(labels));
  std::vector<int> proj(n, -1);
  for (int x : perp.elements) proj[x] = coord.coords_of_elem[coset_of[x]];
  return CondensedTheory{std::move(theory), std::move(out_reps), std::move(proj),
                         std::move(perp)};
}

// The ring operator of a on the algebra: the character x |-> b(a,x) of B,
// listed over B's elements in ascending order.
inline std::vector<QZ> ring_operator(const MetricGroup& M, int a, const EtaleAlgebra& A) {
  std::vector<QZ> chi;
  chi.reserve(A.B.elements.size());
  for (int x : A.B.elements) chi.push_back(M.bform(a, x));
  return chi;
}

// Aut(A) identified with the character group of B.  chars is the abstract
// group; a chars element with coordinates c stands for the character sending
// basis[i] to c_i / d_i.  char_of_element is the realization a |-> [b(a,-)|_B]
// on ambient labels; it is checked to be an additive surjection with kernel
// exactly B-perp, so chars ~ Inv(C)/B-perp.
struct EtaleAut {
  FiniteAbelianGroup chars;
  std::vector<int> basis;                       // ambient indices inside B
  std::vector<std::vector<int>> member_coords;  // per B element, coords over basis
  std::vector<int> char_of_element;             // ambient index -> chars index
};

inline EtaleAut etale_aut_group(const EtaleAlgebra& A) {
  const MetricGroup& M = A.ambient;
  const auto& el = A.B.elements;
  const int k = static_cast<int>(el.size());
  std::vector<int> pos(M.order(), -1);
  for (int j = 0; j < k; ++j) pos[el[j]] = j;
  const auto coord = coordinatize_abelian(
      k, [&](int i, int j) { return pos[M.A.add_index(el[i], el[j])]; }, 0);
  const auto& factors = coord.group.invariant_factors();
  const int r = coord.group.rank();
  std::vector<int> basis(r);
  for (int i = 0; i < r; ++i) basis[i] = el[coord.basis[i]];
  std::vector<std::vector<int>> member_coords(k);
  for (int j = 0; j < k; ++j) member_coords[j] = coord.group.coords_of(coord.coords_of_elem[j]);
  std::vector<int> surj(M.order());
  for (int a = 0; a < M.order(); ++a) {
    Coords c(r, 0);
    for (int i = 0; i < r; ++i) {
      const QZ v = M.bform(a, basis[i]);
      if (factors[i] % v.den() != 0)
        throw std::logic_error("etale_aut_group: pairing denominator exceeds generator order");
      c[i] = static_cast<int>(v.num() * (factors[i] / v.den()) % factors[i]);
    }
    surj[a] = coord.group.index_of(c);
  }
  const auto perp = orthogonal_complement(M, el);
  std::vector<char> hit(coord.group.order(), 0);
  for (int a = 0; a < M.order(); ++a) {
    hit[surj[a]] = 1;
    const bool in_perp = std::binary_search(perp.elements.begin(), perp.elements.end(), a);
    if ((surj[a] == 0) != in_perp) throw std::logic_error("etale_aut_group: kernel is not B-perp");
  }
  for (char h : hit)
    if (!h) throw std::logic_error("etale_aut_group: ring operators miss a character");
  for (int a = 0; a < M.order(); ++a)
    for (int b = 0; b < M.order(); ++b)
      if (surj[M.A.add_index(a, b)] != coord.group.add_index(surj[a], surj[b]))
        throw std::logic_error("etale_aut_group: realization is not additive");
  return EtaleAut{coord.group, std::move(basis), std::move(member_coords), std::move(surj)};
}

// Values of an abstract character on B's elements (ascending order).
inline std::vector<QZ> character_values(const EtaleAlgebra& A, const EtaleAut& aut, int chi) {
  const Coords c = aut.chars.coords_of(chi);
  const auto& factors = aut.chars.invariant_factors();
  std::vector<QZ> vals(A.B.elements.size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    QZ v;
    for (std::size_t i = 0; i < c.size(); ++i)
      v += QZ(static_cast<long long>(c[i]) * aut.member_coords[j][i], factors[i]);
    vals[j] = v;
  }
  return vals;
}

}  // namespace condensa
