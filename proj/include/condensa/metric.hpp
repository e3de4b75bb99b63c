#pragma once

// Metric groups: finite abelian groups with a nondegenerate quadratic form
// q: A -> Q/Z.  These are exactly the fusion-and-twist data of pointed modular
// theories; theta(x) = e(q(x)) and the S-matrix entries are
// e(b(x,y)) / sqrt(|A|) with b(x,y) = q(x+y) - q(x) - q(y).

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condensa/groups.hpp"
#include "condensa/qz.hpp"

namespace condensa {

struct MetricGroup {
  FiniteAbelianGroup A;
  std::vector<QZ> q;                // indexed by element index of A
  std::vector<std::string> labels;  // display names, indexed the same way

  int order() const { return A.order(); }
  const QZ& theta(int i) const { return q[i]; }
  QZ bform(int i, int j) const { return q[A.add_index(i, j)] - q[i] - q[j]; }
  const std::string& label(int i) const { return labels[i]; }
};

inline MetricGroup make_metric_group(FiniteAbelianGroup A, std::vector<QZ> q,
                                     std::vector<std::string> labels = {}) {
  const int n = A.order();
  if (static_cast<int>(q.size()) != n) fail_validation("make_metric_group: q size mismatch");
  const int zero = A.index_of(A.zero());
  if (!q[zero].is_zero()) fail_validation("make_metric_group: q(0) != 0");
  std::vector<int> add(static_cast<std::size_t>(n) * n);
  std::vector<int> neg(n);
  for (int a = 0; a < n; ++a) {
    neg[a] = A.neg_index(a);
    for (int b = 0; b < n; ++b) add[static_cast<std::size_t>(a) * n + b] = A.add_index(a, b);
  }
  for (int a = 0; a < n; ++a)
    if (q[neg[a]] != q[a])
      fail_validation("make_metric_group: not quadratic: q(-x) != q(x) at x=" + tuple_label(A.coords_of(a)));
  auto bf = [&](int x, int y) { return q[add[static_cast<std::size_t>(x) * n + y]] - q[x] - q[y]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (bf(add[static_cast<std::size_t>(x) * n + y], z) != bf(x, z) + bf(y, z))
          fail_validation("make_metric_group: not quadratic: b(x+y,z) != b(x,z)+b(y,z) at x=" +
                          tuple_label(A.coords_of(x)) + ", y=" + tuple_label(A.coords_of(y)) + ", z=" +
                          tuple_label(A.coords_of(z)));
  for (int x = 0; x < n; ++x) {
    if (x == zero) continue;
    bool trivial = true;
    for (int y = 0; y < n && trivial; ++y) trivial = bf(x, y).is_zero();
    if (trivial)
      fail_validation("make_metric_group: degenerate: " + tuple_label(A.coords_of(x)) +
                      " pairs trivially with every element");
  }
  if (labels.empty()) {
    labels.resize(n);
    for (int a = 0; a < n; ++a) labels[a] = tuple_label(A.coords_of(a));
  } else if (static_cast<int>(labels.size()) != n) {
    fail_validation("make_metric_group: label count mismatch");
  }
  return MetricGroup{std::move(A), std::move(q), std::move(labels)};
}

inline MetricGroup conjugate_theory(const MetricGroup& M) {
  std::vector<QZ> q(M.q.size());
  for (std::size_t i = 0; i < M.q.size(); ++i) q[i] = -M.q[i];
  return MetricGroup{M.A, std::move(q), M.labels};
}

// ---------------------------------------------------------------------------
// Modular data
// ---------------------------------------------------------------------------

struct ModularData {
  std::vector<std::string> labels;
  std::vector<QZ> theta;                     // T-matrix diagonal, as exponents of e()
  std::vector<std::vector<QZ>> s_exponents;  // S[i][j] = e(exponent) / sqrt(|A|)
};

inline ModularData modular_data(const MetricGroup& M) {
  const int n = M.order();
  ModularData d;
  d.labels = M.labels;
  d.theta = M.q;
  d.s_exponents.assign(n, std::vector<QZ>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.s_exponents[i][j] = M.bform(i, j);
  return d;
}

// ---------------------------------------------------------------------------
// Isometries
// ---------------------------------------------------------------------------

inline AutomorphismGroup isometry_group(const MetricGroup& M, std::size_t cap = kDefaultCap) {
  const auto G = to_cayley(M.A, cap);
  auto maps = enumerate_isomorphisms(
      G, G, [&](int g, int h) { return M.q[g] == M.q[h]; },
      [&](const std::vector<int>& f) {
        for (int x = 0; x < G.order(); ++x)
          if (M.q[f[x]] != M.q[x]) return false;
        return true;
      },
      cap);
  if (maps.size() > cap) fail_cap("isometry_group result", maps.size(), cap);
  return detail::package_maps(std::move(maps), cap, &M.labels);
}

// First isometry M1 -> M2 in the documented search order, if any.
inline std::optional<std::vector<int>> find_isometry(const MetricGroup& M1, const MetricGroup& M2,
                                                     std::size_t cap = kDefaultCap) {
  if (M1.A.invariant_factors() != M2.A.invariant_factors()) return std::nullopt;
  {
    auto t1 = M1.q, t2 = M2.q;
    std::sort(t1.begin(), t1.end());
    std::sort(t2.begin(), t2.end());
    if (t1 != t2) return std::nullopt;
  }
  const auto G1 = to_cayley(M1.A, cap);
  const auto G2 = to_cayley(M2.A, cap);
  auto maps = enumerate_isomorphisms(
      G1, G2, [&](int g, int h) { return M1.q[g] == M2.q[h]; },
      [&](const std::vector<int>& f) {
        for (int x = 0; x < G1.order(); ++x)
          if (M2.q[f[x]] != M1.q[x]) return false;
        return true;
      },
      0);
  if (maps.empty()) return std::nullopt;
  return maps.front();
}

// ---------------------------------------------------------------------------
// Drinfeld double of a finite abelian group
// ---------------------------------------------------------------------------

// Elements are pairs (flux a in A, charge chi in A^) with q((a, chi)) =
// chi(a) = sum_i a_i chi_i / d_i.  Labels follow the usual anyon names for
// cyclic A: 1/e/m/em when |A| = 2, otherwise a^i m^j with a the charge
// generator and m the flux generator.
struct DrinfeldDouble {
  MetricGroup theory;
  FiniteAbelianGroup base;
  ProductLayout layout;  // moduli: base factors (flux), then base factors (charge)

  int index_of(const Coords& flux, const Coords& charge) const {
    Coords x = flux;
    x.insert(x.end(), charge.begin(), charge.end());
    return layout.to_canonical[layout.original_index(x)];
  }
  std::pair<Coords, Coords> split(int idx) const {
    const Coords x = layout.original_coords(layout.from_canonical[idx]);
    const int r = base.rank();
    return {Coords(x.begin(), x.begin() + r), Coords(x.begin() + r, x.end())};
  }
};

namespace detail {

inline std::string double_label(const FiniteAbelianGroup& base, const Coords& flux, const Coords& charge) {
  if (base.rank() == 1 && base.order() == 2) {
    const bool e = charge[0] != 0, m = flux[0] != 0;
    if (e && m) return "em";
    if (e) return "e";
    if (m) return "m";
    return "1";
  }
  if (base.rank() == 1) {
    std::string s;
    auto pw = [](const std::string& g, int k) {
      return k == 1 ? g : g + "^" + std::to_string(k);
    };
    if (charge[0] != 0) s = pw("a", charge[0]);
    if (flux[0] != 0) s += (s.empty() ? "" : " ") + pw("m", flux[0]);
    return s.empty() ? "1" : s;
  }
  return "(" + tuple_label(flux) + "," + tuple_label(charge) + ")";
}

}  // namespace detail

inline DrinfeldDouble drinfeld_double_abelian(const FiniteAbelianGroup& A, std::size_t cap = kDefaultCap) {
  const long long n2 = static_cast<long long>(A.order()) * A.order();
  if (n2 > static_cast<long long>(cap)) fail_cap("drinfeld_double_abelian", static_cast<std::size_t>(n2), cap);
  std::vector<int> moduli = A.invariant_factors();
  const auto base_factors = A.invariant_factors();
  moduli.insert(moduli.end(), base_factors.begin(), base_factors.end());
  ProductLayout layout = canonical_abelian_product(moduli);
  const int r = A.rank();
  const int n = layout.group.order();
  std::vector<QZ> q(n);
  std::vector<std::string> labels(n);
  for (int idx = 0; idx < n; ++idx) {
    const Coords x = layout.original_coords(layout.from_canonical[idx]);
    const Coords flux(x.begin(), x.begin() + r);
    const Coords charge(x.begin() + r, x.end());
    QZ v;
    for (int i = 0; i < r; ++i) v += QZ(static_cast<long long>(flux[i]) * charge[i], base_factors[i]);
    q[idx] = v;
    labels[idx] = detail::double_label(A, flux, charge);
  }
  MetricGroup theory = make_metric_group(layout.group, std::move(q), std::move(labels));
  return DrinfeldDouble{std::move(theory), A, std::move(layout)};
}

// ---------------------------------------------------------------------------
// Deligne product
// ---------------------------------------------------------------------------

struct DeligneProduct {
  MetricGroup theory;
  ProductLayout layout;  // moduli: factors of A1, then factors of A2
};

inline DeligneProduct deligne_product(const MetricGroup& M1, const MetricGroup& M2,
                                      std::size_t cap = kDefaultCap) {
  const long long n = static_cast<long long>(M1.order()) * M2.order();
  if (n > static_cast<long long>(cap)) fail_cap("deligne_product", static_cast<std::size_t>(n), cap);
  std::vector<int> moduli = M1.A.invariant_factors();
  const auto f2 = M2.A.invariant_factors();
  moduli.insert(moduli.end(), f2.begin(), f2.end());
  ProductLayout layout = canonical_abelian_product(moduli);
  const int r1 = M1.A.rank();
  std::vector<QZ> q(layout.group.order());
  std::vector<std::string> labels(layout.group.order());
  for (int idx = 0; idx < layout.group.order(); ++idx) {
    const Coords x = layout.original_coords(layout.from_canonical[idx]);
    const int i1 = M1.A.index_of(Coords(x.begin(), x.begin() + r1));
    const int i2 = M2.A.index_of(Coords(x.begin() + r1, x.end()));
    q[idx] = M1.q[i1] + M2.q[i2];
    labels[idx] = "(" + M1.labels[i1] + "," + M2.labels[i2] + ")";
  }
  MetricGroup theory = make_metric_group(layout.group, std::move(q), std::move(labels));
  return DeligneProduct{std::move(theory), std::move(layout)};
}

// ---------------------------------------------------------------------------
// Named theories and identification
// ---------------------------------------------------------------------------

inline MetricGroup trivial_theory() {
  return make_metric_group(FiniteAbelianGroup::trivial(), {QZ()}, {"1"});
}

inline MetricGroup semion() {
  return make_metric_group(FiniteAbelianGroup({2}), {QZ(), QZ(1, 4)}, {"1", "s"});
}

inline MetricGroup anti_semion() {
  auto M = conjugate_theory(semion());
  M.labels = {"1", "s'"};
  return M;
}

// Z2 x Z2 with bosonic e, m and a fermionic em: the double of Z2.
inline MetricGroup toric_code() {
  return make_metric_group(FiniteAbelianGroup({2, 2}), {QZ(), QZ(), QZ(), QZ(1, 2)}, {"1", "e", "m", "em"});
}

// Z2 x Z2 with semionic and anti-semionic generators.
inline MetricGroup double_semion() {
  return make_metric_group(FiniteAbelianGroup({2, 2}), {QZ(), QZ(3, 4), QZ(1, 4), QZ()},
                           {"1", "s'", "s", "ss'"});
}

inline DrinfeldDouble zvec_double(int n, std::size_t cap = kDefaultCap) {
  return drinfeld_double_abelian(FiniteAbelianGroup::cyclic(n), cap);
}

inline std::string identify_metric_group(const MetricGroup& M) {
  std::vector<std::pair<std::string, MetricGroup>> named;
  named.emplace_back("trivial", trivial_theory());
  named.emplace_back("semion", semion());
  named.emplace_back("anti-semion", anti_semion());
  named.emplace_back("toric code", toric_code());
  named.emplace_back("double semion", double_semion());
  for (int n = 3; n <= 6; ++n) {
    if (n * n > M.order()) continue;
    named.emplace_back("Z(Vec(Z" + std::to_string(n) + "))", zvec_double(n).theory);
  }
  for (const auto& [name, N] : named)
    if (N.order() == M.order() && find_isometry(M, N).has_value()) return name;
  return "pointed theory on " + M.A.name();
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of quadratic forms on a given group
// ---------------------------------------------------------------------------

// Every quadratic form is determined by q(e_i) (denominator dividing d_i,
// doubled when d_i is even) and the pairings b(e_i, e_j) (denominator
// dividing gcd(d_i, d_j)); every such choice is well defined.  Returns all
// forms, or only the nondegenerate ones.
inline std::vector<std::vector<QZ>> enumerate_quadratic_forms(const FiniteAbelianGroup& A,
                                                              bool nondegenerate_only = true,
                                                              std::size_t cap = kDefaultCochainCap) {
  const auto& f = A.invariant_factors();
  const int r = A.rank();
  std::vector<long long> dens;  // one slot per generator, then per pair i<j
  for (int i = 0; i < r; ++i) dens.push_back(static_cast<long long>(f[i]) * (f[i] % 2 == 0 ? 2 : 1));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) dens.push_back(std::gcd(f[i], f[j]));
  std::size_t space = 1;
  for (long long d : dens) {
    if (space > cap / static_cast<std::size_t>(d)) fail_cap("enumerate_quadratic_forms candidates", cap + 1, cap);
    space *= static_cast<std::size_t>(d);
  }
  const int n = A.order();
  std::vector<Coords> coords(n);
  for (int x = 0; x < n; ++x) coords[x] = A.coords_of(x);
  std::vector<std::vector<QZ>> out;
  std::vector<int> digits(dens.size(), 0);
  auto advance = [&]() {
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
      if (++digits[i] < dens[i]) return true;
      digits[i] = 0;
    }
    return false;
  };
  do {
    std::vector<QZ> diag(r);
    std::vector<std::vector<QZ>> off(r, std::vector<QZ>(r));
    std::size_t k = 0;
    for (int i = 0; i < r; ++i) diag[i] = QZ(digits[k], dens[k]), ++k;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        off[i][j] = QZ(digits[k], dens[k]);
        ++k;
      }
    std::vector<QZ> q(n);
    for (int x = 0; x < n; ++x) {
      QZ v;
      for (int i = 0; i < r; ++i) {
        v += diag[i].times(static_cast<long long>(coords[x][i]) * coords[x][i]);
        for (int j = i + 1; j < r; ++j) v += off[i][j].times(static_cast<long long>(coords[x][i]) * coords[x][j]);
      }
      q[x] = v;
    }
    if (nondegenerate_only) {
      bool nd = true;
      for (int x = 0; x < n && nd; ++x) {
        if (x == 0) continue;
        bool trivial = true;
        for (int y = 0; y < n && trivial; ++y)
          trivial = (q[A.add_index(x, y)] - q[x] - q[y]).is_zero();
        nd = !trivial;
      }
      if (!nd) continue;
    }
    out.push_back(std::move(q));
  } while (advance());
  return out;
}

}  // namespace condensa
