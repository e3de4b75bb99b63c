#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "condensa/action.hpp"
#include "condensa/catalog.hpp"

using namespace condensa;

namespace {

int prod_index(const DeligneProduct& P, const Coords& orig) {
  return P.layout.to_canonical[P.layout.original_index(orig)];
}

// Negation of the coordinate block [lo, hi) of a Deligne product.
Perm block_negation(const DeligneProduct& P, std::size_t lo, std::size_t hi) {
  const int n = P.theory.order();
  Perm p(n);
  for (int i = 0; i < n; ++i) {
    auto o = P.layout.original_coords(P.layout.from_canonical[i]);
    for (std::size_t k = lo; k < hi; ++k) o[k] = (P.layout.moduli[k] - o[k]) % P.layout.moduli[k];
    p[i] = P.layout.to_canonical[P.layout.original_index(o)];
  }
  return p;
}

// Z3 x Z3 with q(u, v) = (u^2 - v^2)/3, the two-block form of Z(Vec(Z3)).
MetricGroup difference_form_33() {
  FiniteAbelianGroup A({3, 3});
  std::vector<QZ> q(9);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) q[A.index_of({u, v})] = QZ(u * u - v * v, 3);
  return make_metric_group(A, q);
}

Perm em_swap() { return {0, 2, 1, 3}; }

Cochain2 zero2(int n) { return Cochain2(n, std::vector<int>(n, 0)); }

// Toric code with trivial Z2 isometries and omega(g,g) = the given element.
CategoricalAction toric_frac(int w_gg) {
  Cochain2 omega = zero2(2);
  omega[1][1] = w_gg;
  return make_categorical_action(toric_code(), cyclic_cayley(2),
                                 {identity_perm(4), identity_perm(4)}, omega);
}

}  // namespace

TEST_CASE("action validation", "[action]") {
  const auto tc = toric_code();
  // e <-> m swap is a valid involutive isometry
  CHECK_NOTHROW(make_categorical_action(tc, cyclic_cayley(2), {identity_perm(4), em_swap()},
                                        zero2(2)));
  // swapping e and em moves q
  CHECK_THROWS_AS(make_categorical_action(tc, cyclic_cayley(2),
                                          {identity_perm(4), {0, 3, 2, 1}}, zero2(2)),
                  validation_error);
  // an involution cannot generate a faithful Z3 action
  CHECK_THROWS_AS(make_categorical_action(tc, cyclic_cayley(3),
                                          {identity_perm(4), em_swap(), em_swap()}, zero2(3)),
                  validation_error);
  // non-normalized omega
  Cochain2 bad = zero2(2);
  bad[0][1] = 2;
  CHECK_THROWS_AS(make_categorical_action(tc, cyclic_cayley(2),
                                          {identity_perm(4), identity_perm(4)}, bad),
                  validation_error);
}

TEST_CASE("first obstruction", "[action]") {
  const auto tc = toric_code();
  const auto swap_action =
      make_categorical_action(tc, cyclic_cayley(2), {identity_perm(4), em_swap()}, zero2(2));
  const auto Ae = make_etale_algebra(tc, {0, 1});
  CHECK_FALSE(first_obstruction(swap_action, Ae));
  const auto w = first_obstruction_witness(swap_action, Ae);
  REQUIRE(w.has_value());
  CHECK(w->g == 1);
  CHECK(w->b == 1);  // e is mapped to m
  CHECK(first_obstruction(trivial_action(tc, cyclic_cayley(2)), Ae));
  CHECK_THROWS_AS(restricted_cocycle(swap_action, Ae), validation_error);
}

TEST_CASE("particle-hole symmetry moves the diagonal algebra", "[action]") {
  const auto M = difference_form_33();
  Perm neg_u(9);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) neg_u[M.A.index_of({u, v})] = M.A.index_of({(3 - u) % 3, v});
  const auto act = make_categorical_action(M, cyclic_cayley(2), {identity_perm(9), neg_u}, zero2(2));
  const auto diag = make_etale_algebra(M, {0, 4, 8});
  CHECK(is_lagrangian(diag));
  CHECK_FALSE(first_obstruction(act, diag));
}

TEST_CASE("restricted cocycle pushes omega through ring operators", "[action]") {
  const auto Ae = make_etale_algebra(toric_code(), {0, 1});
  const auto rm = restricted_cocycle(toric_frac(2), Ae);  // omega(g,g) = m
  CHECK(rm.aut.chars.invariant_factors() == std::vector<int>{2});
  CHECK(rm.w[1][1] == 1);
  const auto re = restricted_cocycle(toric_frac(1), Ae);  // omega(g,g) = e
  CHECK(re.w[1][1] == 0);
  CHECK(re.w == zero2(2));
}

TEST_CASE("obstruction extensions for the toric code", "[action]") {
  const auto Ae = make_etale_algebra(toric_code(), {0, 1});
  const auto broken = obstruction_extension(toric_frac(2), Ae);
  CHECK(identify_group(broken.extension.E) == "Z4");
  CHECK(broken.extension.kernel.size() == 2);
  CHECK(enumerate_splittings(broken.extension).empty());

  const auto split = obstruction_extension(toric_frac(1), Ae);
  CHECK(identify_group(split.extension.E) == "Z2 x Z2");
  CHECK(enumerate_splittings(split.extension).size() == 2);
  // the embedded copy of B-hat is exactly the kernel
  std::vector<int> embedded = split.product.embed_coeff;
  std::sort(embedded.begin(), embedded.end());
  CHECK(embedded == split.extension.kernel);
}

TEST_CASE("equivariant structures match splittings on the toric code", "[action]") {
  const auto Ae = make_etale_algebra(toric_code(), {0, 1});
  const auto broken = enumerate_equivariant_structures(toric_frac(2), Ae);
  CHECK(broken.structures.empty());
  CHECK(broken.classes.empty());

  const auto ok = enumerate_equivariant_structures(toric_frac(1), Ae);
  REQUIRE(ok.structures.size() == 2);
  CHECK(ok.structures[0].chi == std::vector<int>{0, 0});
  CHECK(ok.structures[1].chi == std::vector<int>{0, 1});
  CHECK(ok.classes.size() == 2);  // trivial dual action: no identifications

  const auto oe = obstruction_extension(toric_frac(1), Ae);
  auto splittings = enumerate_splittings(oe.extension);
  std::vector<std::vector<int>> mapped;
  for (const auto& s : ok.structures) mapped.push_back(section_of_structure(oe, s));
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == splittings);
  for (const auto& sigma : splittings) {
    const auto s = structure_of_section(oe, sigma);
    CHECK(is_equivariant_structure(oe.restricted, s.chi));
  }
  CHECK(splitting_classes(oe.extension, splittings).size() == ok.classes.size());
}

TEST_CASE("nontrivial dual action twists the extension to S3", "[action]") {
  const auto M = zvec_double(3).theory;
  Perm dbl(9);
  for (int c = 0; c < 3; ++c)
    for (int f = 0; f < 3; ++f) dbl[M.A.index_of({c, f})] = M.A.index_of({(2 * c) % 3, (2 * f) % 3});
  const auto act = make_categorical_action(M, cyclic_cayley(2), {identity_perm(9), dbl}, zero2(2));
  const auto A = make_etale_algebra(M, {0, 3, 6});  // charge Lagrangian
  const auto oe = obstruction_extension(act, A);
  CHECK(oe.restricted.aut.chars.invariant_factors() == std::vector<int>{3});
  CHECK(identify_group(oe.extension.E) == "S3");
  const auto en = enumerate_equivariant_structures(act, A);
  CHECK(en.structures.size() == 3);
  CHECK(en.classes.size() == 1);  // all three complements are conjugate
  const auto splittings = enumerate_splittings(oe.extension);
  CHECK(splittings.size() == 3);
  CHECK(splitting_classes(oe.extension, splittings).size() == 1);
  // the dual module is Z2 acting on Z3 by negation: H^1 counts the classes
  const auto h1 = h1_counts(oe.restricted.module);
  CHECK(h1.z1_count == 3);
  CHECK(h1.h1_count == 1);
}

TEST_CASE("trivial dual action: classes count homomorphisms", "[action]") {
  const auto M = zvec_double(3).theory;
  const auto act = trivial_action(M, cyclic_cayley(3));
  const auto A = make_etale_algebra(M, {0, 3, 6});
  const auto en = enumerate_equivariant_structures(act, A);
  CHECK(en.structures.size() == 3);  // Hom(Z3, Z3)
  CHECK(en.classes.size() == 3);     // coboundaries vanish
  const auto r = restricted_cocycle(act, A);
  const auto h1 = h1_counts(r.module);
  CHECK(h1.h1_count == 3);
  CHECK(static_cast<std::size_t>(h1.z1_count) == en.structures.size());
}

TEST_CASE("second-level obstruction lands in Dic12", "[action]") {
  const auto P = deligne_product(zvec_double(3).theory, toric_code());
  const auto& M = P.theory;
  const auto G = cyclic_cayley(2);
  const Perm conj3 = block_negation(P, 0, 2);  // charge conjugation on the Z3 double
  Cochain2 omega = zero2(2);
  omega[1][1] = prod_index(P, {0, 0, 1, 0});  // toric m
  const auto act = make_categorical_action(M, G, {identity_perm(36), conj3}, omega);

  // B = <a (x) e>, a diagonal Z6 of bosons
  std::vector<int> els{0};
  const int gen = prod_index(P, {1, 0, 0, 1});
  for (int x = gen; x != 0; x = M.A.add_index(x, gen)) els.push_back(x);
  REQUIRE(els.size() == 6);
  const auto B = make_etale_algebra(M, els);
  CHECK(first_obstruction(act, B));

  const auto oe = obstruction_extension(act, B);
  CHECK(oe.restricted.aut.chars.invariant_factors() == std::vector<int>{6});
  CHECK(oe.restricted.module.M.element_order(oe.restricted.w[1][1]) == 2);
  CHECK(identify_group(oe.extension.E) == "Dic12");
  CHECK(enumerate_splittings(oe.extension).empty());
  CHECK(enumerate_equivariant_structures(act, B).structures.empty());
}

TEST_CASE("cohomologous cocycles give isomorphic extensions", "[action]") {
  const auto M = zvec_double(3).theory;
  const auto act = trivial_action(M, cyclic_cayley(3));
  const auto A = make_etale_algebra(M, {0, 3, 6});
  const auto r = restricted_cocycle(act, A);
  Cochain2 carry = zero2(3);  // the Z9 extension cocycle
  for (int i = 1; i < 3; ++i)
    for (int j = 1; j < 3; ++j) carry[i][j] = (i + j >= 3) ? 1 : 0;
  const Cochain1 gamma{0, 2, 1};
  const auto shifted = add_cochains(r.module, carry, coboundary_of(r.module, gamma));

  const auto oe1 = obstruction_extension_direct(act, A, carry);
  const auto oe2 = obstruction_extension_direct(act, A, shifted);
  CHECK(identify_group(oe1.extension.E) == "Z9");
  CHECK(is_isomorphic(oe1.extension.E, oe2.extension.E).has_value());
  CHECK(enumerate_splittings(oe1.extension).size() == enumerate_splittings(oe2.extension).size());

  // a pure coboundary splits, and the count matches the direct enumeration
  const auto oe3 = obstruction_extension_direct(act, A, coboundary_of(r.module, gamma));
  CHECK(identify_group(oe3.extension.E) == "Z3 x Z3");
  CHECK(enumerate_splittings(oe3.extension).size() == 3);
}

TEST_CASE("induced action on the condensate", "[action]") {
  // Ex: frac-e scenario condenses to the trivial theory with the trivial action
  const auto Ae = make_etale_algebra(toric_code(), {0, 1});
  const auto en = enumerate_equivariant_structures(toric_frac(1), Ae);
  for (const auto& s : en.structures) {
    const auto induced = induce_condensed_action(toric_frac(1), Ae, s);
    CHECK(induced.M.order() == 1);
    CHECK(induced.alpha == std::vector<Perm>{{0}, {0}});
    CHECK(induced.omega == zero2(2));
  }

  // identity action descends to the identity action
  const auto ds = double_semion();
  const auto act0 = trivial_action(ds, cyclic_cayley(2));
  const auto A0 = make_etale_algebra(ds, {0});
  const auto ind0 = induce_condensed_action(act0, A0, EquivariantStructure{{0, 0}});
  CHECK(ind0.M.q == ds.q);
  CHECK(ind0.alpha == std::vector<Perm>{identity_perm(4), identity_perm(4)});

  // negation on the double of Z4 acts as the identity on the condensed toric
  // code: every condensed element is 2-torsion
  const auto M4 = zvec_double(4).theory;
  Perm neg(16);
  for (int i = 0; i < 16; ++i) neg[i] = M4.A.neg_index(i);
  const auto actn = make_categorical_action(M4, cyclic_cayley(2), {identity_perm(16), neg}, zero2(2));
  const auto A4 = make_etale_algebra(M4, {0, 8});  // <a^2>
  const auto indn = induce_condensed_action(actn, A4, EquivariantStructure{{0, 0}});
  CHECK(identify_metric_group(indn.M) == "toric code");
  CHECK(indn.alpha[1] == identity_perm(4));
}

TEST_CASE("fractionalization that does not descend is refused", "[action]") {
  const auto tc = toric_code();
  const auto G3 = cyclic_cayley(3);
  Cochain2 omega = zero2(3);  // the coboundary of gamma(g) = m in ambient terms
  omega[1][2] = 2;
  omega[2][1] = 2;
  omega[2][2] = 2;
  const auto act = make_categorical_action(
      tc, G3, {identity_perm(4), identity_perm(4), identity_perm(4)}, omega);
  const auto Ae = make_etale_algebra(tc, {0, 1});
  const auto en = enumerate_equivariant_structures(act, Ae);
  REQUIRE(en.structures.size() == 1);
  CHECK(en.structures[0].chi == std::vector<int>{0, 1, 0});
  CHECK_THROWS_WITH(induce_condensed_action(act, Ae, en.structures[0]),
                    Catch::Matchers::ContainsSubstring("does not descend"));
}

TEST_CASE("restricting an action to a subgroup", "[action]") {
  const auto act = trivial_action(toric_code(), symmetric3());
  const auto rots = restrict_action(act, {0, 2, 4});
  CHECK(rots.G.order() == 3);
  CHECK(rots.G.element_order(1) == 3);
  const auto Ae = make_etale_algebra(toric_code(), {0, 1});
  CHECK(enumerate_equivariant_structures(rots, Ae).structures.size() == 1);
  CHECK_THROWS_AS(restrict_action(act, {0, 2}), validation_error);  // not closed
}

TEST_CASE("landau pattern: trivial theory always has one structure", "[action]") {
  const auto act = trivial_action(trivial_theory(), symmetric3());
  const auto A = make_etale_algebra(trivial_theory(), {0});
  for (const auto& H : enumerate_subgroups(act.G)) {
    const auto sub = restrict_action(act, H.elements);
    const auto en = enumerate_equivariant_structures(sub, A);
    CHECK(en.structures.size() == 1);
    CHECK(en.classes.size() == 1);
  }
}
