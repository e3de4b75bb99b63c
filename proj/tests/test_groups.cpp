#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "condensa/groups.hpp"

using namespace condensa;

namespace {

CayleyGroup s3() {
  // Z3 x| Z2 with the nontrivial element negating.
  const auto z3 = cyclic_cayley(3);
  const auto z2 = cyclic_cayley(2);
  return semidirect_product(z3, z2, {identity_perm(3), Perm{0, 2, 1}});
}

std::multiset<int> order_stats(const CayleyGroup& G) {
  const auto o = G.element_orders();
  return {o.begin(), o.end()};
}

}  // namespace

TEST_CASE("invariant factor chains are validated", "[groups]") {
  CHECK_NOTHROW(FiniteAbelianGroup({2, 4}));
  CHECK_NOTHROW(FiniteAbelianGroup({2, 2, 2}));
  CHECK(FiniteAbelianGroup::trivial().order() == 1);
  CHECK(FiniteAbelianGroup::cyclic(1).order() == 1);
  CHECK(FiniteAbelianGroup::cyclic(5).invariant_factors() == std::vector<int>{5});
  CHECK_THROWS_AS(FiniteAbelianGroup({4, 2}), validation_error);
  CHECK_THROWS_AS(FiniteAbelianGroup({3, 5}), validation_error);
  CHECK_THROWS_AS(FiniteAbelianGroup({1}), validation_error);
  CHECK(FiniteAbelianGroup({2, 6}).name() == "Z2 x Z6");
  CHECK(FiniteAbelianGroup::trivial().name() == "Z1");
}

TEST_CASE("abelian indexing is lexicographic with the first coordinate most significant", "[groups]") {
  FiniteAbelianGroup A({2, 4});
  CHECK(A.order() == 8);
  CHECK(A.index_of({0, 0}) == 0);
  CHECK(A.index_of({0, 3}) == 3);
  CHECK(A.index_of({1, 0}) == 4);
  CHECK(A.index_of({1, 2}) == 6);
  CHECK(A.coords_of(6) == Coords{1, 2});
  for (int i = 0; i < A.order(); ++i) CHECK(A.index_of(A.coords_of(i)) == i);
  CHECK(A.add({1, 3}, {1, 2}) == Coords{0, 1});
  CHECK(A.neg({1, 1}) == Coords{1, 3});
  CHECK(A.neg({0, 0}) == Coords{0, 0});
  CHECK(A.scale(3, {1, 2}) == Coords{1, 2});
  CHECK(A.scale(-1, {0, 1}) == Coords{0, 3});
  CHECK(A.element_order({0, 1}) == 4);
  CHECK(A.element_order({1, 2}) == 2);
  CHECK(A.element_order({0, 0}) == 1);
}

TEST_CASE("cayley table validation rejects malformed tables", "[groups]") {
  CHECK_THROWS_AS(CayleyGroup({}), validation_error);
  CHECK_THROWS_AS(CayleyGroup({{0, 1}, {0}}), validation_error);
  CHECK_THROWS_AS(CayleyGroup({{0, 2}, {1, 0}}), validation_error);
  CHECK_THROWS_AS(CayleyGroup({{0, 0}, {1, 1}}), validation_error);  // rows not permutations
  // Latin square with identity but an element lacking a two-sided inverse.
  CHECK_THROWS_AS(CayleyGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 3, 4, 0, 1},
                               {3, 4, 1, 2, 0},
                               {4, 2, 0, 1, 3}}),
                  validation_error);
  // Latin square with identity and two-sided inverses that is not associative.
  CHECK_THROWS_AS(CayleyGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}}),
                  validation_error);
  CHECK_NOTHROW(CayleyGroup({{0, 1}, {1, 0}}));
}

TEST_CASE("cayley order cap", "[groups]") {
  const int n = 201;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  CHECK_THROWS_AS(CayleyGroup(t), cap_error);
  CHECK_NOTHROW(CayleyGroup(t, {}, 250));
  CHECK_THROWS_AS(to_cayley(FiniteAbelianGroup({201})), cap_error);
}

TEST_CASE("basic cayley accessors", "[groups]") {
  const auto G = s3();
  CHECK(G.order() == 6);
  CHECK_FALSE(G.is_abelian());
  CHECK(order_stats(G) == std::multiset<int>{1, 2, 2, 2, 3, 3});
  for (int a = 0; a < G.order(); ++a) {
    CHECK(G.mul(a, G.inv(a)) == G.identity());
    CHECK(G.power(a, G.element_order(a)) == G.identity());
    CHECK(G.power(a, -1) == G.inv(a));
  }
  const auto Z6 = cyclic_cayley(6);
  CHECK(Z6.is_abelian());
  CHECK(Z6.label(2) == "(2)");
  CHECK(Z6.element_order(2) == 3);
}

TEST_CASE("semidirect product validates the action", "[groups]") {
  const auto z3 = cyclic_cayley(3);
  const auto z2 = cyclic_cayley(2);
  const auto z4 = cyclic_cayley(4);
  // Not an automorphism of Z3.
  CHECK_THROWS_AS(semidirect_product(z3, z2, {identity_perm(3), Perm{1, 0, 2}}), validation_error);
  // Identity of H must act trivially.
  CHECK_THROWS_AS(semidirect_product(z3, z2, {Perm{0, 2, 1}, Perm{0, 2, 1}}), validation_error);
  // h -> act[h] must be a homomorphism.
  const Perm neg{0, 2, 1};
  CHECK_THROWS_AS(semidirect_product(z3, z4, {identity_perm(3), neg, neg, neg}), validation_error);
  CHECK_NOTHROW(semidirect_product(z3, z4, {identity_perm(3), neg, identity_perm(3), neg}));
  // Trivial action recovers the direct product.
  const auto d = semidirect_product(z3, z2, {identity_perm(3), identity_perm(3)});
  CHECK(d.same_table(direct_product(z3, z2)));
}

TEST_CASE("generating sequences are greedy over (order, index)", "[groups]") {
  CHECK(generating_sequence(cyclic_cayley(1)).empty());
  CHECK(generating_sequence(cyclic_cayley(6)) == std::vector<int>{3, 2});
  CHECK(generating_sequence(cyclic_cayley(5)) == std::vector<int>{1});
  // Greedy on S3 picks the two least reflections; they already generate.
  const auto G = s3();
  const auto gens = generating_sequence(G);
  REQUIRE(gens.size() == 2);
  CHECK(G.element_order(gens[0]) == 2);
  CHECK(G.element_order(gens[1]) == 2);
  CHECK(closure(G, gens).size() == 6);
}

TEST_CASE("isomorphism testing", "[groups]") {
  CHECK_FALSE(is_isomorphic(FiniteAbelianGroup({4}), FiniteAbelianGroup({2, 2})).has_value());
  const auto w = is_isomorphic(to_cayley(FiniteAbelianGroup({6})),
                               direct_product(cyclic_cayley(2), cyclic_cayley(3)));
  REQUIRE(w.has_value());
  CHECK(is_injective(*w));
  CHECK(is_surjective(*w));
  CHECK(is_isomorphic(s3(), s3()).has_value());
  CHECK_FALSE(is_isomorphic(s3(), cyclic_cayley(6)).has_value());
  CHECK_FALSE(is_isomorphic(s3(), cyclic_cayley(5)).has_value());
}

TEST_CASE("hom validation", "[groups]") {
  const auto Z4 = cyclic_cayley(4);
  CHECK_THROWS_AS(make_hom(Z4, Z4, {1, 2, 3, 0}), validation_error);
  const auto dbl = make_hom(Z4, Z4, {0, 2, 0, 2});
  CHECK_FALSE(is_injective(dbl));
  CHECK_FALSE(is_surjective(dbl));
  CHECK(dbl(3) == 2);
}

TEST_CASE("automorphism groups match the Euler phi oracle on cyclic groups", "[groups]") {
  auto phi = [](int n) {
    int r = 0;
    for (int k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) ++r;
    return r;
  };
  for (int n = 1; n <= 12; ++n) {
    const auto aut = automorphism_group(cyclic_cayley(n));
    CHECK(aut.group.order() == phi(n));
  }
}

TEST_CASE("automorphism groups of small noncyclic groups", "[groups]") {
  const auto klein = automorphism_group(FiniteAbelianGroup({2, 2}));
  CHECK(klein.group.order() == 6);
  CHECK_FALSE(klein.group.is_abelian());
  CHECK(order_stats(klein.group) == std::multiset<int>{1, 2, 2, 2, 3, 3});

  const auto a8 = automorphism_group(FiniteAbelianGroup({8}));
  CHECK(a8.group.order() == 4);
  CHECK(order_stats(a8.group) == std::multiset<int>{1, 2, 2, 2});

  CHECK(automorphism_group(FiniteAbelianGroup({2, 4})).group.order() == 8);
  CHECK(automorphism_group(FiniteAbelianGroup({3, 3})).group.order() == 48);  // |GL(2,3)|
  CHECK(automorphism_group(s3()).group.order() == 6);
}

TEST_CASE("automorphism group structure invariants", "[groups]") {
  const auto G = to_cayley(FiniteAbelianGroup({2, 4}));
  const auto aut = automorphism_group(G);
  REQUIRE(aut.maps.size() == 8);
  CHECK(aut.maps[aut.group.identity()] == identity_perm(G.order()));
  for (int i = 0; i < aut.group.order(); ++i) {
    CHECK(detail::full_hom_check(G, G, aut.maps[i]));
    for (int j = 0; j < aut.group.order(); ++j)
      CHECK(aut.maps[aut.group.mul(i, j)] == compose_perms(aut.maps[i], aut.maps[j]));
  }
  CHECK(std::is_sorted(aut.maps.begin(), aut.maps.end()));
}

TEST_CASE("automorphism result cap", "[groups]") {
  // |Aut(Z2^4)| = 20160 exceeds the default result cap.
  CHECK_THROWS_AS(automorphism_group(FiniteAbelianGroup({2, 2, 2, 2})), cap_error);
}

TEST_CASE("subgroup enumeration counts", "[groups]") {
  CHECK(enumerate_subgroups(FiniteAbelianGroup({2})).size() == 2);
  CHECK(enumerate_subgroups(FiniteAbelianGroup({2, 2})).size() == 5);
  CHECK(enumerate_subgroups(FiniteAbelianGroup({6})).size() == 4);
  CHECK(enumerate_subgroups(FiniteAbelianGroup({4, 4})).size() == 15);
  CHECK(enumerate_subgroups(s3()).size() == 6);
  CHECK_THROWS_AS(enumerate_subgroups(FiniteAbelianGroup({201})), cap_error);
}

TEST_CASE("subgroup lists are sorted and the two enumerators agree", "[groups]") {
  const FiniteAbelianGroup A({2, 4});
  const auto fast = enumerate_subgroups(A);
  const auto generic = enumerate_subgroups(to_cayley(A));
  REQUIRE(fast.size() == generic.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i].elements == generic[i].elements);
    CHECK(fast[i].generators == generic[i].generators);
  }
  for (std::size_t i = 0; i + 1 < fast.size(); ++i)
    CHECK(fast[i].elements.size() <= fast[i + 1].elements.size());
  CHECK(fast.front().elements == std::vector<int>{A.index_of(A.zero())});
  CHECK(static_cast<int>(fast.back().elements.size()) == A.order());
  for (const auto& S : fast) {
    CHECK(closure(to_cayley(A), S.generators) == S.elements);
    CHECK(std::is_sorted(S.elements.begin(), S.elements.end()));
  }
}

TEST_CASE("subgroup views", "[groups]") {
  const auto G = s3();
  // Rotation subgroup: elements with order dividing 3.
  std::vector<int> rot;
  for (int a = 0; a < G.order(); ++a)
    if (G.element_order(a) == 1 || G.element_order(a) == 3) rot.push_back(a);
  REQUIRE(rot.size() == 3);
  const auto V = subgroup_view(G, rot);
  CHECK(V.group.order() == 3);
  CHECK(is_isomorphic(V.group, cyclic_cayley(3)).has_value());
  for (int i = 0; i < 3; ++i) CHECK(V.from_parent[V.to_parent[i]] == i);
  CHECK_THROWS_AS(subgroup_view(G, {0, 2}), validation_error);  // {e, rotation} is not closed
}

TEST_CASE("quotients", "[groups]") {
  const auto Z8 = cyclic_cayley(8);
  const auto Q = quotient_group(Z8, {0, 4});
  CHECK(Q.group.order() == 4);
  CHECK(Q.reps == std::vector<int>{0, 1, 2, 3});
  CHECK(Q.projection[5] == Q.projection[1]);
  CHECK(is_isomorphic(Q.group, cyclic_cayley(4)).has_value());
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) CHECK(Q.projection[Z8.mul(a, b)] == Q.group.mul(Q.projection[a], Q.projection[b]));

  const auto G = s3();
  int refl = -1;
  for (int a = 0; a < G.order(); ++a)
    if (G.element_order(a) == 2) {
      refl = a;
      break;
    }
  CHECK_THROWS_AS(quotient_group(G, closure(G, {refl})), validation_error);  // not normal
  CHECK_THROWS_AS(quotient_group(cyclic_cayley(4), {0, 1}), validation_error);  // not closed
  std::vector<int> rot;
  for (int a = 0; a < G.order(); ++a)
    if (G.element_order(a) != 2) rot.push_back(a);
  CHECK(quotient_group(G, rot).group.order() == 2);
}

TEST_CASE("abelian invariants from order statistics", "[groups]") {
  CHECK(abelian_invariant_factors(cyclic_cayley(6)) == std::vector<int>{6});
  CHECK(abelian_invariant_factors(to_cayley(FiniteAbelianGroup({2, 2}))) == std::vector<int>{2, 2});
  CHECK(abelian_invariant_factors(direct_product(cyclic_cayley(6), cyclic_cayley(4))) ==
        std::vector<int>{2, 12});
  CHECK(abelian_invariant_factors(to_cayley(FiniteAbelianGroup({2, 4, 8}))) == std::vector<int>{2, 4, 8});
  CHECK(abelian_invariant_factors(cyclic_cayley(1)).empty());
  CHECK_THROWS_AS(abelian_invariant_factors(s3()), validation_error);
}

TEST_CASE("coordinatization recovers an abelian basis", "[groups]") {
  const auto G = direct_product(cyclic_cayley(2), cyclic_cayley(3));
  const auto C = coordinatize_abelian(G);
  CHECK(C.group.invariant_factors() == std::vector<int>{6});
  for (int i = 0; i < 6; ++i) {
    CHECK(C.coords_of_elem[C.elem_of_coords[i]] == i);
    CHECK(C.elem_of_coords[C.coords_of_elem[i]] == i);
  }
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(C.coords_of_elem[G.mul(a, b)] == C.group.add_index(C.coords_of_elem[a], C.coords_of_elem[b]));

  const auto C2 = coordinatize_abelian(to_cayley(FiniteAbelianGroup({2, 4})));
  CHECK(C2.group.invariant_factors() == std::vector<int>{2, 4});
  CHECK(C2.basis.size() == 2);
  CHECK_THROWS_AS(coordinatize_abelian(s3()), validation_error);
}

TEST_CASE("canonical products transport addition through CRT", "[groups]") {
  for (const auto& moduli : std::vector<std::vector<int>>{{2, 2, 3}, {4, 4}, {6, 4}, {3, 3, 2, 2}, {1}, {12, 2}}) {
    const auto L = canonical_abelian_product(moduli);
    const int n = L.original_order();
    REQUIRE(L.group.order() == n);
    for (int i = 0; i < n; ++i) {
      CHECK(L.from_canonical[L.to_canonical[i]] == i);
      CHECK(L.original_index(L.original_coords(i)) == i);
    }
    // Zero maps to zero and addition is preserved.
    CHECK(L.to_canonical[0] == 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto xa = L.original_coords(a);
        const auto xb = L.original_coords(b);
        Coords sum(moduli.size());
        for (std::size_t k = 0; k < moduli.size(); ++k) sum[k] = (xa[k] + xb[k]) % moduli[k];
        CHECK(L.to_canonical[L.original_index(sum)] == L.group.add_index(L.to_canonical[a], L.to_canonical[b]));
      }
  }
  CHECK(canonical_abelian_product({2, 2, 3}).group.invariant_factors() == std::vector<int>{2, 6});
  CHECK(canonical_abelian_product({6, 4}).group.invariant_factors() == std::vector<int>{2, 12});
  CHECK(canonical_abelian_product({3, 3, 2, 2}).group.invariant_factors() == std::vector<int>{6, 6});
  CHECK(canonical_abelian_product({1}).group.order() == 1);
}

TEST_CASE("cycle strings", "[groups]") {
  CHECK(cycle_string(identity_perm(4)) == "id");
  CHECK(cycle_string({1, 0, 2}) == "(0 1)");
  CHECK(cycle_string({1, 2, 0}) == "(0 1 2)");
  CHECK(cycle_string({1, 0, 3, 2}) == "(0 1)(2 3)");
  const std::vector<std::string> names{"a", "b", "c"};
  CHECK(cycle_string({0, 2, 1}, &names) == "(b c)");
}
