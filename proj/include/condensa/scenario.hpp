#pragma once

// Scenario files: one JSON document describes either a pointed theory with an
// optional condensation algebra and symmetry action (kind "metric") or a
// short exact sequence of finite groups (kind "universal"). Exact values
// only: Q/Z entries are "num/den" strings, never floats. parse_scenario
// accepts convenience spellings (named theories, doubles, generator-image
// actions, label-valued omega); serialize_scenario always emits the explicit
// canonical form, so serialized files round-trip byte for byte.

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "condensa/catalog.hpp"
#include "condensa/universal.hpp"

namespace condensa {

using Json = nlohmann::ordered_json;

struct Scenario {
  std::string kind;  // "metric" or "universal"
  std::string name;
  std::string comment;
  std::optional<MetricGroup> theory;
  std::optional<std::vector<int>> algebra;  // full sorted support
  std::optional<CategoricalAction> action;
  std::optional<UniversalScenario> universal;
};

namespace detail {

[[noreturn]] inline void fail_field(const std::string& field, const std::string& what) {
  fail_validation("scenario field '" + field + "': " + what);
}

inline const Json& require_field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) fail_field(ctx.empty() ? key : ctx + "." + key, "missing");
  return j.at(key);
}

inline int int_field(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) fail_field(field, "expected an integer");
  return v.get<int>();
}

inline std::vector<int> int_list(const Json& v, const std::string& field) {
  if (!v.is_array()) fail_field(field, "expected an array of integers");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(int_field(e, field));
  return out;
}

inline QZ parse_qz(const Json& v, const std::string& field) {
  if (!v.is_string()) fail_field(field, "expected a \"num/den\" string (floats are not accepted)");
  const std::string s = v.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return QZ(std::stol(s), 1);
    return QZ(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail_field(field, "cannot parse '" + s + "' as num/den");
  }
}

inline std::string qz_string(const QZ& v) {
  return std::to_string(v.num()) + "/" + std::to_string(v.den());
}

}  // namespace detail

inline CayleyGroup group_from_spec(const Json& j, const std::string& field,
                                   std::size_t cap = kDefaultCap) {
  if (!j.is_object()) detail::fail_field(field, "expected an object");
  if (j.contains("cyclic")) return cyclic_cayley(detail::int_field(j.at("cyclic"), field + ".cyclic"), cap);
  if (j.contains("factors"))
    return to_cayley(FiniteAbelianGroup(detail::int_list(j.at("factors"), field + ".factors")), cap);
  if (j.contains("named")) {
    const std::string name = j.at("named").get<std::string>();
    for (const auto& e : group_catalog())
      if (e.name == name) return e.group;
    detail::fail_field(field + ".named", "unknown group '" + name + "'");
  }
  if (j.contains("table")) {
    std::vector<std::vector<int>> t;
    for (const auto& row : j.at("table")) t.push_back(detail::int_list(row, field + ".table"));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    try {
      return CayleyGroup(std::move(t), std::move(labels), cap);
    } catch (const validation_error& e) {
      detail::fail_field(field + ".table", e.what());
    }
  }
  detail::fail_field(field, "expected one of 'cyclic', 'factors', 'named', 'table'");
}

inline MetricGroup theory_from_spec(const Json& j, const std::string& field,
                                    std::size_t cap = kDefaultCap) {
  if (!j.is_object()) detail::fail_field(field, "expected an object");
  if (j.contains("named")) {
    const std::string name = j.at("named").get<std::string>();
    if (name == "trivial") return trivial_theory();
    if (name == "semion") return semion();
    if (name == "anti-semion") return anti_semion();
    if (name == "toric code") return toric_code();
    if (name == "double semion") return double_semion();
    detail::fail_field(field + ".named", "unknown theory '" + name + "'");
  }
  if (j.contains("double")) {
    FiniteAbelianGroup base(detail::int_list(j.at("double"), field + ".double"));
    return drinfeld_double_abelian(base, cap).theory;
  }
  FiniteAbelianGroup A(detail::int_list(detail::require_field(j, "factors", field), field + ".factors"));
  const auto& qj = detail::require_field(j, "q", field);
  std::vector<QZ> q;
  for (std::size_t i = 0; i < qj.size(); ++i)
    q.push_back(detail::parse_qz(qj.at(i), field + ".q[" + std::to_string(i) + "]"));
  auto M = make_metric_group(std::move(A), std::move(q));
  if (j.contains("labels")) {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != static_cast<std::size_t>(M.order()))
      detail::fail_field(field + ".labels", "size mismatch");
    M.labels = labels;
  }
  return M;
}

namespace detail {

inline int element_from_spec(const Json& v, const MetricGroup& M, const std::string& field) {
  if (v.is_number_integer()) {
    const int x = v.get<int>();
    if (x < 0 || x >= M.order()) fail_field(field, "element index out of range");
    return x;
  }
  if (v.is_string()) {
    const std::string label = v.get<std::string>();
    for (int i = 0; i < M.order(); ++i)
      if (M.labels[i] == label) return i;
    fail_field(field, "no element labeled '" + label + "'");
  }
  fail_field(field, "expected an element index or label");
}

// Extends generator images to the whole group along a breadth-first spanning
// tree; make_categorical_action re-validates the homomorphism law afterward.
inline std::vector<Perm> alpha_from_generators(const CayleyGroup& G, int n,
                                               const std::vector<int>& gens,
                                               const std::vector<Perm>& images,
                                               const std::string& field) {
  if (gens.size() != images.size()) fail_field(field, "generators and images differ in length");
  std::vector<Perm> alpha(G.order());
  std::vector<bool> known(G.order(), false);
  alpha[G.identity()] = identity_perm(n);
  known[G.identity()] = true;
  std::vector<int> queue{G.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const int y = G.mul(x, gens[s]);
      if (known[y]) continue;
      alpha[y] = compose_perms(alpha[x], images[s]);
      known[y] = true;
      queue.push_back(y);
    }
  }
  for (int x = 0; x < G.order(); ++x)
    if (!known[x]) fail_field(field, "the listed generators do not generate the group");
  return alpha;
}

}  // namespace detail

inline Scenario parse_scenario(const Json& j, std::size_t cap = kDefaultCap) {
  Scenario s;
  s.kind = detail::require_field(j, "kind", "").get<std::string>();
  if (j.contains("name")) s.name = j.at("name").get<std::string>();
  if (j.contains("comment")) s.comment = j.at("comment").get<std::string>();
  if (s.kind == "universal") {
    auto E = group_from_spec(detail::require_field(j, "total", ""), "total", cap);
    auto G = group_from_spec(detail::require_field(j, "base", ""), "base", cap);
    auto proj = detail::int_list(detail::require_field(j, "projection", ""), "projection");
    s.universal = make_universal_scenario(std::move(E), std::move(G), std::move(proj));
    return s;
  }
  if (s.kind != "metric") detail::fail_field("kind", "expected 'metric' or 'universal'");
  s.theory = theory_from_spec(detail::require_field(j, "theory", ""), "theory", cap);
  const auto& M = *s.theory;
  if (j.contains("algebra")) {
    const auto gens =
        detail::int_list(detail::require_field(j.at("algebra"), "generators", "algebra"), "algebra.generators");
    std::vector<int> els{M.A.index_of(M.A.zero())};
    for (int g : gens) {
      if (g < 0 || g >= M.order()) detail::fail_field("algebra.generators", "element index out of range");
      els = detail::abelian_extend(M.A, els, g);
    }
    s.algebra = els;
  }
  if (j.contains("action")) {
    const auto& aj = j.at("action");
    auto G = group_from_spec(detail::require_field(aj, "group", "action"), "action.group", cap);
    std::vector<Perm> alpha;
    if (aj.contains("alpha")) {
      for (const auto& row : aj.at("alpha")) alpha.push_back(detail::int_list(row, "action.alpha"));
    } else if (aj.contains("images")) {
      std::vector<Perm> images;
      for (const auto& row : aj.at("images")) images.push_back(detail::int_list(row, "action.images"));
      const auto gens = detail::int_list(detail::require_field(aj, "generators", "action"),
                                         "action.generators");
      alpha = detail::alpha_from_generators(G, M.order(), gens, images, "action.images");
    } else {
      alpha.assign(G.order(), identity_perm(M.order()));
    }
    Cochain2 omega(G.order(), std::vector<int>(G.order(), M.A.index_of(M.A.zero())));
    if (aj.contains("omega")) {
      const auto& oj = aj.at("omega");
      if (oj.size() != static_cast<std::size_t>(G.order())) detail::fail_field("action.omega", "row count mismatch");
      for (std::size_t g = 0; g < oj.size(); ++g) {
        if (oj.at(g).size() != static_cast<std::size_t>(G.order()))
          detail::fail_field("action.omega", "column count mismatch");
        for (std::size_t h = 0; h < oj.at(g).size(); ++h)
          omega[g][h] = detail::element_from_spec(
              oj.at(g).at(h), M, "action.omega[" + std::to_string(g) + "][" + std::to_string(h) + "]");
      }
    }
    s.action = make_categorical_action(M, std::move(G), std::move(alpha), std::move(omega));
  }
  return s;
}

inline Json serialize_scenario(const Scenario& s) {
  Json j;
  j["kind"] = s.kind;
  if (!s.name.empty()) j["name"] = s.name;
  if (!s.comment.empty()) j["comment"] = s.comment;
  const auto group_json = [](const CayleyGroup& G) {
    Json g;
    std::vector<std::vector<int>> t(G.order(), std::vector<int>(G.order()));
    std::vector<std::string> labels(G.order());
    for (int x = 0; x < G.order(); ++x) {
      labels[x] = G.label(x);
      for (int y = 0; y < G.order(); ++y) t[x][y] = G.mul(x, y);
    }
    g["table"] = t;
    g["labels"] = labels;
    return g;
  };
  if (s.kind == "universal") {
    const auto& u = *s.universal;
    j["total"] = group_json(u.ext.E);
    j["base"] = group_json(u.ext.G);
    j["projection"] = u.ext.proj;
    return j;
  }
  const auto& M = *s.theory;
  Json t;
  t["factors"] = M.A.invariant_factors();
  Json q = Json::array();
  for (const auto& v : M.q) q.push_back(detail::qz_string(v));
  t["q"] = q;
  t["labels"] = M.labels;
  j["theory"] = t;
  if (s.algebra) {
    Json a;
    a["generators"] = make_etale_algebra(M, *s.algebra).B.generators;
    j["algebra"] = a;
  }
  if (s.action) {
    Json a;
    a["group"] = group_json(s.action->G);
    a["alpha"] = s.action->alpha;
    a["omega"] = s.action->omega;
    j["action"] = a;
  }
  return j;
}

inline std::string scenario_to_string(const Scenario& s) { return serialize_scenario(s).dump(2) + "\n"; }

inline Scenario load_scenario(const std::string& path, std::size_t cap = kDefaultCap) {
  std::ifstream in(path);
  if (!in) fail_validation("cannot open scenario file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    fail_validation("scenario file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j, cap);
}

inline bool same_theory(const MetricGroup& a, const MetricGroup& b) {
  return a.A.invariant_factors() == b.A.invariant_factors() && a.q == b.q && a.labels == b.labels;
}

inline bool same_group(const CayleyGroup& a, const CayleyGroup& b) {
  if (!a.same_table(b)) return false;
  for (int i = 0; i < a.order(); ++i)
    if (a.label(i) != b.label(i)) return false;
  return true;
}

inline bool scenario_equal(const Scenario& a, const Scenario& b) {
  if (a.kind != b.kind || a.name != b.name || a.comment != b.comment) return false;
  if (a.theory.has_value() != b.theory.has_value()) return false;
  if (a.theory && !same_theory(*a.theory, *b.theory)) return false;
  if (a.algebra != b.algebra) return false;
  if (a.action.has_value() != b.action.has_value()) return false;
  if (a.action &&
      !(same_group(a.action->G, b.action->G) && a.action->alpha == b.action->alpha &&
        a.action->omega == b.action->omega))
    return false;
  if (a.universal.has_value() != b.universal.has_value()) return false;
  if (a.universal &&
      !(same_group(a.universal->ext.E, b.universal->ext.E) &&
        same_group(a.universal->ext.G, b.universal->ext.G) &&
        a.universal->ext.proj == b.universal->ext.proj))
    return false;
  return true;
}

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

inline std::vector<std::string> builtin_scenario_names() {
  return {"toric-swap", "toric-frac-m", "toric-frac-e", "zvec-z4-tables",
          "dic12",      "metaplectic",  "s3-universal", "landau"};
}

inline Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.kind = "metric";
  s.name = name;
  const auto zero2 = [](int n, int zero) { return Cochain2(n, std::vector<int>(n, zero)); };
  if (name == "toric-swap") {
    s.comment =
        "Z2 swapping the two bosons of the toric code; the swap moves the condensate 1 (+) e, "
        "so the symmetry is broken at the first level.";
    s.theory = toric_code();
    s.algebra = std::vector<int>{0, 1};
    s.action = make_categorical_action(*s.theory, cyclic_cayley(2),
                                       {identity_perm(4), {0, 2, 1, 3}}, zero2(2, 0));
    return s;
  }
  if (name == "toric-frac-m" || name == "toric-frac-e") {
    const bool frac_m = name == "toric-frac-m";
    s.comment = frac_m
                    ? "Z2 acting trivially on the toric code but with fractionalization "
                      "omega(g,g) = m; the condensing boson e sees the m flux, the obstruction "
                      "extension is Z4, and no equivariant structure exists."
                    : "Z2 acting trivially on the toric code with fractionalization "
                      "omega(g,g) = e; e is transparent to itself, so the extension is Z2 x Z2 "
                      "with two inequivalent equivariant structures.";
    s.theory = toric_code();
    s.algebra = std::vector<int>{0, 1};
    Cochain2 omega = zero2(2, 0);
    omega[1][1] = frac_m ? 2 : 1;
    s.action = make_categorical_action(*s.theory, cyclic_cayley(2),
                                       {identity_perm(4), identity_perm(4)}, omega);
    return s;
  }
  if (name == "zvec-z4-tables") {
    s.comment =
        "Double of Z4 with charge conjugation and the order-2 charge condensed; the 16-anyon "
        "twist table, the seven-algebra survey, and the condensation to the toric code all "
        "live here.";
    s.theory = zvec_double(4).theory;
    s.algebra = std::vector<int>{0, 8};  // <a^2>
    Perm neg(16);
    for (int i = 0; i < 16; ++i) neg[i] = s.theory->A.neg_index(i);
    s.action = make_categorical_action(*s.theory, cyclic_cayley(2), {identity_perm(16), neg},
                                       zero2(2, 0));
    return s;
  }
  if (name == "dic12") {
    s.comment =
        "Double of Z6 with all charges condensed, charge conjugation, and fractionalization "
        "omega(g,g) = m^3: the obstruction extension is the dicyclic group of order 12, which "
        "does not split over Z2.";
    s.theory = zvec_double(6).theory;
    s.algebra = std::vector<int>{0, 6, 12, 18, 24, 30};  // <a>
    Perm neg(36);
    for (int i = 0; i < 36; ++i) neg[i] = s.theory->A.neg_index(i);
    Cochain2 omega = zero2(2, 0);
    omega[1][1] = 3;  // flux m^3
    s.action =
        make_categorical_action(*s.theory, cyclic_cayley(2), {identity_perm(36), neg}, omega);
    return s;
  }
  if (name == "metaplectic") {
    s.comment =
        "Z3 x Z3 with q(u,v) = (u^2 - v^2)/3 (a two-block presentation of the double of Z3) "
        "and the particle-hole involution (u,v) -> (-u,v): the involution does not fix the "
        "diagonal Lagrangian even as a set.";
    FiniteAbelianGroup A({3, 3});
    std::vector<QZ> q(9);
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) q[A.index_of({u, v})] = QZ(u * u - v * v, 3);
    s.theory = make_metric_group(A, q);
    s.algebra = std::vector<int>{0, 4, 8};
    Perm ph(9);
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) ph[A.index_of({u, v})] = A.index_of({(3 - u) % 3, v});
    s.action =
        make_categorical_action(*s.theory, cyclic_cayley(2), {identity_perm(9), ph}, zero2(2, 0));
    return s;
  }
  if (name == "s3-universal") {
    s.kind = "universal";
    s.comment =
        "The sequence 1 -> Z3 -> S3 -> Z2 -> 1: three sections in one conjugacy class, and the "
        "categorical cross-check realizes the sequence as an obstruction extension.";
    s.universal = make_universal_scenario(symmetric3(), cyclic_cayley(2), {0, 1, 0, 1, 0, 1});
    return s;
  }
  if (name == "landau") {
    s.comment =
        "The trivial theory carries no data that could obstruct a symmetry: every subgroup of "
        "S3 admits exactly one equivariant structure.";
    s.theory = trivial_theory();
    s.algebra = std::vector<int>{0};
    const auto G = symmetric3();
    s.action = make_categorical_action(*s.theory, G, std::vector<Perm>(6, Perm{0}), zero2(6, 0));
    return s;
  }
  fail_validation("unknown built-in example '" + name + "'");
}

}  // namespace condensa
