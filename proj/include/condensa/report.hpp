#pragma once

// Command reports: one function per CLI command, returning both the plain
// text rendering and a JSON document with the same content. All output is
// deterministic and ASCII; exact values print as num/den exponents of
// exp(2 pi i * _), never as floating point.

#include <iomanip>
#include <sstream>
#include <string>

#include "condensa/scenario.hpp"

namespace condensa {

struct Report {
  std::string text;
  Json data;
};

namespace detail {

inline std::string theory_line(const MetricGroup& M) {
  return identify_metric_group(M) + " (" + M.A.name() + ", order " + std::to_string(M.order()) + ")";
}

inline std::string algebra_line(const EtaleAlgebra& A) {
  return algebra_label(A) + " (order " + std::to_string(A.B.elements.size()) + ")";
}

inline std::string subgroup_label(const CayleyGroup& G, const std::vector<int>& elements) {
  std::string s = "{ ";
  for (std::size_t i = 0; i < elements.size(); ++i)
    s += (i ? ", " : "") + G.label(elements[i]);
  return s + " }";
}

inline std::string count_phrase(std::size_t n, const char* noun, std::size_t classes) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s") + " in " + std::to_string(classes) +
         (classes == 1 ? " class" : " classes");
}

}  // namespace detail

inline Report report_modular_data(const MetricGroup& M) {
  const auto d = modular_data(M);
  std::ostringstream t;
  Json j;
  j["command"] = "modular-data";
  j["theory"] = identify_metric_group(M);
  j["group"] = M.A.name();
  j["order"] = M.order();
  j["labels"] = d.labels;
  t << "theory: " << detail::theory_line(M) << "\n";
  t << "labels:";
  for (const auto& l : d.labels) t << " " << l;
  t << "\nT exponents:";
  Json theta = Json::array();
  for (const auto& v : d.theta) {
    t << " " << detail::qz_string(v);
    theta.push_back(detail::qz_string(v));
  }
  j["t_exponents"] = theta;
  t << "\nS prefactor: 1/sqrt(" << M.order() << ")\n";
  t << "S exponents:\n";
  j["s_prefactor"] = "1/sqrt(" + std::to_string(M.order()) + ")";
  Json rows = Json::array();
  for (const auto& row : d.s_exponents) {
    Json r = Json::array();
    t << " ";
    for (const auto& v : row) {
      t << " " << detail::qz_string(v);
      r.push_back(detail::qz_string(v));
    }
    t << "\n";
    rows.push_back(r);
  }
  j["s_exponents"] = rows;
  return Report{t.str(), std::move(j)};
}

inline Report report_etale(const MetricGroup& M, std::size_t cap = kDefaultCap) {
  const auto algebras = enumerate_etale(M, cap);
  const auto notes = etale_label_notes(M);
  std::ostringstream t;
  Json j;
  j["command"] = "etale";
  j["theory"] = identify_metric_group(M);
  j["order"] = M.order();
  t << "theory: " << detail::theory_line(M) << "\n";
  t << "etale algebras: " << algebras.size() << "\n";
  std::size_t width = 0;
  for (const auto& A : algebras) width = std::max(width, algebra_label(A).size());
  Json rows = Json::array();
  for (const auto& A : algebras) {
    const auto aut = etale_aut_group(A);
    const auto ct = condense(A);
    const std::string outcome = identify_metric_group(ct.theory);
    t << "  support: " << std::left << std::setw(static_cast<int>(width)) << algebra_label(A)
      << "  order " << A.B.elements.size() << "  Aut ~ " << std::setw(8) << aut.chars.name()
      << "  condenses to: " << outcome << "\n";
    Json r;
    r["support"] = algebra_label(A);
    r["elements"] = A.B.elements;
    r["order"] = A.B.elements.size();
    r["aut"] = aut.chars.name();
    r["lagrangian"] = is_lagrangian(A);
    r["condenses_to"] = outcome;
    rows.push_back(r);
  }
  j["algebras"] = rows;
  j["notes"] = notes;
  if (!notes.empty()) {
    t << "notes:\n";
    for (const auto& n : notes) t << "  " << n << "\n";
  }
  return Report{t.str(), std::move(j)};
}

inline Report report_condense(const MetricGroup& M, const std::vector<int>& support) {
  const auto A = make_etale_algebra(M, support);
  const auto ct = condense(A);
  std::ostringstream t;
  Json j;
  j["command"] = "condense";
  j["theory"] = identify_metric_group(M);
  j["algebra"] = algebra_label(A);
  j["condensed"] = identify_metric_group(ct.theory);
  j["condensed_order"] = ct.theory.order();
  j["labels"] = ct.theory.labels;
  Json q = Json::array();
  for (const auto& v : ct.theory.q) q.push_back(detail::qz_string(v));
  j["q"] = q;
  t << "theory: " << detail::theory_line(M) << "\n";
  t << "algebra: " << detail::algebra_line(A) << "\n";
  t << "condensed theory: " << detail::theory_line(ct.theory) << "\n";
  t << "labels:";
  for (const auto& l : ct.theory.labels) t << " " << l;
  t << "\nq:";
  for (const auto& v : ct.theory.q) t << " " << detail::qz_string(v);
  t << "\n";
  return Report{t.str(), std::move(j)};
}

namespace detail {

// Shared head of the obstruction and splittings reports: everything up to and
// including the first obstruction, which both commands must survive.
inline bool obstruction_head(const CategoricalAction& act, const EtaleAlgebra& A,
                             std::ostringstream& t, Json& j) {
  const auto aut = etale_aut_group(A);
  t << "theory: " << theory_line(act.M) << "\n";
  t << "symmetry group: " << identify_group(act.G) << " (order " << act.G.order() << ")\n";
  t << "algebra: " << algebra_line(A) << "\n";
  t << "Aut_C(A) ~ " << aut.chars.name() << "\n";
  j["theory"] = identify_metric_group(act.M);
  j["group"] = identify_group(act.G);
  j["algebra"] = algebra_label(A);
  j["aut"] = aut.chars.name();
  const auto witness = first_obstruction_witness(act, A);
  if (witness) {
    t << "first obstruction: FAILED (alpha at '" << act.G.label(witness->g) << "' moves '"
      << act.M.label(witness->b) << "' out of the algebra)\n";
    j["first_obstruction"] = "failed";
    j["witness"] = Json{{"g", act.G.label(witness->g)}, {"moves", act.M.label(witness->b)}};
    return false;
  }
  t << "first obstruction: PASSED (the action fixes the condensate)\n";
  j["first_obstruction"] = "passed";
  return true;
}

}  // namespace detail

inline Report report_obstruction(const CategoricalAction& act, const std::vector<int>& support,
                                 std::size_t cap = kDefaultCap) {
  const auto A = make_etale_algebra(act.M, support);
  std::ostringstream t;
  Json j;
  j["command"] = "obstruction";
  if (!detail::obstruction_head(act, A, t, j)) {
    t << "verdict: BROKEN (the symmetry does not fix the condensate)\n";
    j["verdict"] = "BROKEN";
    return Report{t.str(), std::move(j)};
  }
  const auto oe = obstruction_extension(act, A, cap);
  const std::string ename = identify_group(oe.extension.E);
  t << "obstruction extension: order " << oe.extension.E.order() << " ~ " << ename << "\n";
  j["extension"] = ename;
  j["extension_order"] = oe.extension.E.order();
  bool twisted = false;
  for (const auto& row : oe.restricted.w)
    for (int v : row) twisted |= v != 0;
  t << "restricted cocycle: " << (twisted ? "nontrivial" : "identically zero") << "\n";
  j["restricted_cocycle"] = twisted ? "nontrivial" : "zero";
  return Report{t.str(), std::move(j)};
}

inline Report report_splittings(const CategoricalAction& act, const std::vector<int>& support,
                                std::size_t cap = kDefaultCap) {
  const auto A = make_etale_algebra(act.M, support);
  std::ostringstream t;
  Json j;
  j["command"] = "splittings";
  const bool head_ok = detail::obstruction_head(act, A, t, j);
  if (head_ok) {
    const auto oe = obstruction_extension(act, A, cap);
    const auto en = enumerate_equivariant_structures(act, A);
    const std::string ename = identify_group(oe.extension.E);
    j["extension"] = ename;
    j["structures"] = en.structures.size();
    j["classes"] = en.classes.size();
    t << "obstruction extension: order " << oe.extension.E.order() << " ~ " << ename << "\n";
    t << "equivariant structures: "
      << detail::count_phrase(en.structures.size(), "structure", en.classes.size()) << "\n";
    if (en.structures.empty()) {
      t << "verdict: BROKEN: 0 splittings; Aut_{C^G}(I(A)) ~ " << ename << "\n";
      j["verdict"] = "BROKEN";
    } else {
      t << "verdict: PRESERVED: "
        << detail::count_phrase(en.structures.size(), "splitting", en.classes.size())
        << "; extension ~ " << ename << "\n";
      j["verdict"] = "PRESERVED";
    }
  } else {
    t << "verdict: BROKEN: the first obstruction already fails\n";
    j["verdict"] = "BROKEN";
  }
  t << "restrictions to subgroups of " << identify_group(act.G) << ":\n";
  Json rows = Json::array();
  for (const auto& H : enumerate_subgroups(act.G)) {
    const auto sub = restrict_action(act, H.elements);
    const std::string hname = detail::subgroup_label(act.G, H.elements);
    Json r;
    r["subgroup"] = H.elements;
    if (!first_obstruction(sub, A)) {
      t << "  " << hname << " : first obstruction fails\n";
      r["first_obstruction"] = "failed";
    } else {
      const auto en = enumerate_equivariant_structures(sub, A);
      t << "  " << hname << " : "
        << detail::count_phrase(en.structures.size(), "structure", en.classes.size()) << "\n";
      r["first_obstruction"] = "passed";
      r["structures"] = en.structures.size();
      r["classes"] = en.classes.size();
    }
    rows.push_back(r);
  }
  j["restrictions"] = rows;
  return Report{t.str(), std::move(j)};
}

inline Report report_induce(const CategoricalAction& act, const std::vector<int>& support,
                            std::size_t cap = kDefaultCap) {
  const auto A = make_etale_algebra(act.M, support);
  std::ostringstream t;
  Json j;
  j["command"] = "induce";
  if (!detail::obstruction_head(act, A, t, j)) {
    t << "verdict: BROKEN (nothing to induce)\n";
    j["verdict"] = "BROKEN";
    return Report{t.str(), std::move(j)};
  }
  (void)cap;
  const auto en = enumerate_equivariant_structures(act, A);
  j["structures"] = en.structures.size();
  j["classes"] = en.classes.size();
  t << "equivariant structures: "
    << detail::count_phrase(en.structures.size(), "structure", en.classes.size()) << "\n";
  if (en.structures.empty()) {
    t << "verdict: BROKEN (no equivariant structure; nothing to induce)\n";
    j["verdict"] = "BROKEN";
    return Report{t.str(), std::move(j)};
  }
  j["verdict"] = "PRESERVED";
  Json rows = Json::array();
  for (std::size_t c = 0; c < en.classes.size(); ++c) {
    const auto& s = en.structures[en.classes[c][0]];
    const auto induced = induce_condensed_action(act, A, s);
    bool trivial = true;
    for (const auto& p : induced.alpha) trivial &= p == identity_perm(induced.M.order());
    for (const auto& row : induced.omega)
      for (int v : row) trivial &= v == induced.M.A.index_of(induced.M.A.zero());
    t << "class " << c + 1 << ": chi = (";
    for (std::size_t g = 0; g < s.chi.size(); ++g) t << (g ? ", " : "") << s.chi[g];
    t << ")\n";
    t << "  induced theory: " << detail::theory_line(induced.M) << "\n";
    t << "  induced action: " << (trivial ? "trivial" : "nontrivial") << "\n";
    Json r;
    r["chi"] = s.chi;
    r["induced_theory"] = identify_metric_group(induced.M);
    r["induced_order"] = induced.M.order();
    r["induced_action_trivial"] = trivial;
    rows.push_back(r);
  }
  j["induced"] = rows;
  return Report{t.str(), std::move(j)};
}

inline Report report_universal(const UniversalScenario& sc, std::size_t cap = kDefaultCap) {
  const auto NV = subgroup_view(sc.ext.E, sc.ext.kernel);
  const auto an = analyze(sc, cap);
  std::ostringstream t;
  Json j;
  j["command"] = "universal";
  const std::string nname = identify_group(NV.group);
  const std::string ename = identify_group(sc.ext.E);
  const std::string gname = identify_group(sc.ext.G);
  t << "sequence: 1 -> " << nname << " -> " << ename << " -> " << gname << " -> 1\n";
  j["kernel"] = nname;
  j["total"] = ename;
  j["base"] = gname;
  t << "splittings: " << detail::count_phrase(an.splittings.size(), "section", an.classes.size())
    << "\n";
  t << "verdict: " << (an.preserved ? "PRESERVED" : "BROKEN") << "\n";
  j["splittings"] = an.splittings.size();
  j["classes"] = an.classes.size();
  j["verdict"] = an.preserved ? "PRESERVED" : "BROKEN";
  t << "sections over subgroups of the base:\n";
  Json rows = Json::array();
  for (const auto& row : an.subgroups) {
    t << "  " << detail::subgroup_label(sc.ext.G, row.elements) << " : "
      << detail::count_phrase(row.splitting_count, "section", row.class_count) << "\n";
    Json r;
    r["subgroup"] = row.elements;
    r["sections"] = row.splitting_count;
    r["classes"] = row.class_count;
    rows.push_back(r);
  }
  j["subgroups"] = rows;
  if (NV.group.is_abelian()) {
    const bool ok = cross_check_abelian(sc, cap);
    t << "cross-check (abelian kernel): "
      << (ok ? "ok; the obstruction extension realizes the sequence" : "FAILED") << "\n";
    j["cross_check"] = ok ? "ok" : "failed";
  } else {
    t << "cross-check: skipped (kernel is not abelian)\n";
    j["cross_check"] = "skipped";
  }
  return Report{t.str(), std::move(j)};
}

}  // namespace condensa
