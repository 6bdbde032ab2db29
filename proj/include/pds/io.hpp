#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pds/coeff_algebra.hpp"
#include "pds/extension.hpp"
#include "pds/freedom.hpp"
#include "pds/invariance.hpp"
#include "pds/markov.hpp"
#include "pds/representation.hpp"
#include "pds/system.hpp"

namespace pds::io {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "pds";
inline constexpr const char* tool_version = "0.1.0";

/// FNV-1a 64 over the raw input bytes; reports embed it so outputs are
/// traceable to their inputs.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << h;
  return os.str();
}

inline ordered_json report_header(const std::string& input_bytes) {
  ordered_json j;
  j["tool"] = tool_name;
  j["version"] = tool_version;
  j["input_digest"] = digest(input_bytes);
  return j;
}

/// System JSON: {"points": [names...], "alpha": {from: to, ...}}; the domain
/// of the map is exactly the key set of "alpha".
inline partial_system parse_system_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    fail(errc::bad_input, "system JSON needs a \"points\" array");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) fail(errc::bad_input, "point names must be strings");
    points.push_back(p.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> alpha;
  if (j.contains("alpha")) {
    if (!j["alpha"].is_object()) fail(errc::bad_input, "\"alpha\" must be an object");
    for (const auto& [from, to] : j["alpha"].items()) {
      if (!to.is_string()) fail(errc::bad_input, "alpha values must be point names");
      alpha.emplace_back(from, to.get<std::string>());
    }
  }
  return partial_system::validate(std::move(points), alpha);
}

inline ordered_json system_to_json(const partial_system& s) {
  ordered_json j;
  j["points"] = s.names();
  ordered_json alpha = ordered_json::object();
  for (int x = 0; x < s.size(); ++x)
    if (auto y = s.alpha(x)) alpha[s.name(x)] = s.name(*y);
  j["alpha"] = std::move(alpha);
  return j;
}

/// Matrix text: one row per line, 0/1 entries separated by single spaces.
inline adj_matrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row_is(line);
    std::vector<int> row;
    int v;
    while (row_is >> v) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return validate_matrix(rows);
}

inline std::string matrix_to_text(const adj_matrix& a) {
  std::ostringstream os;
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (j) os << ' ';
      os << a.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

/// Sequence elements: one object per index mapping point name to [re, im];
/// points where the term vanishes are omitted.
inline ordered_json seq_to_json(const partial_system& s, const seq_element<complexd>& a) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : a.terms) {
    ordered_json term = ordered_json::object();
    for (int x = 0; x < s.size(); ++x)
      if (t.values[x] != complexd{})
        term[s.name(x)] = {t.values[x].real(), t.values[x].imag()};
    terms.push_back(std::move(term));
  }
  return terms;
}

inline seq_element<complexd> seq_from_json(const partial_system& s, const ordered_json& j) {
  if (!j.is_array()) fail(errc::bad_input, "sequence JSON must be an array of objects");
  std::vector<func<complexd>> terms;
  for (const auto& term : j) {
    if (!term.is_object()) fail(errc::bad_input, "sequence terms must be objects");
    func<complexd> f = func<complexd>::zero(s);
    for (const auto& [name, value] : term.items()) {
      if (!value.is_array() || value.size() != 2)
        fail(errc::bad_input, "complex values are [re, im] pairs");
      f.values[s.index(name)] = complexd{value[0].get<double>(), value[1].get<double>()};
    }
    terms.push_back(std::move(f));
  }
  return make_seq(s, std::move(terms));
}

inline ordered_json ext_point_to_json(const partial_system& s, const ext_point& p) {
  ordered_json j;
  j["kind"] = p.finite() ? "finite_path" : "eventually_periodic";
  j["prefix"] = names_of(s, p.prefix);
  if (!p.finite()) j["cycle"] = names_of(s, p.cycle);
  return j;
}

inline ordered_json cardinality_to_json(const cardinality& c) {
  ordered_json j;
  switch (c.kind) {
    case cardinality_kind::finite:
      j["kind"] = "finite";
      j["count"] = c.count;
      break;
    case cardinality_kind::countably_infinite: j["kind"] = "countably_infinite"; break;
    case cardinality_kind::uncountable: j["kind"] = "uncountable"; break;
  }
  return j;
}

inline ordered_json extension_report(const partial_system& s, const extension_view& view) {
  ordered_json j;
  j["cardinality"] = cardinality_to_json(view.card);
  j["enumerated"] = view.enumerated();
  ordered_json pts = ordered_json::array();
  for (const auto& p : view.finite_paths) pts.push_back(ext_point_to_json(s, p));
  for (const auto& p : view.ep_points) pts.push_back(ext_point_to_json(s, p));
  j["points"] = std::move(pts);
  ordered_json edges = ordered_json::array();
  auto enumerated = [&](const ext_point& q) {
    return std::find(view.finite_paths.begin(), view.finite_paths.end(), q) !=
               view.finite_paths.end() ||
           std::find(view.ep_points.begin(), view.ep_points.end(), q) != view.ep_points.end();
  };
  auto emit_edges = [&](const std::vector<ext_point>& list) {
    for (const auto& p : list) {
      auto q = tilde_alpha(s, p);
      if (!q || !enumerated(*q)) continue;
      ordered_json e;
      e["from"] = ext_point_label(s, p);
      e["to"] = ext_point_label(s, *q);
      edges.push_back(std::move(e));
    }
  };
  emit_edges(view.finite_paths);
  emit_edges(view.ep_points);
  j["edges"] = std::move(edges);
  return j;
}

inline ordered_json freedom_to_json(const partial_system& s, const freedom_report& report) {
  ordered_json j;
  // singletons are open in a finite discrete space, so the open-set
  // quantifier collapses to a pointwise scan of each F_n
  j["semantics"] = "finite discrete: every point of F_n needs an exit";
  j["free"] = report.free;
  ordered_json violations = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json e;
    e["n"] = v.period;
    e["x"] = s.name(v.point);
    violations.push_back(std::move(e));
  }
  j["violations"] = std::move(violations);
  ordered_json exits = ordered_json::object();
  for (const auto& [x, w] : report.exits) {
    ordered_json e;
    e["k"] = w.k;
    e["y"] = s.name(w.branch);
    exits[s.name(x)] = std::move(e);
  }
  j["exits"] = std::move(exits);
  return j;
}

inline ordered_json invariants_report(const partial_system& s) {
  const auto family = enumerate_invariant(s);
  ordered_json j;
  ordered_json sets = ordered_json::array();
  for (const auto& v : family.sets) sets.push_back(names_of(s, v));
  j["sets"] = std::move(sets);
  j["minimal"] = family.sets.size() <= 2;
  j["intersection_closed"] = family.intersection_closed;
  if (family.sets.size() <= 64 && classify_cardinality(s).kind == cardinality_kind::finite) {
    ordered_json pairs = ordered_json::array();
    for (const auto& v : family.sets) {
      lifted_set lift = lift_invariant(s, v);
      ordered_json pair;
      pair["v"] = names_of(s, v);
      ordered_json lifted = ordered_json::array();
      for (const auto& p : *lift.lifted) lifted.push_back(ext_point_label(s, p));
      pair["v_tilde"] = std::move(lifted);
      pairs.push_back(std::move(pair));
    }
    j["pairs"] = std::move(pairs);
  }
  return j;
}

inline const char* reason_name(simplicity_reason r) {
  switch (r) {
    case simplicity_reason::minimal_not_cycle: return "Minimal-NotCycle";
    case simplicity_reason::cycle: return "Cycle";
    case simplicity_reason::not_minimal: return "NotMinimal";
  }
  return "";
}

inline ordered_json simplicity_to_json(const partial_system& s, const simplicity_report& r) {
  ordered_json j;
  j["simple"] = r.simple;
  j["reason"] = reason_name(r.reason);
  if (r.witness) j["witness"] = names_of(s, *r.witness);
  return j;
}

inline ordered_json decomposition_report(const partial_system& s, bool with_ideals) {
  ordered_json j;
  const auto lengths = decompose(s);
  j["chains"] = lengths;
  std::ostringstream alg;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i) alg << " ⊕ ";
    alg << "M_" << lengths[i];
  }
  j["algebra"] = alg.str();
  int gen_dim = 0;
  for (int m : lengths) gen_dim += m * m;
  j["generated_dim"] = gen_dim;
  if (cov_rep rep = canonical_rep(s); rep.dim() <= generated_dim_cap)
    j["generated_dim_verified"] = generated_dim_check(rep);
  else
    j["generated_dim_verified"] = nullptr;
  if (with_ideals) {
    const auto chains = alpha_chains(s);
    ordered_json ideals = ordered_json::array();
    for (const auto& entry : ideal_lattice(s)) {
      ordered_json e;
      e["V"] = names_of(s, entry.invariant_set);
      ordered_json blocks = ordered_json::array();
      for (int c : entry.blocks) blocks.push_back(chains[c].length);
      e["blocks"] = std::move(blocks);
      e["dim"] = entry.dim;
      ideals.push_back(std::move(e));
    }
    j["ideals"] = std::move(ideals);
  }
  const auto verdict = simplicity_verdict(s);
  j["simple"] = verdict.simple;
  j["reason"] = reason_name(verdict.reason);
  return j;
}

} // namespace pds::io
