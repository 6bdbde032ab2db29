#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pds/graph.hpp"
#include "pds/system.hpp"

namespace pds {

enum class ext_kind { finite_path, eventually_periodic };

/// A point of the reversible extension: an anti-orbit (x_0, x_1, ...) with
/// alpha(x_n) = x_{n-1}.
///
/// finite_path: prefix holds all entries; the last one has no preimage.
/// eventually_periodic: the sequence is prefix followed by cycle repeated
/// forever.  Canonical form: cycle starts at its lexicographically least
/// rotation (by point order) and prefix is the phase shift, a proper suffix
/// of the cycle (possibly empty).  An infinite anti-orbit of a finite system
/// is purely periodic, so this represents all of them.
struct ext_point {
  ext_kind kind = ext_kind::finite_path;
  std::vector<int> prefix;
  std::vector<int> cycle;

  bool finite() const { return kind == ext_kind::finite_path; }

  /// x_n, or nullopt when the path has ended.
  std::optional<int> entry(std::uint64_t n) const {
    if (n < prefix.size()) return prefix[n];
    if (finite()) return std::nullopt;
    return cycle[(n - prefix.size()) % cycle.size()];
  }

  int head() const { return prefix.empty() ? cycle.front() : prefix.front(); }

  /// Number of entries of a finite path.
  std::size_t length() const { return prefix.size(); }

  bool operator==(const ext_point& o) const = default;
  auto operator<=>(const ext_point& o) const = default;
};

inline ext_point make_finite(std::vector<int> entries) {
  return ext_point{ext_kind::finite_path, std::move(entries), {}};
}

/// The unique infinite anti-orbit through a periodic point, in canonical form.
inline ext_point make_periodic(const partial_system& s, int head) {
  int m = s.period_of(head);
  std::vector<int> backward(m);
  backward[0] = head;
  for (int i = 1; i < m; ++i) backward[i] = *s.apply_n(backward[i - 1], m - 1);
  int best = 0;
  for (int r = 1; r < m; ++r) {
    for (int i = 0; i < m; ++i) {
      int a = backward[(r + i) % m], b = backward[(best + i) % m];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  ext_point p;
  p.kind = ext_kind::eventually_periodic;
  for (int i = 0; i < best; ++i) p.prefix.push_back(backward[i]);
  for (int i = 0; i < m; ++i) p.cycle.push_back(backward[(best + i) % m]);
  return p;
}

/// Checks the anti-orbit condition (including around the cycle and across the
/// prefix/cycle seam), terminality of finite paths, and canonical form.
inline const ext_point& validate_ext_point(const partial_system& s, const ext_point& p) {
  auto expect = [&](bool cond, const char* what) {
    if (!cond) fail(errc::invalid_point, what);
  };
  if (p.finite()) {
    expect(!p.prefix.empty() && p.cycle.empty(), "finite path needs entries and no cycle");
    for (std::size_t n = 1; n < p.prefix.size(); ++n)
      expect(s.alpha(p.prefix[n]) == std::optional<int>(p.prefix[n - 1]),
             "anti-orbit condition violated");
    expect(s.preimage(p.prefix.back(), 1).empty(), "finite path must end outside the image");
    return p;
  }
  expect(!p.cycle.empty(), "periodic point needs a cycle");
  int m = static_cast<int>(p.cycle.size());
  for (int i = 0; i < m; ++i)
    expect(s.alpha(p.cycle[i]) == std::optional<int>(p.cycle[(i - 1 + m) % m]),
           "cycle is not an anti-orbit loop");
  expect(static_cast<int>(p.prefix.size()) < m, "prefix must not contain a full cycle copy");
  for (std::size_t j = 0; j < p.prefix.size(); ++j)
    expect(p.prefix[j] == p.cycle[m - p.prefix.size() + j], "prefix must be the cycle phase");
  expect(p == make_periodic(s, p.head()), "cycle not in least-rotation form");
  return p;
}

/// Phi: head projection.
inline int phi(const ext_point& p) { return p.head(); }

/// Phi_n: the n-th coordinate, when the anti-orbit is that deep.
inline std::optional<int> phi_n(const ext_point& p, std::uint64_t n) { return p.entry(n); }

/// tilde-alpha prepends alpha(x_0); defined iff the head is in dom_1.
inline std::optional<ext_point> tilde_alpha(const partial_system& s, const ext_point& p) {
  validate_ext_point(s, p);
  auto img = s.alpha(p.head());
  if (!img) return std::nullopt;
  if (p.finite()) {
    std::vector<int> entries;
    entries.reserve(p.prefix.size() + 1);
    entries.push_back(*img);
    entries.insert(entries.end(), p.prefix.begin(), p.prefix.end());
    return make_finite(std::move(entries));
  }
  return make_periodic(s, *img);
}

/// tilde-alpha^{-1} drops the head; defined iff a second entry exists.
inline std::optional<ext_point> tilde_alpha_inv(const partial_system& s, const ext_point& p) {
  validate_ext_point(s, p);
  auto second = p.entry(1);
  if (!second) return std::nullopt;
  if (p.finite())
    return make_finite(std::vector<int>(p.prefix.begin() + 1, p.prefix.end()));
  return make_periodic(s, *second);
}

enum class cardinality_kind { finite, countably_infinite, uncountable };

struct cardinality {
  cardinality_kind kind = cardinality_kind::finite;
  std::uint64_t count = 0; // meaningful only when finite

  bool operator==(const cardinality&) const = default;
};

/// Cardinality of the extension, decided on the preimage graph: finite iff no
/// circuit has an exit (anti-orbits cannot branch away from a cycle),
/// uncountable iff some strongly connected part carries two circuits (never
/// the case for a single-valued alpha), countably infinite otherwise.
inline cardinality classify_cardinality(const partial_system& s) {
  digraph g = preimage_graph(s);
  switch (classify_path_space(g)) {
    case path_space_class::uncountable:
      return {cardinality_kind::uncountable, 0};
    case path_space_class::countably_infinite:
      return {cardinality_kind::countably_infinite, 0};
    case path_space_class::finite:
      break;
  }
  std::uint64_t count = count_terminated_walks(g) + s.periodic_points().size();
  return {cardinality_kind::finite, count};
}

struct extension_view {
  std::vector<ext_point> finite_paths;
  std::vector<ext_point> ep_points;
  cardinality card;

  std::size_t enumerated() const { return finite_paths.size() + ep_points.size(); }
};

/// Enumerates the extension: every finite path with at most max_len entries
/// and every eventually-periodic point in canonical form.  For systems whose
/// extension is finite the enumeration is complete.
inline extension_view build_extension(const partial_system& s, std::size_t max_len) {
  if (max_len < static_cast<std::size_t>(s.size()))
    fail(errc::bad_input, "max_len must be at least |X|");
  extension_view view;
  // A finite path is determined by its terminal t (no preimage) and its
  // length L: the entries are alpha^{L-1}(t), ..., alpha(t), t.
  for (int t = 0; t < s.size(); ++t) {
    if (!s.preimage(t, 1).empty()) continue;
    std::vector<int> forward{t};
    while (forward.size() < max_len) {
      auto next = s.alpha(forward.back());
      if (!next) break;
      forward.push_back(*next);
    }
    for (std::size_t len = 1; len <= forward.size(); ++len) {
      std::vector<int> entries(forward.begin(), forward.begin() + len);
      std::reverse(entries.begin(), entries.end());
      view.finite_paths.push_back(make_finite(std::move(entries)));
    }
  }
  std::sort(view.finite_paths.begin(), view.finite_paths.end(),
            [](const ext_point& a, const ext_point& b) { return a.prefix < b.prefix; });
  for (int x : s.periodic_points()) view.ep_points.push_back(make_periodic(s, x));
  std::sort(view.ep_points.begin(), view.ep_points.end(),
            [](const ext_point& a, const ext_point& b) { return a.head() < b.head(); });
  view.card = classify_cardinality(s);
  return view;
}

/// All anti-orbit prefixes (x_0,...,x_{len-1}), the truncation query for the
/// part of the extension that canonical points cannot reach.
inline std::vector<std::vector<int>> anti_orbit_prefixes(const partial_system& s,
                                                         std::size_t len) {
  std::vector<std::vector<int>> out, stack;
  for (int x = 0; x < s.size(); ++x) stack.push_back({x});
  while (!stack.empty()) {
    std::vector<int> cur = std::move(stack.back());
    stack.pop_back();
    if (cur.size() == len) {
      out.push_back(std::move(cur));
      continue;
    }
    for (int y : s.preimage(cur.back(), 1)) {
      std::vector<int> next = cur;
      next.push_back(y);
      stack.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// n-section: the set of n-th coordinates of the points of U that are deep
/// enough.
inline std::vector<int> sections(const partial_system& s, const std::vector<ext_point>& U,
                                 std::uint64_t n) {
  std::vector<char> hit(s.size(), 0);
  for (const auto& p : U) {
    validate_ext_point(s, p);
    if (auto x = p.entry(n)) hit[*x] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < s.size(); ++i)
    if (hit[i]) out.push_back(i);
  return out;
}

/// Membership in the set reconstructed from sections: every defined entry up
/// to index K must lie in its section; deeper entries are unconstrained.
inline bool reconstruct_member(const partial_system& s,
                               const std::vector<std::vector<int>>& section_list,
                               const ext_point& p) {
  validate_ext_point(s, p);
  for (std::size_t n = 0; n < section_list.size(); ++n) {
    auto x = p.entry(n);
    if (!x) break;
    const auto& sec = section_list[n];
    if (std::find(sec.begin(), sec.end(), *x) == sec.end()) return false;
  }
  return true;
}

/// For injective alpha the head projection is a bijection of the extension
/// onto X; verified on the enumeration.
inline bool phi_bijective_check(const partial_system& s) {
  if (!s.classify().injective) fail(errc::not_injective, "alpha is not injective");
  extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
  std::vector<char> seen(s.size(), 0);
  std::size_t total = 0;
  auto visit = [&](const ext_point& p) {
    ++total;
    if (seen[p.head()]) return false;
    seen[p.head()] = 1;
    return true;
  };
  for (const auto& p : view.finite_paths)
    if (!visit(p)) return false;
  for (const auto& p : view.ep_points)
    if (!visit(p)) return false;
  return total == static_cast<std::size_t>(s.size());
}

/// If alpha is onto, every maximal anti-orbit is infinite (the extension is
/// an inverse limit); vacuously true otherwise.
inline bool projective_limit_check(const partial_system& s) {
  if (static_cast<int>(s.image_n(1).size()) != s.size()) return true;
  extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
  return view.finite_paths.empty();
}

inline std::string ext_point_label(const partial_system& s, const ext_point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    if (i) os << ",";
    os << s.name(p.prefix[i]);
  }
  if (!p.finite()) {
    os << "|";
    for (std::size_t i = 0; i < p.cycle.size(); ++i) {
      if (i) os << ",";
      os << s.name(p.cycle[i]);
    }
  }
  os << ")";
  return os.str();
}

/// Directed graph of the extension, edges p -> tilde_alpha(p).
inline std::string to_dot(const partial_system& s, const extension_view& view) {
  std::vector<ext_point> all = view.finite_paths;
  all.insert(all.end(), view.ep_points.begin(), view.ep_points.end());
  std::ostringstream os;
  os << "digraph extension {\n";
  for (const auto& p : all) os << "  \"" << ext_point_label(s, p) << "\";\n";
  for (const auto& p : all) {
    auto q = tilde_alpha(s, p);
    if (!q) continue;
    bool enumerated = std::find(all.begin(), all.end(), *q) != all.end();
    if (enumerated)
      os << "  \"" << ext_point_label(s, p) << "\" -> \"" << ext_point_label(s, *q) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace pds
