#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pds/extension.hpp"
#include "pds/graph.hpp"
#include "pds/system.hpp"

namespace pds {

/// Freedom verdict with witnesses.  On a finite discrete space every
/// singleton subset of F_n is open, so "every open nonempty subset of F_n has
/// an exit" becomes "every point of F_n has an exit".
struct freedom_report {
  struct violation {
    std::uint64_t period; // n with x in F_n and no exit up to n
    int point;
    bool operator==(const violation&) const = default;
  };
  struct exit_witness {
    std::uint64_t k; // smallest step with a branch
    int branch;      // smallest y != alpha^{k-1}(x) with alpha(y) = alpha^k(x)
    bool operator==(const exit_witness&) const = default;
  };

  bool free = true;
  std::vector<violation> violations;
  std::map<int, exit_witness> exits; // one witness per satisfied periodic point
};

/// Smallest (k, y): y a preimage of alpha^k(x) other than alpha^{k-1}(x).
inline std::optional<freedom_report::exit_witness> find_exit(const partial_system& s, int x,
                                                             std::uint64_t n) {
  for (std::uint64_t k = 1; k <= n; ++k) {
    int target = *s.apply_n(x, k);
    int along = *s.apply_n(x, k - 1);
    for (int y : s.preimage(target, 1))
      if (y != along) return freedom_report::exit_witness{k, y};
  }
  return std::nullopt;
}

inline freedom_report is_topologically_free(const partial_system& s) {
  freedom_report report;
  for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(s.size()); ++n) {
    for (int x : s.fixed_points(n)) {
      auto w = find_exit(s, x, n);
      if (w) {
        report.exits.emplace(x, *w);
      } else {
        report.free = false;
        report.violations.push_back({n, x});
      }
    }
  }
  return report;
}

/// Independent route: every simple loop of the preimage graph must have an
/// exit.  Agrees with the pointwise check on every system.
inline bool graph_freedom(const partial_system& s) {
  digraph g = preimage_graph(s);
  for (const auto& cyc : simple_cycles(g))
    if (!cycle_has_exit(g, cyc)) return false;
  return true;
}

/// Emptiness of { x in Delta_{n-1} : the only (n-k)-step preimage of x is
/// alpha^k(x), k = 0..n-1 }, the interior formulation of freedom at order n.
inline bool interior_criterion(const partial_system& s, std::uint64_t n) {
  if (n < 1) fail(errc::bad_input, "n must be positive");
  for (int x : s.domain_n(n - 1)) {
    bool rigid = true;
    for (std::uint64_t k = 0; k < n && rigid; ++k) {
      auto fwd = s.apply_n(x, k);
      auto pre = s.preimage(x, n - k);
      rigid = fwd && pre.size() == 1 && pre.front() == *fwd;
    }
    if (rigid) return false;
  }
  return true;
}

/// The alpha^n-fixed points of the extension: exactly the periodic
/// anti-orbits through F_n, one per point of F_n.
inline std::vector<ext_point> extension_fixed_points(const partial_system& s, std::uint64_t n) {
  if (n < 1) fail(errc::bad_input, "n must be positive");
  std::vector<ext_point> out;
  for (int x : s.fixed_points(n)) out.push_back(make_periodic(s, x));
  return out;
}

/// Freedom of tilde-alpha computed on the extension and compared with the
/// base verdict.  A periodic extension point is isolated inside F~_n exactly
/// when no coordinate of its cycle has a second preimage, so the extension
/// verdict reduces to branch-multiplicity of the underlying periodic points.
inline bool extension_freedom_equivalence(const partial_system& s) {
  bool ext_free = true;
  for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(s.size()); ++n) {
    for (const auto& p : extension_fixed_points(s, n)) {
      bool branches = false;
      for (int c : p.cycle)
        if (s.preimage(c, 1).size() > 1) branches = true;
      if (!branches) ext_free = false;
    }
  }
  return ext_free == is_topologically_free(s).free;
}

} // namespace pds
