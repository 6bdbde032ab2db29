#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "pds/extension.hpp"
#include "pds/system.hpp"

namespace pds {

namespace detail {

// Per-n data for the invariance quantifier, n = 0..|X| (both chains
// stabilize there).
struct iterates {
  std::vector<std::vector<char>> dom;   // Delta_n as flags
  std::vector<std::vector<char>> img;   // Delta_{-n} as flags
  std::vector<std::vector<int>> powers; // alpha^n as -1-padded tables

  explicit iterates(const partial_system& s) {
    int n = s.size();
    dom.resize(n + 1);
    img.resize(n + 1);
    powers.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      dom[k].assign(n, 0);
      img[k].assign(n, 0);
      powers[k].assign(n, -1);
      for (int x : s.domain_n(k)) dom[k][x] = 1;
      for (int x : s.image_n(k)) img[k][x] = 1;
      for (int x = 0; x < n; ++x)
        if (auto y = s.apply_n(x, k)) powers[k][x] = *y;
    }
  }
};

inline bool invariant_with(const iterates& it, int n_points, std::uint32_t v) {
  for (int k = 0; k <= n_points; ++k) {
    std::uint32_t lhs = 0, rhs = 0;
    for (int x = 0; x < n_points; ++x) {
      if ((v >> x & 1u) && it.dom[k][x]) lhs |= 1u << it.powers[k][x];
      if ((v >> x & 1u) && it.img[k][x]) rhs |= 1u << x;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

inline std::uint32_t to_mask(const std::vector<int>& v) {
  std::uint32_t m = 0;
  for (int x : v) m |= 1u << x;
  return m;
}

inline std::vector<int> from_mask(std::uint32_t m, int n) {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (m >> x & 1u) out.push_back(x);
  return out;
}

} // namespace detail

constexpr int invariance_enumeration_cap = 20;

inline void check_enumeration_cap(const partial_system& s) {
  if (s.size() > invariance_enumeration_cap)
    fail(errc::too_large, "system exceeds the subset-enumeration cap");
}

inline void check_subset(const partial_system& s, const std::vector<int>& v) {
  for (int x : v)
    if (x < 0 || x >= s.size()) fail(errc::unknown_point, "subset entry out of range");
}

/// alpha^n(V * Delta_n) = V * Delta_{-n} for every n; n up to |X| decides it.
inline bool is_invariant(const partial_system& s, const std::vector<int>& v) {
  if (s.size() > 32) fail(errc::too_large, "bitmask invariance limited to 32 points");
  check_subset(s, v);
  detail::iterates it(s);
  return detail::invariant_with(it, s.size(), detail::to_mask(v));
}

/// Single-step two-sided equality, the weakest of the classical conditions.
inline bool predicate_iv(const partial_system& s, const std::vector<int>& v) {
  check_subset(s, v);
  std::vector<char> inv(s.size(), 0);
  for (int x : v) inv[x] = 1;
  std::uint32_t lhs = 0, rhs = 0;
  for (int x : v)
    if (auto y = s.alpha(x)) lhs |= 1u << *y;
  for (int x : s.image_n(1))
    if (inv[x]) rhs |= 1u << x;
  return lhs == rhs;
}

/// Forward invariance plus preimage invariance at step one.
inline bool predicate_iii(const partial_system& s, const std::vector<int>& v) {
  check_subset(s, v);
  std::vector<char> inv(s.size(), 0);
  for (int x : v) inv[x] = 1;
  for (int x : v)
    if (auto y = s.alpha(x))
      if (!inv[*y]) return false;
  std::vector<char> in_img(s.size(), 0);
  for (int x : s.image_n(1)) in_img[x] = 1;
  for (int x : v)
    if (in_img[x])
      for (int y : s.preimage(x, 1))
        if (!inv[y]) return false;
  return true;
}

/// Both inclusions at every order up to |X|.
inline bool predicate_ii(const partial_system& s, const std::vector<int>& v) {
  check_subset(s, v);
  std::vector<char> inv(s.size(), 0);
  for (int x : v) inv[x] = 1;
  detail::iterates it(s);
  for (int k = 0; k <= s.size(); ++k) {
    for (int x : v) {
      if (it.dom[k][x] && !inv[it.powers[k][x]]) return false;
      if (it.img[k][x])
        for (int y = 0; y < s.size(); ++y)
          if (it.dom[k][y] && it.powers[k][y] == x && !inv[y]) return false;
    }
  }
  return true;
}

struct invariant_family {
  std::vector<std::vector<int>> sets; // sorted by (size, point order)
  bool intersection_closed = true;
};

/// All invariant subsets by exhaustive search; |X| capped at 20.
inline invariant_family enumerate_invariant(const partial_system& s) {
  check_enumeration_cap(s);
  detail::iterates it(s);
  int n = s.size();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t v = 0; v < (1u << n); ++v)
    if (detail::invariant_with(it, n, v)) masks.push_back(v);
  invariant_family fam;
  // The family is closed under unions, so it is intersection-closed exactly
  // when the minimal member through each point belongs to it: any A * B is
  // then the union of those minimal members.
  for (int x = 0; x < n && fam.intersection_closed; ++x) {
    std::uint32_t minimal = (1u << n) - 1;
    for (std::uint32_t m : masks)
      if (m >> x & 1u) minimal &= m;
    fam.intersection_closed = std::binary_search(masks.begin(), masks.end(), minimal);
  }
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (std::uint32_t m : masks) fam.sets.push_back(detail::from_mask(m, n));
  return fam;
}

inline bool is_minimal(const partial_system& s) {
  const auto fam = enumerate_invariant(s);
  return fam.sets.size() <= 2; // only the empty set and X survive
}

struct lifted_set {
  std::vector<int> base;                       // V
  std::optional<std::vector<ext_point>> lifted; // enumerated when the extension is finite
};

/// Membership of an extension point in the lift of V: every entry lies in V.
inline bool lift_member(const std::vector<int>& v, const ext_point& p) {
  std::vector<int> entries = p.prefix;
  entries.insert(entries.end(), p.cycle.begin(), p.cycle.end());
  for (int x : entries)
    if (std::find(v.begin(), v.end(), x) == v.end()) return false;
  return true;
}

/// Lifts an invariant V to the extension.  The head projection of the lift
/// recovers V exactly; verified by a backward search inside V.
inline lifted_set lift_invariant(const partial_system& s, const std::vector<int>& v) {
  if (!is_invariant(s, v)) fail(errc::not_invariant, "set is not invariant");
  // every point of V carries an anti-orbit staying inside V: it either
  // reaches a global terminal or winds a periodic cycle contained in V
  std::vector<char> inv(s.size(), 0);
  for (int x : v) inv[x] = 1;
  std::vector<char> periodic(s.size(), 0);
  for (int x : s.periodic_points()) periodic[x] = 1;
  for (int start : v) {
    std::vector<char> seen(s.size(), 0);
    std::vector<int> stack{start};
    bool ok = false;
    while (!stack.empty() && !ok) {
      int x = stack.back();
      stack.pop_back();
      if (seen[x]) continue;
      seen[x] = 1;
      auto pre = s.preimage(x, 1);
      if (pre.empty()) ok = true;
      if (periodic[x]) {
        bool cycle_in_v = true;
        int cur = x;
        do {
          cycle_in_v &= static_cast<bool>(inv[cur]);
          cur = *s.alpha(cur);
        } while (cur != x);
        ok |= cycle_in_v;
      }
      for (int y : pre)
        if (inv[y] && !seen[y]) stack.push_back(y);
    }
    if (!ok) fail(errc::not_invariant, "lift does not project back onto V");
  }
  lifted_set out;
  out.base = v;
  if (classify_cardinality(s).kind == cardinality_kind::finite) {
    extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
    std::vector<ext_point> lifted;
    for (const auto& p : view.finite_paths)
      if (lift_member(v, p)) lifted.push_back(p);
    for (const auto& p : view.ep_points)
      if (lift_member(v, p)) lifted.push_back(p);
    out.lifted = std::move(lifted);
  }
  return out;
}

/// Builds the extension of an acyclic system as a partial system of its own,
/// with tilde-alpha as the map.  Point names are the path labels.
inline partial_system extension_as_system(const partial_system& s) {
  if (!s.classify().acyclic) fail(errc::has_periodic_points, "system has periodic points");
  extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
  std::vector<std::string> names;
  for (const auto& p : view.finite_paths) names.push_back(ext_point_label(s, p));
  std::vector<std::pair<std::string, std::string>> alpha;
  for (const auto& p : view.finite_paths)
    if (auto q = tilde_alpha(s, p))
      alpha.emplace_back(ext_point_label(s, p), ext_point_label(s, *q));
  return partial_system::validate(names, alpha);
}

/// Brute-force comparison of the invariant families of the system and of its
/// extension: V -> lift(V) must be an order-preserving bijection.
inline bool lattice_bijection_check(const partial_system& s) {
  if (!s.classify().acyclic) fail(errc::has_periodic_points, "system has periodic points");
  check_enumeration_cap(s);
  extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
  const auto& pts = view.finite_paths;
  partial_system ext = extension_as_system(s);
  if (ext.size() > invariance_enumeration_cap)
    fail(errc::too_large, "extension exceeds the subset-enumeration cap");

  const auto base_family = enumerate_invariant(s).sets;
  const auto ext_family = enumerate_invariant(ext).sets;
  if (base_family.size() != ext_family.size()) return false;

  // lift each invariant V and locate it in the extension family
  std::vector<std::vector<int>> lifted_as_indices;
  for (const auto& v : base_family) {
    std::vector<int> w;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (lift_member(v, pts[i])) w.push_back(static_cast<int>(i));
    if (std::find(ext_family.begin(), ext_family.end(), w) == ext_family.end()) return false;
    if (std::find(lifted_as_indices.begin(), lifted_as_indices.end(), w) !=
        lifted_as_indices.end())
      return false; // not injective
    lifted_as_indices.push_back(w);
  }
  // order preservation in both directions
  for (std::size_t i = 0; i < base_family.size(); ++i)
    for (std::size_t j = 0; j < base_family.size(); ++j) {
      bool base_le = std::includes(base_family[j].begin(), base_family[j].end(),
                                   base_family[i].begin(), base_family[i].end());
      bool ext_le = std::includes(lifted_as_indices[j].begin(), lifted_as_indices[j].end(),
                                  lifted_as_indices[i].begin(), lifted_as_indices[i].end());
      if (base_le != ext_le) return false;
    }
  return true;
}

/// The ideal-theoretic reformulation: with I the functions vanishing on V,
/// membership of a in I over Delta_{-n} must match membership of a∘alpha^n
/// over Delta_n, for every n and every indicator basis element.
inline bool delta_ideal_invariance(const partial_system& s, const std::vector<int>& v) {
  check_subset(s, v);
  std::vector<char> inv(s.size(), 0);
  for (int x : v) inv[x] = 1;
  detail::iterates it(s);
  for (int k = 0; k <= s.size(); ++k) {
    for (int y = 0; y < s.size(); ++y) {
      if (!it.img[k][y]) continue;
      bool in_ideal = !inv[y]; // indicator of y vanishes on V iff y outside V
      bool pulled_in_ideal = true;
      for (int x = 0; x < s.size(); ++x)
        if (inv[x] && it.dom[k][x] && it.powers[k][x] == y) pulled_in_ideal = false;
      if (in_ideal != pulled_in_ideal) return false;
    }
  }
  return true;
}

} // namespace pds
