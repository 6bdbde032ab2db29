#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pds/errors.hpp"

namespace pds {

/// A finite partial dynamical system: an ordered point set X and a partial
/// self-map alpha defined on the subset dom_1 (the key set of the mapping).
/// Immutable after construction; all queries are pure.
class partial_system {
public:
  /// Checks the raw data and builds the system.  Every alpha key/value must
  /// name a point; point names must be pairwise distinct.
  static partial_system validate(std::vector<std::string> points,
                                 const std::vector<std::pair<std::string, std::string>>& alpha) {
    partial_system s;
    s.names_ = std::move(points);
    for (int i = 0; i < static_cast<int>(s.names_.size()); ++i) {
      if (s.names_[i].empty()) fail(errc::bad_input, "empty point name");
      if (!s.index_.emplace(s.names_[i], i).second)
        fail(errc::duplicate_point, "duplicate point: " + s.names_[i]);
    }
    s.alpha_.assign(s.names_.size(), -1);
    for (const auto& [from, to] : alpha) {
      int i = s.index(from);
      int j = s.index(to);
      if (s.alpha_[i] != -1) fail(errc::bad_input, "alpha defined twice at " + from);
      s.alpha_[i] = j;
    }
    return s;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(errc::unknown_point, "unknown point: " + name);
    return it->second;
  }

  bool has_point(const std::string& name) const { return index_.count(name) != 0; }

  /// alpha(x), or nullopt when x is outside dom_1.
  std::optional<int> alpha(int x) const {
    check_point(x);
    return alpha_[x] == -1 ? std::nullopt : std::optional<int>(alpha_[x]);
  }

  bool in_domain(int x) const {
    check_point(x);
    return alpha_[x] != -1;
  }

  /// The domain of alpha^n.  Decreasing in n; stabilizes by n = |X|.
  std::vector<int> domain_n(std::uint64_t n) const {
    std::vector<char> cur(names_.size(), 1);
    for (std::uint64_t k = 0; k < n && k <= static_cast<std::uint64_t>(size()); ++k) {
      std::vector<char> next(names_.size(), 0);
      bool changed = false;
      for (int x = 0; x < size(); ++x)
        if (alpha_[x] != -1 && cur[alpha_[x]]) next[x] = 1;
      for (int x = 0; x < size(); ++x) changed |= (next[x] != cur[x]);
      cur.swap(next);
      if (!changed) break;
    }
    return collect(cur);
  }

  /// The image alpha^n(domain_n), written Delta_{-n}.  Also decreasing.
  std::vector<int> image_n(std::uint64_t n) const {
    std::vector<char> cur(names_.size(), 1);
    for (std::uint64_t k = 0; k < n && k <= static_cast<std::uint64_t>(size()); ++k) {
      std::vector<char> next(names_.size(), 0);
      bool changed = false;
      for (int x = 0; x < size(); ++x)
        if (cur[x] && alpha_[x] != -1) next[alpha_[x]] = 1;
      for (int x = 0; x < size(); ++x) changed |= (next[x] != cur[x]);
      cur.swap(next);
      if (!changed) break;
    }
    return collect(cur);
  }

  /// alpha^n(x) when defined.  Large n is resolved through the orbit's cycle,
  /// so callers may pass any n.
  std::optional<int> apply_n(int x, std::uint64_t n) const {
    check_point(x);
    std::vector<int> seen_at(names_.size(), -1);
    int cur = x;
    std::uint64_t step = 0;
    while (step < n) {
      if (seen_at[cur] != -1) {
        std::uint64_t entry = seen_at[cur];
        std::uint64_t period = step - entry;
        std::uint64_t rem = (n - entry) % period;
        for (std::uint64_t i = 0; i < rem; ++i) cur = alpha_[cur];
        return cur;
      }
      seen_at[cur] = static_cast<int>(step);
      if (alpha_[cur] == -1) return std::nullopt;
      cur = alpha_[cur];
      ++step;
    }
    return cur;
  }

  /// alpha^{-k}(x) = { y in domain_k : alpha^k(y) = x }.
  std::vector<int> preimage(int x, std::uint64_t k) const {
    check_point(x);
    std::vector<int> out;
    for (int y = 0; y < size(); ++y)
      if (apply_n(y, k) == std::optional<int>(x)) out.push_back(y);
    return out;
  }

  /// F_n = { x in domain_n : alpha^n(x) = x }.
  std::vector<int> fixed_points(std::uint64_t n) const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (apply_n(x, n) == std::optional<int>(x)) out.push_back(x);
    return out;
  }

  /// Points lying on a cycle of alpha (periodic points of any period).
  std::vector<int> periodic_points() const {
    std::vector<char> per(names_.size(), 0);
    for (int x = 0; x < size(); ++x) {
      auto y = apply_n(x, static_cast<std::uint64_t>(size()));
      if (!y) continue;
      // after |X| steps the orbit sits on its cycle
      int c = *y;
      if (!per[c]) {
        per[c] = 1;
        for (int z = alpha_[c]; z != c; z = alpha_[z]) per[z] = 1;
      }
    }
    return collect(per);
  }

  /// Primitive period of a periodic point.
  int period_of(int x) const {
    check_point(x);
    int cur = alpha_[x] == -1 ? -1 : alpha_[x];
    int steps = 1;
    while (cur != -1 && cur != x && steps <= size()) {
      cur = alpha_[cur];
      ++steps;
    }
    if (cur != x) fail(errc::bad_input, name(x) + " is not periodic");
    return steps;
  }

  struct classification {
    bool surjective = false;
    bool injective = false;
    bool is_cycle = false;
    bool acyclic = false;
  };

  classification classify() const {
    classification c;
    c.surjective = static_cast<int>(image_n(1).size()) == size();
    c.injective = true;
    {
      std::vector<char> hit(names_.size(), 0);
      for (int x = 0; x < size(); ++x)
        if (alpha_[x] != -1) {
          if (hit[alpha_[x]]) c.injective = false;
          hit[alpha_[x]] = 1;
        }
    }
    c.acyclic = periodic_points().empty();
    // a cycle: alpha total, and the whole of X is one periodic orbit
    c.is_cycle = size() > 0;
    for (int x = 0; x < size(); ++x)
      if (alpha_[x] == -1) c.is_cycle = false;
    if (c.is_cycle) {
      int cur = 0;
      int steps = 0;
      do {
        cur = alpha_[cur];
        ++steps;
      } while (cur != 0 && steps <= size());
      c.is_cycle = (cur == 0 && steps == size());
    }
    return c;
  }

  std::vector<int> all_points() const {
    std::vector<int> out(names_.size());
    for (int i = 0; i < size(); ++i) out[i] = i;
    return out;
  }

  bool operator==(const partial_system& o) const {
    return names_ == o.names_ && alpha_ == o.alpha_;
  }

private:
  void check_point(int x) const {
    if (x < 0 || x >= size()) fail(errc::unknown_point, "point index out of range");
  }

  std::vector<int> collect(const std::vector<char>& flags) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (flags[i]) out.push_back(i);
    return out;
  }

  std::vector<std::string> names_;
  std::vector<int> alpha_; // -1 = outside dom_1
  std::map<std::string, int> index_;
};

inline std::vector<std::string> names_of(const partial_system& s, const std::vector<int>& pts) {
  std::vector<std::string> out;
  out.reserve(pts.size());
  for (int p : pts) out.push_back(s.name(p));
  return out;
}

} // namespace pds
