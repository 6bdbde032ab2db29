#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pds/errors.hpp"
#include "pds/graph.hpp"

namespace pds {

/// 0/1 adjacency matrix with no identically-zero row, defining one- and
/// two-sided Markov subshifts.  Symbols are reported 1-based; symbol 0 is
/// reserved for the augmentation.
struct adj_matrix {
  int n = 0;
  std::vector<int> entries; // row-major

  int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
  int& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const adj_matrix&) const = default;
};

inline adj_matrix validate_matrix(const std::vector<std::vector<int>>& raw) {
  adj_matrix a;
  a.n = static_cast<int>(raw.size());
  if (a.n == 0) fail(errc::bad_input, "empty matrix");
  a.entries.reserve(static_cast<std::size_t>(a.n) * a.n);
  for (const auto& row : raw) {
    if (static_cast<int>(row.size()) != a.n) fail(errc::not_square, "matrix is not square");
    bool nonzero = false;
    for (int v : row) {
      if (v != 0 && v != 1) fail(errc::bad_entry, "entries must be 0 or 1");
      nonzero |= (v == 1);
      a.entries.push_back(v);
    }
    if (!nonzero) fail(errc::zero_row, "matrix has a zero row");
  }
  return a;
}

/// The augmented matrix A' on symbols 0..n: A'(i,j) = A(i,j) for i,j >= 1,
/// A'(0,0) = 1, A'(0,j) = 1 iff column j of A is zero, all else 0.  The
/// two-sided shift of A' restricted to sequences with nonzero coordinate 0
/// realizes the reversible extension of the one-sided shift of A.
inline adj_matrix augment(const adj_matrix& a) {
  adj_matrix b;
  b.n = a.n + 1;
  b.entries.assign(static_cast<std::size_t>(b.n) * b.n, 0);
  b.at(0, 0) = 1;
  for (int j = 1; j <= a.n; ++j) {
    bool zero_col = true;
    for (int i = 1; i <= a.n; ++i) zero_col &= (a.at(i - 1, j - 1) == 0);
    if (zero_col) b.at(0, j) = 1;
  }
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j) b.at(i, j) = a.at(i - 1, j - 1);
  return b;
}

inline digraph to_digraph(const adj_matrix& a) {
  digraph g(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      if (a.at(i, j) == 1) g.add_edge(i, j);
  return g;
}

namespace detail {
// words over 0-based symbols
inline std::vector<std::vector<int>> admissible_words(const adj_matrix& a, int len) {
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < a.n; ++i) cur.push_back({i});
  for (int step = 1; step < len; ++step) {
    std::vector<std::vector<int>> next;
    for (const auto& w : cur)
      for (int j = 0; j < a.n; ++j)
        if (a.at(w.back(), j) == 1) {
          auto ext = w;
          ext.push_back(j);
          next.push_back(std::move(ext));
        }
    cur.swap(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}
} // namespace detail

/// Admissible words of length L, 1-based symbols.
inline std::vector<std::vector<int>> words(const adj_matrix& a, int len) {
  if (len < 1) fail(errc::bad_input, "word length must be positive");
  auto ws = detail::admissible_words(a, len);
  for (auto& w : ws)
    for (int& sym : w) ++sym;
  return ws;
}

/// Word-level shadow of the conjugacy between the extension of the one-sided
/// shift and the restricted two-sided shift of aprime: (a) aprime-words free
/// of symbol 0 coincide with a-words, and (b) at every 0 -> s transition the
/// a-column of s is zero.  Exposed against an arbitrary candidate matrix so
/// corrupted augmentations can be rejected.
inline bool embed_check_against(const adj_matrix& a, const adj_matrix& aprime, int len) {
  if (len < 2) fail(errc::bad_input, "embed check needs length >= 2");
  if (aprime.n != a.n + 1) return false;
  std::vector<std::vector<int>> plain;
  for (const auto& w : detail::admissible_words(aprime, len)) {
    bool has_zero = std::find(w.begin(), w.end(), 0) != w.end();
    if (!has_zero) {
      plain.push_back(w);
      continue;
    }
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k] != 0 && w[k + 1] == 0) return false; // zeros must form a prefix block
      if (w[k] != 0 || w[k + 1] == 0) continue;
      int s = w[k + 1];
      for (int i = 1; i <= a.n; ++i)
        if (a.at(i - 1, s - 1) == 1) return false; // entered a symbol with a nonzero column
    }
  }
  for (auto& w : plain)
    for (int& sym : w) --sym; // back to 0-based a-symbols
  return plain == detail::admissible_words(a, len);
}

inline bool embed_check(const adj_matrix& a, int len) {
  return embed_check_against(a, augment(a), len);
}

struct markov_freedom_report {
  bool free = false;
  std::vector<std::vector<int>> witnesses; // circuits without exit or entry, 1-based
};

/// The one-sided subshift acts topologically freely iff every circuit of the
/// transition graph has an exit or an entry.
inline markov_freedom_report markov_freedom(const adj_matrix& a) {
  digraph g = to_digraph(a);
  markov_freedom_report report;
  report.free = true;
  for (const auto& cyc : simple_cycles(g)) {
    if (cycle_has_exit(g, cyc) || cycle_has_entry(g, cyc)) continue;
    report.free = false;
    std::vector<int> sym = cyc;
    for (int& v : sym) ++v;
    report.witnesses.push_back(std::move(sym));
  }
  return report;
}

} // namespace pds
