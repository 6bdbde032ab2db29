#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "pds/rng.hpp"
#include "pds/system.hpp"

namespace fixtures {

using pds::partial_system;

// Four points, two length-3 anti-orbit chains: x2 -> x1 -> x0 and y2 -> x1.
inline partial_system branching_chain() {
  return partial_system::validate({"x0", "x1", "x2", "y2"},
                                  {{"x1", "x0"}, {"x2", "x1"}, {"y2", "x1"}});
}

// Five points with the same reversible extension as branching_chain.
inline partial_system branching_chain_alt() {
  return partial_system::validate({"x0", "x1", "y1", "x2", "y2"},
                                  {{"x1", "x0"}, {"y1", "x0"}, {"x2", "x1"}, {"y2", "y1"}});
}

// Total map with a fixed point swallowing everything: x1 -> x0 <- x0.
inline partial_system loop_system() {
  return partial_system::validate({"x0", "x1"}, {{"x0", "x0"}, {"x1", "x0"}});
}

inline partial_system pure_cycle(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 0; i < n; ++i) alpha.emplace_back(names[i], names[(i + 1) % n]);
  return partial_system::validate(names, alpha);
}

// A cycle plus one extra point mapping into it.
inline partial_system cycle_with_entry(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 0; i < n; ++i) alpha.emplace_back(names[i], names[(i + 1) % n]);
  names.push_back("y");
  alpha.emplace_back("y", "x0");
  return partial_system::validate(names, alpha);
}

// Five points, two tails of different depth joining at x1.
inline partial_system five_point_tails() {
  return partial_system::validate(
      {"x0", "x1", "x2", "y2", "y3"},
      {{"x1", "x0"}, {"x2", "x1"}, {"y2", "x1"}, {"y3", "y2"}});
}

// The least system whose covariance algebra is the direct sum of full matrix
// blocks of the given sizes (all sizes >= 2).
inline partial_system block_family(const std::vector<int>& sizes) {
  int largest = 0;
  for (int m : sizes) largest = std::max(largest, m);
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int m = 1; m <= largest - 1; ++m) names.push_back("x" + std::to_string(m));
  for (int m = 2; m <= largest - 1; ++m)
    alpha.emplace_back("x" + std::to_string(m), "x" + std::to_string(m - 1));
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    std::string y = "y" + std::to_string(sizes[b]);
    if (std::count(sizes.begin(), sizes.begin() + static_cast<long>(b), sizes[b]) > 0)
      y += "_" + std::to_string(b);
    names.push_back(y);
    alpha.emplace_back(y, "x" + std::to_string(sizes[b] - 1));
  }
  return partial_system::validate(names, alpha);
}

inline partial_system injective_chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i < n; ++i) alpha.emplace_back(names[i], names[i - 1]);
  return partial_system::validate(names, alpha);
}

inline partial_system single_point() { return partial_system::validate({"x0"}, {}); }

inline partial_system empty_alpha(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return partial_system::validate(names, {});
}

inline partial_system random_system(pds::rng& gen, int max_points) {
  int n = gen.range(1, max_points);
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    if (gen.chance(0.75)) alpha.emplace_back(names[i], names[gen.range(0, n - 1)]);
  return partial_system::validate(names, alpha);
}

// alpha only maps to smaller indices, so there are no periodic points.
inline partial_system random_acyclic_system(pds::rng& gen, int max_points) {
  int n = gen.range(1, max_points);
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> alpha;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 1; i < n; ++i)
    if (gen.chance(0.8)) alpha.emplace_back(names[i], names[gen.range(0, i - 1)]);
  return partial_system::validate(names, alpha);
}

inline std::vector<int> indices(const partial_system& s, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(s.index(n));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace fixtures
