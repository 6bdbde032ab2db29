#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace pds {

using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;

/// Operator norm: the largest singular value, through the top eigenvalue of
/// the Gram matrix.
inline double operator_norm(const cmatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<cmatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

/// Incremental complex row echelon basis; rank grows as vectors arrive.
/// Pivot tolerance fixed at 1e-10.
class span_basis {
public:
  explicit span_basis(double tol = 1e-10) : tol_(tol) {}

  /// Returns true when v was independent of the current span (and was added).
  bool add(cvector v) {
    for (const auto& [pivot, row] : rows_) v -= v(pivot) / row(pivot) * row;
    int pivot = -1;
    double best = tol_;
    for (int i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > best) {
        best = std::abs(v(i));
        pivot = i;
      }
    if (pivot < 0) return false;
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  bool contains(cvector v) const {
    for (const auto& [pivot, row] : rows_) v -= v(pivot) / row(pivot) * row;
    return v.lpNorm<Eigen::Infinity>() <= tol_;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

private:
  double tol_;
  std::vector<std::pair<int, cvector>> rows_;
};

inline cvector vectorize(const cmatrix& m) {
  return Eigen::Map<const cvector>(m.data(), m.size());
}

/// Dimension of the unital *-algebra generated by the given matrices:
/// span closure under two-sided multiplication by the generators (adjoints
/// included), iterated to a fixed point.
inline int generated_algebra_dim(const std::vector<cmatrix>& generators) {
  if (generators.empty()) return 0;
  auto dim = generators.front().rows();
  std::vector<cmatrix> gens = generators;
  for (const auto& g : generators) gens.push_back(g.adjoint());
  gens.push_back(cmatrix::Identity(dim, dim));

  span_basis basis;
  std::vector<cmatrix> members;
  auto absorb = [&](const cmatrix& m) {
    if (basis.add(vectorize(m))) {
      members.push_back(m);
      return true;
    }
    return false;
  };
  for (const auto& g : gens) absorb(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<cmatrix> snapshot = members;
    for (const auto& m : snapshot)
      for (const auto& g : gens) {
        grew |= absorb(m * g);
        grew |= absorb(g * m);
      }
  }
  return basis.rank();
}

} // namespace pds
