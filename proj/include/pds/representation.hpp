#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "pds/coeff_algebra.hpp"
#include "pds/extension.hpp"
#include "pds/freedom.hpp"
#include "pds/invariance.hpp"
#include "pds/linalg.hpp"
#include "pds/rng.hpp"
#include "pds/system.hpp"

namespace pds {

constexpr int representation_dimension_cap = 64;
constexpr int generated_dim_cap = 24;

/// A concrete covariant representation on a basis indexed by extension
/// points: pi acts diagonally through the head projection and U is the
/// backward shift e_p -> e_{tilde_alpha^{-1}(p)} (zero on one-entry paths),
/// so that U pi(a) U* = pi(delta(a)), UU* = diag over dom~_1 and U*U = diag
/// over dom~_{-1}.
struct cov_rep {
  partial_system sys;
  std::vector<ext_point> basis;
  cmatrix U;

  int dim() const { return static_cast<int>(basis.size()); }

  std::optional<int> index_of(const ext_point& p) const {
    auto it = std::find(basis.begin(), basis.end(), p);
    if (it == basis.end()) return std::nullopt;
    return static_cast<int>(it - basis.begin());
  }

  cmatrix pi(const func<complexd>& a) const {
    cmatrix m = cmatrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m(i, i) = a.values[basis[i].head()];
    return m;
  }

  cmatrix pibar(const std::vector<complexd>& values_on_basis) const {
    cmatrix m = cmatrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m(i, i) = values_on_basis[i];
    return m;
  }
};

/// Builds the representation over an explicit list of extension points; the
/// shift goes to zero wherever the image point is not part of the basis.
inline cov_rep rep_from_basis(const partial_system& s, std::vector<ext_point> basis) {
  cov_rep r{s, std::move(basis), {}};
  for (const auto& p : r.basis) validate_ext_point(s, p);
  for (std::size_t i = 0; i < r.basis.size(); ++i)
    for (std::size_t j = i + 1; j < r.basis.size(); ++j)
      if (r.basis[i] == r.basis[j]) fail(errc::invalid_rep, "duplicate basis point");
  r.U = cmatrix::Zero(r.dim(), r.dim());
  for (int col = 0; col < r.dim(); ++col) {
    auto q = tilde_alpha_inv(s, r.basis[col]);
    if (!q) continue;
    if (auto row = r.index_of(*q)) r.U(*row, col) = 1.0;
  }
  return r;
}

/// The canonical faithful representation of an acyclic system: basis is the
/// full enumerated extension.
inline cov_rep canonical_rep(const partial_system& s, int cap = representation_dimension_cap) {
  if (!s.classify().acyclic) fail(errc::has_periodic_points, "system has periodic points");
  extension_view view = build_extension(s, static_cast<std::size_t>(s.size()) + 1);
  if (static_cast<int>(view.finite_paths.size()) > cap)
    fail(errc::too_large, "extension exceeds the representation dimension cap");
  return rep_from_basis(s, view.finite_paths);
}

/// Exact structural invariants of a covariant representation: U is a partial
/// isometry with the prescribed range/support projections and implements the
/// endomorphism on the indicator basis.
inline bool rep_invariants_ok(const cov_rep& r, double tol = 1e-9) {
  const auto& s = r.sys;
  cmatrix uu = r.U * r.U.adjoint();
  cmatrix uu_star = r.U.adjoint() * r.U;
  if ((r.U * uu_star - r.U).norm() > tol) return false;
  cmatrix dom1 = cmatrix::Zero(r.dim(), r.dim());
  cmatrix img1 = cmatrix::Zero(r.dim(), r.dim());
  for (int i = 0; i < r.dim(); ++i) {
    if (s.in_domain(r.basis[i].head())) dom1(i, i) = 1.0;
    if (r.basis[i].entry(1)) img1(i, i) = 1.0;
  }
  if ((uu - dom1).norm() > tol) return false;
  if ((uu_star - img1).norm() > tol) return false;
  for (int x = 0; x < s.size(); ++x) {
    auto e = func<complexd>::indicator(s, {x});
    if ((r.U * r.pi(e) * r.U.adjoint() - r.pi(endo_delta(s, e))).norm() > tol) return false;
  }
  return true;
}

inline bool rep_faithful(const cov_rep& r) {
  std::vector<char> covered(r.sys.size(), 0);
  for (const auto& p : r.basis) covered[p.head()] = 1;
  return std::find(covered.begin(), covered.end(), 0) == covered.end();
}

/// Span of { U*^n pi(a) U^n } over the indicator basis of A must exhaust the
/// diagonal algebra of the representation space.
inline bool coefficient_diagonal_check(const cov_rep& r, const partial_system& s) {
  span_basis basis;
  for (int n = 0; n <= r.dim(); ++n)
    for (int x = 0; x < s.size(); ++x) {
      cvector diag = cvector::Zero(r.dim());
      for (int i = 0; i < r.dim(); ++i)
        if (r.basis[i].entry(n) == std::optional<int>(x)) diag(i) = 1.0;
      basis.add(diag);
    }
  return basis.rank() == r.dim();
}

/// Matrix side of the phi evaluation: sum_n U*^n pi(a_n) U^n.
inline cmatrix represent_seq(const cov_rep& r, const seq_element<complexd>& a) {
  cmatrix total = cmatrix::Zero(r.dim(), r.dim());
  cmatrix upow = cmatrix::Identity(r.dim(), r.dim());
  for (std::size_t n = 0; n < a.terms.size(); ++n) {
    if (n > 0) upow = upow * r.U;
    total += upow.adjoint() * r.pi(a.terms[n]) * upow;
  }
  return total;
}

struct chain {
  int terminal = 0; // point without preimage
  int length = 0;   // longest anti-orbit ending there

  bool operator==(const chain&) const = default;
};

/// The orbits of the extension under the shift, one per terminal, for an
/// acyclic system.
inline std::vector<chain> alpha_chains(const partial_system& s) {
  if (!s.classify().acyclic) fail(errc::has_periodic_points, "system has periodic points");
  std::vector<chain> out;
  for (int t = 0; t < s.size(); ++t) {
    if (!s.preimage(t, 1).empty()) continue;
    int len = 1;
    int cur = t;
    while (auto next = s.alpha(cur)) {
      cur = *next;
      ++len;
    }
    out.push_back({t, len});
  }
  return out;
}

/// Multiset of chain lengths: the covariance algebra is the direct sum of
/// full matrix blocks of these sizes.
inline std::vector<int> decompose(const partial_system& s) {
  std::vector<int> lengths;
  for (const auto& c : alpha_chains(s)) lengths.push_back(c.length);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

/// Dimension of the algebra generated by pi(A) and U equals the sum of the
/// squared block sizes.
inline bool generated_dim_check(const cov_rep& r) {
  if (r.dim() > generated_dim_cap) fail(errc::too_large, "span closure dimension cap exceeded");
  std::vector<cmatrix> gens;
  for (int x = 0; x < r.sys.size(); ++x)
    gens.push_back(r.pi(func<complexd>::indicator(r.sys, {x})));
  gens.push_back(r.U);
  int expected = 0;
  for (int m : decompose(r.sys)) expected += m * m;
  return generated_algebra_dim(gens) == expected;
}

struct ideal_entry {
  std::vector<int> invariant_set;
  std::vector<int> blocks; // indices into alpha_chains(s)
  std::size_t dim = 0;     // sum of squared block sizes

  bool operator==(const ideal_entry&) const = default;
};

/// The ideal attached to an invariant set V: the matrix blocks of the chains
/// whose points are not all inside V.  Anti-monotone and injective over the
/// invariant family.
inline std::vector<ideal_entry> ideal_lattice(const partial_system& s) {
  const auto chains = alpha_chains(s);
  const auto family = enumerate_invariant(s);
  std::vector<ideal_entry> out;
  for (const auto& v : family.sets) {
    ideal_entry entry;
    entry.invariant_set = v;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      bool inside_v = true;
      int cur = chains[c].terminal;
      for (int step = 0; step < chains[c].length; ++step) {
        inside_v &= std::find(v.begin(), v.end(), cur) != v.end();
        if (auto next = s.alpha(cur)) cur = *next;
      }
      if (!inside_v) {
        entry.blocks.push_back(static_cast<int>(c));
        entry.dim += static_cast<std::size_t>(chains[c].length) * chains[c].length;
      }
    }
    out.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i != j && out[i].blocks == out[j].blocks)
        fail(errc::bad_input, "ideal map failed to be injective");
      bool v_le = std::includes(out[j].invariant_set.begin(), out[j].invariant_set.end(),
                                out[i].invariant_set.begin(), out[i].invariant_set.end());
      bool ideal_ge = std::includes(out[i].blocks.begin(), out[i].blocks.end(),
                                    out[j].blocks.begin(), out[j].blocks.end());
      if (v_le && !ideal_ge) fail(errc::bad_input, "ideal map failed to be anti-monotone");
    }
  return out;
}

enum class simplicity_reason { minimal_not_cycle, cycle, not_minimal };

struct simplicity_report {
  bool simple = false;
  simplicity_reason reason = simplicity_reason::not_minimal;
  std::optional<std::vector<int>> witness; // a nontrivial invariant set

  bool operator==(const simplicity_report&) const = default;
};

inline simplicity_report simplicity_verdict(const partial_system& s) {
  simplicity_report report;
  if (s.classify().is_cycle) {
    report.simple = false;
    report.reason = simplicity_reason::cycle;
    return report;
  }
  const auto family = enumerate_invariant(s);
  if (family.sets.size() <= 2) {
    report.simple = true;
    report.reason = simplicity_reason::minimal_not_cycle;
    return report;
  }
  report.simple = false;
  report.reason = simplicity_reason::not_minimal;
  for (const auto& v : family.sets)
    if (!v.empty() && static_cast<int>(v.size()) != s.size()) {
      report.witness = v;
      break;
    }
  return report;
}

/// Sampled check of the norm inequality bounding the zero-mode block of a
/// finite sum sum_n ( sum_k U*^k pi(a_k^(n)) U^k ) U^n by the whole sum.
inline bool star_property_check(const cov_rep& r, int samples, std::uint64_t seed, double tol) {
  if (!rep_invariants_ok(r)) fail(errc::invalid_rep, "representation invariants violated");
  rng gen(seed);
  int dim = r.dim();
  std::vector<cmatrix> upow{cmatrix::Identity(dim, dim)};
  for (int k = 1; k <= dim; ++k) upow.push_back(upow.back() * r.U);
  for (int sample = 0; sample < samples; ++sample) {
    int m_max = gen.range(0, dim);
    int n_max = gen.range(0, dim);
    auto coefficient_block = [&]() {
      cmatrix block = cmatrix::Zero(dim, dim);
      for (int k = 0; k <= m_max; ++k)
        block += upow[k].adjoint() * r.pi(random_func(r.sys, gen)) * upow[k];
      return block;
    };
    cmatrix zero_mode;
    cmatrix whole = cmatrix::Zero(dim, dim);
    for (int n = -n_max; n <= n_max; ++n) {
      cmatrix block = coefficient_block();
      if (n == 0) zero_mode = block;
      cmatrix shift = n >= 0 ? upow[n] : cmatrix(upow[-n].adjoint());
      whole += block * shift;
    }
    if (operator_norm(zero_mode) > operator_norm(whole) + tol) return false;
  }
  return true;
}

/// Abstract *-polynomial in the generators, evaluated per representation.
struct rep_polynomial {
  struct factor {
    enum class kind { mult, shift, shift_adj } k = kind::mult;
    func<complexd> a; // used when k == mult
  };
  struct term {
    complexd coefficient;
    std::vector<factor> word;
  };
  std::vector<term> terms;

  cmatrix evaluate(const cov_rep& r) const {
    cmatrix total = cmatrix::Zero(r.dim(), r.dim());
    for (const auto& t : terms) {
      cmatrix w = cmatrix::Identity(r.dim(), r.dim());
      for (const auto& f : t.word) {
        switch (f.k) {
          case factor::kind::mult: w = w * r.pi(f.a); break;
          case factor::kind::shift: w = w * r.U; break;
          case factor::kind::shift_adj: w = w * r.U.adjoint(); break;
        }
      }
      total += t.coefficient * w;
    }
    return total;
  }
};

inline rep_polynomial random_polynomial(const partial_system& s, rng& gen) {
  rep_polynomial poly;
  int terms = gen.range(1, 4);
  for (int t = 0; t < terms; ++t) {
    rep_polynomial::term term;
    term.coefficient = gen.complex_box();
    int len = gen.range(1, 5);
    for (int i = 0; i < len; ++i) {
      rep_polynomial::factor f;
      switch (gen.range(0, 2)) {
        case 0: f.k = rep_polynomial::factor::kind::mult; f.a = random_func(s, gen); break;
        case 1: f.k = rep_polynomial::factor::kind::shift; break;
        default: f.k = rep_polynomial::factor::kind::shift_adj; break;
      }
      term.word.push_back(std::move(f));
    }
    poly.terms.push_back(std::move(term));
  }
  return poly;
}

/// Norm agreement of random *-polynomials under two covariant faithful
/// representations of a topologically free system.
inline bool covariant_pair_transport(const partial_system& s, const cov_rep& r1,
                                     const cov_rep& r2, int samples, std::uint64_t seed,
                                     double tol) {
  if (!is_topologically_free(s).free)
    fail(errc::not_topologically_free, "system is not topologically free");
  for (const cov_rep* r : {&r1, &r2}) {
    if (!(r->sys == s)) fail(errc::invalid_rep, "representation belongs to another system");
    if (!rep_invariants_ok(*r)) fail(errc::invalid_rep, "representation invariants violated");
    if (!rep_faithful(*r)) fail(errc::invalid_rep, "representation is not faithful");
  }
  rng gen(seed);
  for (int sample = 0; sample < samples; ++sample) {
    rep_polynomial poly = random_polynomial(s, gen);
    double n1 = operator_norm(poly.evaluate(r1));
    double n2 = operator_norm(poly.evaluate(r2));
    if (std::abs(n1 - n2) > tol) return false;
  }
  return true;
}

} // namespace pds
