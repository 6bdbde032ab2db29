#pragma once

#include <cstdint>

#include "pds/coeff_algebra.hpp"
#include "pds/rng.hpp"

namespace pds {

struct coeff_selftest_report {
  bool associativity = true;
  bool commutativity = true;
  bool involution = true;
  bool phi_multiplicative = true;
  bool delta_formula = true;
  bool delta_star_formula = true;

  bool passed() const {
    return associativity && commutativity && involution && phi_multiplicative && delta_formula &&
           delta_star_formula;
  }
};

/// Randomized identity suite for the sequence algebra on one system: ring
/// axioms of the convolution product, multiplicativity of the evaluation
/// morphism, and agreement of the sequence-level endomorphisms with
/// composition against the extension shift.
inline coeff_selftest_report coeff_selftest(const partial_system& s, int samples,
                                            std::uint64_t seed, double tol) {
  rng gen(seed);
  coeff_selftest_report report;
  const auto family = spanning_family(s);
  const std::size_t max_len = static_cast<std::size_t>(s.size()) + 2;
  for (int i = 0; i < samples; ++i) {
    seq_element<complexd> a = random_seq(s, gen, max_len);
    seq_element<complexd> b = random_seq(s, gen, max_len);
    seq_element<complexd> c = random_seq(s, gen, max_len);

    seq_element<complexd> ab = seq_mul(s, a, b);
    report.associativity &= raw_equal(s, seq_mul(s, ab, c), seq_mul(s, a, seq_mul(s, b, c)), tol);
    report.commutativity &= raw_equal(s, ab, seq_mul(s, b, a), tol);
    report.involution &=
        raw_equal(s, seq_star(s, ab), seq_mul(s, seq_star(s, b), seq_star(s, a)), tol);

    for (const auto& p : family) {
      complexd lhs = phi_eval(s, ab, p);
      complexd rhs = phi_eval(s, a, p) * phi_eval(s, b, p);
      report.phi_multiplicative &= std::abs(lhs - rhs) <= tol;
    }

    seq_element<complexd> da = delta_tilde_alg(s, a);
    seq_element<complexd> dsa = delta_star_alg(s, a);
    for (const auto& p : family) {
      auto fwd = tilde_alpha(s, p);
      complexd want_d = fwd ? phi_eval(s, a, *fwd) : complexd{0.0, 0.0};
      report.delta_formula &= std::abs(phi_eval(s, da, p) - want_d) <= tol;
      auto bwd = tilde_alpha_inv(s, p);
      complexd want_ds = bwd ? phi_eval(s, a, *bwd) : complexd{0.0, 0.0};
      report.delta_star_formula &= std::abs(phi_eval(s, dsa, p) - want_ds) <= tol;
    }
  }
  return report;
}

} // namespace pds
