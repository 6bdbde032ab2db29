#include <doctest.h>

#include "fixtures.hpp"
#include "pds/representation.hpp"

using namespace pds;
using namespace fixtures;

namespace {

ext_point fp(const partial_system& s, const std::vector<std::string>& names) {
  std::vector<int> entries;
  for (const auto& n : names) entries.push_back(s.index(n));
  return make_finite(entries);
}

// two-sided ideal generated by a matrix inside the span-closed algebra of
// the generators; used as the brute-force oracle for the ideal lattice
int generated_ideal_dim(const std::vector<cmatrix>& algebra_generators, const cmatrix& seed) {
  auto dim = seed.rows();
  std::vector<cmatrix> gens = algebra_generators;
  for (const auto& g : algebra_generators) gens.push_back(g.adjoint());
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
  absorb(seed);
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

} // namespace

TEST_CASE("canonical representation of the branching chain") {
  partial_system s = branching_chain();
  cov_rep r = canonical_rep(s);
  REQUIRE(r.dim() == 6);
  CHECK(rep_invariants_ok(r));
  CHECK(rep_faithful(r));

  // the shift lowers each chain: e_(x0,x1,x2) -> e_(x1,x2) -> e_(x2) -> 0
  auto col = [&](const std::vector<std::string>& names) { return *r.index_of(fp(s, names)); };
  cmatrix expected = cmatrix::Zero(6, 6);
  expected(col({"x1", "x2"}), col({"x0", "x1", "x2"})) = 1.0;
  expected(col({"x2"}), col({"x1", "x2"})) = 1.0;
  expected(col({"x1", "y2"}), col({"x0", "x1", "y2"})) = 1.0;
  expected(col({"y2"}), col({"x1", "y2"})) = 1.0;
  CHECK((r.U - expected).norm() < 1e-14);

  // covariance on a generic function, not only on indicators
  rng gen(101);
  func<complexd> a = random_func(s, gen);
  CHECK((r.U * r.pi(a) * r.U.adjoint() - r.pi(endo_delta(s, a))).norm() < 1e-12);
}

TEST_CASE("degenerate and small representations") {
  cov_rep one = canonical_rep(single_point());
  CHECK(one.dim() == 1);
  CHECK(one.U.norm() == 0.0);
  CHECK(rep_invariants_ok(one));

  cov_rep family = canonical_rep(block_family({2, 3}));
  CHECK(family.dim() == 5);
  CHECK(rep_invariants_ok(family));

  CHECK_THROWS_AS(canonical_rep(pure_cycle(3)), error);
  CHECK_THROWS_AS(canonical_rep(loop_system()), error);
}

TEST_CASE("a corrupted shift fails the structural invariants") {
  cov_rep r = canonical_rep(branching_chain());
  r.U(0, 0) += 0.5;
  CHECK(!rep_invariants_ok(r));
  CHECK_THROWS_AS(star_property_check(r, 10, 0, 1e-9), error);
}

TEST_CASE("shifted copies of the base algebra span the diagonal") {
  partial_system s = branching_chain();
  CHECK(coefficient_diagonal_check(canonical_rep(s), s));
  partial_system p = single_point();
  CHECK(coefficient_diagonal_check(canonical_rep(p), p));
  partial_system f = block_family({2, 3});
  CHECK(coefficient_diagonal_check(canonical_rep(f), f));
}

TEST_CASE("matrix form of the evaluation morphism") {
  partial_system s = branching_chain();
  cov_rep r = canonical_rep(s);
  rng gen(103);
  for (int trial = 0; trial < 50; ++trial) {
    seq_element<complexd> a = random_seq(s, gen, 4);
    std::vector<complexd> phi_values;
    for (const auto& p : r.basis) phi_values.push_back(phi_eval(s, a, p));
    CHECK((represent_seq(r, a) - r.pibar(phi_values)).norm() < 1e-12);
  }
}

TEST_CASE("chain decomposition") {
  CHECK(decompose(branching_chain()) == std::vector<int>{3, 3});
  CHECK(decompose(block_family({2, 3})) == std::vector<int>{2, 3});
  CHECK(decompose(empty_alpha(4)) == std::vector<int>{1, 1, 1, 1});
  CHECK_THROWS_AS(decompose(pure_cycle(2)), error);
}

TEST_CASE("generated dimension equals the block formula") {
  CHECK(generated_dim_check(canonical_rep(branching_chain()))); // 9 + 9
  CHECK(generated_dim_check(canonical_rep(block_family({2, 3})))); // 4 + 9
  CHECK(generated_dim_check(canonical_rep(empty_alpha(3))));
  std::vector<cmatrix> gens;
  cov_rep r = canonical_rep(branching_chain());
  for (int x = 0; x < 4; ++x)
    gens.push_back(r.pi(func<complexd>::indicator(r.sys, {x})));
  gens.push_back(r.U);
  CHECK(generated_algebra_dim(gens) == 18);
}

TEST_CASE("ideal lattice of the block family") {
  partial_system s = block_family({2, 3});
  auto entries = ideal_lattice(s);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].invariant_set.empty());
  CHECK(entries[0].dim == 13);
  CHECK(entries[1].invariant_set == indices(s, {"x1", "x2", "y3"}));
  CHECK(entries[1].dim == 4); // only the short chain stays outside the lift
  CHECK(entries[2].invariant_set == s.all_points());
  CHECK(entries[2].dim == 0);

  // brute force: the two-sided ideal generated by the vanishing functions
  cov_rep r = canonical_rep(s);
  std::vector<cmatrix> algebra;
  for (int x = 0; x < s.size(); ++x)
    algebra.push_back(r.pi(func<complexd>::indicator(s, {x})));
  algebra.push_back(r.U);
  for (const auto& e : entries) {
    std::vector<int> complement;
    for (int x = 0; x < s.size(); ++x)
      if (std::find(e.invariant_set.begin(), e.invariant_set.end(), x) ==
          e.invariant_set.end())
        complement.push_back(x);
    cmatrix seed = r.pi(func<complexd>::indicator(s, complement));
    if (complement.empty()) {
      CHECK(e.dim == 0);
      continue;
    }
    CHECK(generated_ideal_dim(algebra, seed) == static_cast<int>(e.dim));
  }
}

TEST_CASE("ideal lattice of the branching chain against block sub-sums") {
  partial_system s = branching_chain();
  auto entries = ideal_lattice(s);
  REQUIRE(entries.size() == 4);
  std::vector<std::size_t> dims;
  for (const auto& e : entries) dims.push_back(e.dim);
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{0, 9, 9, 18});
}

TEST_CASE("simplicity verdicts") {
  for (int n = 1; n <= 4; ++n) {
    auto v = simplicity_verdict(pure_cycle(n));
    CHECK(!v.simple);
    CHECK(v.reason == simplicity_reason::cycle);
  }
  auto bc = simplicity_verdict(branching_chain());
  CHECK(!bc.simple);
  CHECK(bc.reason == simplicity_reason::not_minimal);
  REQUIRE(bc.witness);
  CHECK(is_invariant(branching_chain(), *bc.witness));

  CHECK(simplicity_verdict(single_point()).simple);
  auto two = simplicity_verdict(injective_chain(2));
  CHECK(two.simple);
  CHECK(two.reason == simplicity_reason::minimal_not_cycle);
}

TEST_CASE("structural invariants hold across random acyclic systems") {
  rng gen(107);
  for (int trial = 0; trial < 40; ++trial) {
    partial_system s = random_acyclic_system(gen, 5);
    cov_rep r = canonical_rep(s);
    CHECK(rep_invariants_ok(r));
    CHECK(rep_faithful(r));
    CHECK(coefficient_diagonal_check(r, s));
    int total = 0;
    for (int m : decompose(s)) total += m;
    CHECK(total == r.dim()); // chain lengths partition the extension
  }
}

TEST_CASE("norm inequality for the zero mode") {
  CHECK(star_property_check(canonical_rep(branching_chain()), 200, 0, 1e-9));
  CHECK(star_property_check(canonical_rep(single_point()), 50, 1, 1e-9));
  CHECK(star_property_check(canonical_rep(block_family({2, 3})), 100, 2, 1e-9));
}

TEST_CASE("norms agree across faithful covariant representations") {
  partial_system s = branching_chain();
  cov_rep r1 = canonical_rep(s);

  std::vector<ext_point> reversed(r1.basis.rbegin(), r1.basis.rend());
  cov_rep r2 = rep_from_basis(s, reversed);
  CHECK(rep_invariants_ok(r2));
  CHECK(covariant_pair_transport(s, r1, r2, 40, 7, 1e-8));

  // chain-by-chain assembly of the same representation
  std::vector<ext_point> by_chain{fp(s, {"x0", "x1", "x2"}), fp(s, {"x1", "x2"}), fp(s, {"x2"}),
                                  fp(s, {"x0", "x1", "y2"}), fp(s, {"x1", "y2"}), fp(s, {"y2"})};
  cov_rep r3 = rep_from_basis(s, by_chain);
  CHECK(covariant_pair_transport(s, r1, r3, 40, 8, 1e-8));

  // dropping a chain keeps the invariants but loses faithfulness
  std::vector<ext_point> one_chain{fp(s, {"x0", "x1", "x2"}), fp(s, {"x1", "x2"}), fp(s, {"x2"})};
  cov_rep r4 = rep_from_basis(s, one_chain);
  CHECK(rep_invariants_ok(r4));
  CHECK(!rep_faithful(r4));
  CHECK_THROWS_AS(covariant_pair_transport(s, r1, r4, 10, 9, 1e-8), error);

  CHECK_THROWS_AS(
      covariant_pair_transport(pure_cycle(3), r1, r2, 10, 10, 1e-8), error);
}
