#pragma once

#include <cstdint>
#include <vector>

#include "pds/extension.hpp"
#include "pds/rng.hpp"
#include "pds/scalar.hpp"
#include "pds/system.hpp"

namespace pds {

/// A scalar-valued function on X (an element of the base algebra).
template <typename K>
struct func {
  std::vector<K> values;

  static func zero(const partial_system& s) {
    return func{std::vector<K>(s.size(), scalar_traits<K>::zero())};
  }
  static func unit(const partial_system& s) {
    return func{std::vector<K>(s.size(), scalar_traits<K>::one())};
  }
  static func indicator(const partial_system& s, const std::vector<int>& set) {
    func f = zero(s);
    for (int x : set) f.values[x] = scalar_traits<K>::one();
    return f;
  }

  K operator()(int x) const { return values[x]; }

  friend func operator+(const func& a, const func& b) {
    func out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = out.values[i] + b.values[i];
    return out;
  }
  friend func operator*(const func& a, const func& b) {
    func out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = out.values[i] * b.values[i];
    return out;
  }

  bool operator==(const func&) const = default;
};

/// delta(a) = a after alpha on dom_1, zero elsewhere: the endomorphism of the
/// base algebra attached to the partial map.
template <typename K>
func<K> endo_delta(const partial_system& s, const func<K>& a) {
  func<K> out = func<K>::zero(s);
  for (int x = 0; x < s.size(); ++x)
    if (auto y = s.alpha(x)) out.values[x] = a.values[*y];
  return out;
}

template <typename K>
func<K> endo_delta_n(const partial_system& s, const func<K>& a, std::uint64_t n) {
  func<K> out = a;
  for (std::uint64_t i = 0; i < n; ++i) out = endo_delta(s, out);
  return out;
}

/// chi of Delta_n, which is delta^n applied to the unit.
template <typename K>
func<K> domain_indicator(const partial_system& s, std::uint64_t n) {
  return func<K>::indicator(s, s.domain_n(n));
}

/// A finitely supported sequence (a_0, a_1, ...), term n supported on
/// Delta_n.  Violations of the support contract are hard errors.
template <typename K>
struct seq_element {
  std::vector<func<K>> terms;

  bool operator==(const seq_element&) const = default;
};

template <typename K>
void check_supports(const partial_system& s, const seq_element<K>& a) {
  for (std::size_t n = 0; n < a.terms.size(); ++n) {
    std::vector<char> in_dom(s.size(), 0);
    for (int x : s.domain_n(n)) in_dom[x] = 1;
    for (int x = 0; x < s.size(); ++x)
      if (!in_dom[x] && !scalar_traits<K>::is_zero(a.terms[n].values[x]))
        fail(errc::support_violation, "term " + std::to_string(n) + " is nonzero off its domain");
  }
}

template <typename K>
seq_element<K> make_seq(const partial_system& s, std::vector<func<K>> terms) {
  seq_element<K> a{std::move(terms)};
  check_supports(s, a);
  return a;
}

template <typename K>
seq_element<K> make_seq(const partial_system& s, std::initializer_list<func<K>> terms) {
  return make_seq(s, std::vector<func<K>>(terms));
}

template <typename K = complexd>
seq_element<K> seq_unit(const partial_system& s) {
  return seq_element<K>{{func<K>::unit(s)}};
}

inline func<complexd> random_func(const partial_system& s, rng& gen) {
  func<complexd> f = func<complexd>::zero(s);
  for (auto& v : f.values) v = gen.complex_box();
  return f;
}

inline seq_element<complexd> random_seq(const partial_system& s, rng& gen, std::size_t max_len) {
  std::size_t len = gen.below(max_len + 1);
  seq_element<complexd> a;
  for (std::size_t n = 0; n < len; ++n) {
    func<complexd> f = func<complexd>::zero(s);
    for (int x : s.domain_n(n)) f.values[x] = gen.complex_box();
    a.terms.push_back(std::move(f));
  }
  return a;
}

template <typename K>
seq_element<K> seq_add(const partial_system& s, const seq_element<K>& a, const seq_element<K>& b) {
  seq_element<K> out;
  std::size_t len = std::max(a.terms.size(), b.terms.size());
  for (std::size_t n = 0; n < len; ++n) {
    func<K> t = func<K>::zero(s);
    if (n < a.terms.size()) t = t + a.terms[n];
    if (n < b.terms.size()) t = t + b.terms[n];
    out.terms.push_back(std::move(t));
  }
  check_supports(s, out);
  return out;
}

template <typename K>
seq_element<K> seq_smul(const partial_system& s, const K& lambda, const seq_element<K>& a) {
  seq_element<K> out = a;
  for (auto& t : out.terms)
    for (auto& v : t.values) v = lambda * v;
  check_supports(s, out);
  return out;
}

template <typename K>
seq_element<K> seq_star(const partial_system& s, const seq_element<K>& a) {
  seq_element<K> out = a;
  for (auto& t : out.terms)
    for (auto& v : t.values) v = scalar_traits<K>::conjugate(v);
  check_supports(s, out);
  return out;
}

/// Convolution product:
///   (a.b)_n = a_n * sum_{j=0..n} delta^j(b_{n-j}) + b_n * sum_{j=1..n} delta^j(a_{n-j}).
template <typename K>
seq_element<K> seq_mul(const partial_system& s, const seq_element<K>& a, const seq_element<K>& b) {
  check_supports(s, a);
  check_supports(s, b);
  auto term = [&](const seq_element<K>& e, std::size_t n) {
    return n < e.terms.size() ? e.terms[n] : func<K>::zero(s);
  };
  seq_element<K> out;
  std::size_t len = std::max(a.terms.size(), b.terms.size());
  for (std::size_t n = 0; n < len; ++n) {
    func<K> sum_b = func<K>::zero(s);
    for (std::size_t j = 0; j <= n; ++j) sum_b = sum_b + endo_delta_n(s, term(b, n - j), j);
    func<K> sum_a = func<K>::zero(s);
    for (std::size_t j = 1; j <= n; ++j) sum_a = sum_a + endo_delta_n(s, term(a, n - j), j);
    out.terms.push_back(term(a, n) * sum_b + term(b, n) * sum_a);
  }
  check_supports(s, out);
  return out;
}

/// Evaluation against an anti-orbit: phi(a)(p) = sum_n a_n(x_n), missing
/// coordinates contributing zero.
template <typename K>
K phi_eval(const partial_system& s, const seq_element<K>& a, const ext_point& p) {
  validate_ext_point(s, p);
  K total = scalar_traits<K>::zero();
  for (std::size_t n = 0; n < a.terms.size(); ++n)
    if (auto x = p.entry(n)) total = total + a.terms[n].values[*x];
  return total;
}

/// The endomorphism induced by tilde-alpha in sequence form:
///   [a_0, a_1, ...] -> [delta(a_0) + a_1, a_2, a_3, ...].
template <typename K>
seq_element<K> delta_tilde_alg(const partial_system& s, const seq_element<K>& a) {
  check_supports(s, a);
  auto term = [&](std::size_t n) {
    return n < a.terms.size() ? a.terms[n] : func<K>::zero(s);
  };
  seq_element<K> out;
  out.terms.push_back(endo_delta(s, term(0)) + term(1));
  for (std::size_t n = 2; n < a.terms.size(); ++n) out.terms.push_back(a.terms[n]);
  check_supports(s, out);
  return out;
}

/// The adjoint-side endomorphism:
///   [a_0, a_1, ...] -> [0, a_0 delta(1), a_1 delta^2(1), ...].
template <typename K>
seq_element<K> delta_star_alg(const partial_system& s, const seq_element<K>& a) {
  check_supports(s, a);
  seq_element<K> out;
  out.terms.push_back(func<K>::zero(s));
  for (std::size_t n = 0; n < a.terms.size(); ++n)
    out.terms.push_back(a.terms[n] * domain_indicator<K>(s, n + 1));
  check_supports(s, out);
  return out;
}

/// The spanning family used for equality modulo ker-phi: finite paths up to
/// twice the system size plus every canonical eventually-periodic point.
inline std::vector<ext_point> spanning_family(const partial_system& s) {
  extension_view view =
      build_extension(s, std::max<std::size_t>(2 * static_cast<std::size_t>(s.size()) + 2, 1));
  std::vector<ext_point> fam = view.finite_paths;
  fam.insert(fam.end(), view.ep_points.begin(), view.ep_points.end());
  return fam;
}

/// Equality as elements of the coefficient algebra: agreement of phi-values
/// on the spanning family.  Componentwise equality is raw_equal.
template <typename K>
bool seq_equal_via_phi(const partial_system& s, const seq_element<K>& a, const seq_element<K>& b,
                       double tol = 1e-12) {
  for (const auto& p : spanning_family(s))
    if (!scalar_traits<K>::close(phi_eval(s, a, p), phi_eval(s, b, p), tol)) return false;
  return true;
}

template <typename K>
bool raw_equal(const partial_system& s, const seq_element<K>& a, const seq_element<K>& b,
               double tol = 0.0) {
  std::size_t len = std::max(a.terms.size(), b.terms.size());
  for (std::size_t n = 0; n < len; ++n)
    for (int x = 0; x < s.size(); ++x) {
      K va = n < a.terms.size() ? a.terms[n].values[x] : scalar_traits<K>::zero();
      K vb = n < b.terms.size() ? b.terms[n].values[x] : scalar_traits<K>::zero();
      if (!scalar_traits<K>::close(va, vb, tol)) return false;
    }
  return true;
}

} // namespace pds
