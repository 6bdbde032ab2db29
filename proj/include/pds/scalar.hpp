#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <complex>
#include <cstdint>

namespace pds {

using complexd = std::complex<double>;

/// Complex numbers over exact rationals, for tolerance-free runs of the
/// algebraic identity suites.
struct rational_complex {
  using rat = boost::rational<long long>;
  rat re{0}, im{0};

  rational_complex() = default;
  rational_complex(rat r, rat i) : re(r), im(i) {}
  rational_complex(long long r) : re(r), im(0) {} // NOLINT(google-explicit-constructor)

  friend rational_complex operator+(const rational_complex& a, const rational_complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend rational_complex operator-(const rational_complex& a, const rational_complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend rational_complex operator*(const rational_complex& a, const rational_complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  rational_complex& operator+=(const rational_complex& o) { return *this = *this + o; }
  bool operator==(const rational_complex&) const = default;
};

template <typename K>
struct scalar_traits;

template <>
struct scalar_traits<complexd> {
  static complexd zero() { return {0.0, 0.0}; }
  static complexd one() { return {1.0, 0.0}; }
  static complexd conjugate(const complexd& z) { return std::conj(z); }
  static bool is_zero(const complexd& z, double tol = 0.0) { return std::abs(z) <= tol; }
  static bool close(const complexd& a, const complexd& b, double tol) {
    return std::abs(a - b) <= tol;
  }
};

template <>
struct scalar_traits<rational_complex> {
  static rational_complex zero() { return {}; }
  static rational_complex one() { return {1}; }
  static rational_complex conjugate(const rational_complex& z) { return {z.re, -z.im}; }
  static bool is_zero(const rational_complex& z, double = 0.0) {
    return z == rational_complex{};
  }
  static bool close(const rational_complex& a, const rational_complex& b, double = 0.0) {
    return a == b;
  }
};

} // namespace pds
