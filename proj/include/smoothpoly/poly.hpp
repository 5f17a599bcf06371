#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smoothpoly/field.hpp"

namespace smoothpoly {

/// Dense univariate polynomial over a Field, coefficients low-to-high.
///
/// The coefficient vector never has trailing zeros; the zero polynomial is
/// the empty vector and has degree -1 and norm 0.
class Poly {
 public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly one(FieldPtr field) { return constant(std::move(field), 1); }
  /// c * t^d
  static Poly monomial(FieldPtr field, Elem c, unsigned d);
  static Poly t(FieldPtr field) { return monomial(std::move(field), 1, 1); }
  /// Monic polynomial of degree n whose lower coefficients c_0..c_{n-1}
  /// are the base-q digits of index (c_0 least significant).
  static Poly monic_from_index(FieldPtr field, unsigned n, std::uint64_t index);
  /// Any polynomial of degree < n from the base-q digits of index.
  static Poly from_index(FieldPtr field, unsigned n, std::uint64_t index);

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::span<const Elem> coeffs() const { return c_; }

  /// |f| = q^deg f as a big integer (0 for the zero polynomial).
  BigInt norm() const;
  /// Index of the lower n coefficients in base q (inverse of from_index).
  std::uint64_t index_below(unsigned n) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly scaled(Elem s) const;
  Poly shifted(unsigned k) const;  // t^k * f
  Poly monic() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_->same_as(*b.field_) && a.c_ == b.c_;
  }
  /// Orders by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void trim();
  void check_same(const Poly& o) const;

  FieldPtr field_;
  std::vector<Elem> c_;
};

struct DivRem {
  Poly quot;
  Poly rem;
};

/// f = quot * g + rem with deg rem < deg g. Throws std::domain_error on g = 0.
DivRem divrem(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtGcd {
  Poly g;  // monic gcd
  Poly s;  // s*a + t*b = g
  Poly t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

/// f* = t^{deg f} f(1/t).
Poly reverse(const Poly& f);
Poly derivative(const Poly& f);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(Poly base, const BigInt& e, const Poly& m);
/// Truncation f mod t^n.
Poly truncate(const Poly& f, unsigned n);

/// Text format: coefficients low-to-high, comma separated ("1,1,0,1").
std::string to_text(const Poly& f);
Poly parse_poly(const FieldPtr& field, std::string_view text);

}  // namespace smoothpoly
