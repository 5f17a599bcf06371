#pragma once

#include <complex>
#include <string>
#include <vector>

#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// A rational point xi = a/g of the torus T = {|xi| < 1}, kept reduced:
/// g monic, gcd(a, g) = 1, deg a < deg g. Zero is 0/1.
class TorusPoint {
 public:
  /// Reduces a/g modulo polynomials and to lowest terms. Throws
  /// std::domain_error when g is zero.
  TorusPoint(const Poly& a, const Poly& g);
  static TorusPoint zero(const FieldPtr& field);

  const Poly& a() const { return a_; }
  const Poly& g() const { return g_; }
  bool is_zero() const { return a_.is_zero(); }

  TorusPoint operator-() const;
  /// f * xi reduced modulo polynomials.
  TorusPoint scaled(const Poly& f) const;
  friend TorusPoint operator+(const TorusPoint& x, const TorusPoint& y);
  friend TorusPoint operator-(const TorusPoint& x, const TorusPoint& y) { return x + (-y); }
  friend bool operator==(const TorusPoint& x, const TorusPoint& y) {
    return x.a_ == y.a_ && x.g_ == y.g_;
  }

 private:
  Poly a_;
  Poly g_;
};

/// Coefficient x_i of the expansion of a/g at infinity (any integer i).
Elem laurent_coeff(const Poly& a, const Poly& g, int i);
Elem laurent_coeff(const TorusPoint& x, int i);

/// x_{-1}, x_{-2}, ..., x_{-count}.
std::vector<Elem> fraction_digits(const TorusPoint& x, unsigned count);

/// tr(x_{-1}) as an integer in [0, p); e(xi) = exp(2 pi i * phase / p).
Elem e_phase(const TorusPoint& x);
std::complex<double> e_char(const TorusPoint& x);

/// q^exponent, or exactly zero.
struct NormValue {
  bool is_zero = true;
  int exponent = 0;
  std::uint32_t q = 2;

  double value() const;
};

/// ||xi|| = min over polynomials f of |xi - f|.
NormValue distance_to_poly(const TorusPoint& x);

struct Approximation {
  Poly a;
  Poly g;  // monic, |a| < |g| <= q^{n/2}
};

/// Rational approximation with |g| <= q^{n/2} and |xi - a/g| < 1/(|g| q^{n/2}),
/// taken as the last continued-fraction convergent of xi that fits.
Approximation dirichlet_approx(const TorusPoint& x, unsigned n);

/// "a/g" with both sides in the polynomial text format.
std::string to_text(const TorusPoint& x);
TorusPoint parse_torus(const FieldPtr& field, std::string_view text);

}  // namespace smoothpoly
