#pragma once

#include <vector>

namespace smoothpoly {

/// Dickman's function rho on [0, max_u].
///
/// rho = 1 on [0,1] and 1 - ln u on [1,2]. Each later unit interval
/// [k, k+1] is stored as values at 33 Chebyshev points, filled from
/// u rho(u) = int_{u-1}^{u} rho(t) dt with a 32-point Gauss-Legendre rule,
/// and evaluated by barycentric interpolation.
class RhoTable {
 public:
  static constexpr int kNodes = 33;

  explicit RhoTable(double max_u = 40.0);

  double max_u() const { return max_u_; }

  /// Throws std::domain_error for u < 0 or u > max_u.
  double rho(double u) const;

  /// k-th derivative (k = 1 or 2) from the delay equation. Zero for u < 1;
  /// right-sided at the integers 1 and 2.
  double deriv(double u, int k) const;

  /// Derivative of the stored interpolant, independent of the delay
  /// equation. Used to check u rho'(u) + rho(u-1) = 0 numerically.
  double interpolant_deriv(double u) const;

  /// Largest gap between the full-step and half-step quadrature seen while
  /// building the table, relative to the value.
  double error_estimate() const { return error_estimate_; }

 private:
  struct Piece {
    double values[kNodes];
    double derivs[kNodes];
  };

  void check(double u) const;
  int piece_index(double u) const;
  double interpolate(const double* data, int k, double u) const;

  double max_u_;
  double error_estimate_ = 0.0;
  std::vector<Piece> pieces_;  // pieces_[k - 2] covers [k, k+1]
};

/// Shared table with the default range.
const RhoTable& rho_table();

/// Throws std::domain_error for u < 3.
double debruijn_envelope(double u);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace smoothpoly
