#pragma once

#include <complex>
#include <vector>

#include "smoothpoly/laurent.hpp"
#include "smoothpoly/smooth_count.hpp"

namespace smoothpoly {

/// S(n, m) enumerated once, stored as rows c_0..c_n (c_n = 1).
class SmoothSet {
 public:
  /// Throws BudgetExceeded beyond limits.smooth_cache polynomials.
  SmoothSet(FieldPtr field, unsigned n, unsigned m, const Limits& limits = {});

  const FieldPtr& field() const { return field_; }
  unsigned n() const { return n_; }
  unsigned m() const { return m_; }
  std::size_t size() const { return rows_.size() / (n_ + 1); }
  const Elem* row(std::size_t i) const { return rows_.data() + i * (n_ + 1); }

 private:
  FieldPtr field_;
  unsigned n_;
  unsigned m_;
  std::vector<Elem> rows_;
};

/// e(f xi) for deg f <= digits.size() - 1, given digits x_{-1}, x_{-2}, ... of xi.
std::complex<double> e_from_digits(const Field& F, const Elem* c, unsigned deg, const std::vector<Elem>& digits);

/// S(xi; n, m) = sum_{f in S(n,m)} e(f xi).
std::complex<double> s_smooth(const SmoothSet& set, const TorusPoint& xi);
std::complex<double> s_smooth(const TorusPoint& xi, unsigned n, unsigned m, const Limits& limits = {});

/// S(a / t^{n+1}; n, m) for every a with deg a <= n, indexed by a's base-q
/// digits (a_0 least significant). Throws BudgetExceeded when
/// q^{n+1} (n+1) q exceeds limits.enumeration.
std::vector<std::complex<double>> s_smooth_grid(const SmoothSet& set, const Limits& limits = {});

/// S_J(xi) from the closed form: q^{n-#I} e(xi t^n) prod_{i in I} e(alpha_i t^i xi)
/// when x_{-i-1} = 0 for every i outside I, and 0 otherwise.
std::complex<double> s_J(const TorusPoint& xi, const Prescription& pres);
/// S_J(xi) by summing e(f xi) over every f in J.
std::complex<double> s_J_direct(const TorusPoint& xi, const Prescription& pres, const Limits& limits = {});

/// K = ceil(n / (#I + 1)) and whether xi = a/g, g = g_0 t^k, satisfies
/// 1 < |g_0| <= q^K - 1 (so that S_J(xi) vanishes).
bool vanishing_applies(const TorusPoint& xi, const Prescription& pres);

struct ParsevalReport {
  BigInt count = 0;
  double real = 0;     // value before rounding
  double imag = 0;
  double residue = 0;  // |real - count|
  bool clean = false;  // residue and |imag| below 1e-6
};

/// #(S(n,m) with the prescription) as q^{-(n+1)} sum_{deg a <= n} S(a/t^{n+1}) conj(S_J(a/t^{n+1})).
ParsevalReport parseval_count(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                              const Limits& limits = {});
/// The same average over a precomputed grid from s_smooth_grid.
ParsevalReport parseval_from_grid(const FieldPtr& field, unsigned n, const std::vector<std::complex<double>>& grid,
                                  const Prescription& pres);

/// q^{-(n+1)} sum_{deg a <= n} |S_J(a/t^{n+1})|.
double s_J_l1_norm(const FieldPtr& field, const Prescription& pres, const Limits& limits = {});

/// Major/minor arc parameters; defaults kappa = ceil((n-m-2)/4), l = ceil((n-m)/4).
struct ArcParams {
  unsigned n = 0;
  unsigned m = 0;
  unsigned kappa = 0;
  unsigned ell = 0;

  static ArcParams defaults(unsigned n, unsigned m);
  bool valid() const { return ell + kappa < n; }
};

struct ArcClass {
  bool major = false;
  Poly a{nullptr};  // witness a/g in lowest terms when major
  Poly g{nullptr};
};

/// Major iff |xi - a/g| < q^{-n+l} for some |a| < |g| <= q^kappa. Searches
/// every monic g when kappa <= 8 and the convergents of xi otherwise.
ArcClass classify_arc(const TorusPoint& xi, const ArcParams& params);
ArcClass classify_arc_convergents(const TorusPoint& xi, const ArcParams& params);

struct KappaValue {
  double value = 0;
  bool flagged = false;  // x/y is an integer without y | x, or x/y < 1
};

/// kappa(x, y, delta): 1 if y | x; 2/(delta+1) if 1 < x/y < 2;
/// 2v/((v+1) delta + v - 1) if v-1 < x/y < v.
KappaValue bourgain_exponent(double x, double y, double delta);

/// sum_{d | g} mu(g/d) / (q^l Phi(g/d)) Psi_{g/d}(n - deg d, m).
double major_main_term(const Poly& g, unsigned l, unsigned n, unsigned m);

struct TwistedSum {
  std::complex<double> exact;
  double main = 0;
  double envelope = 0;  // constant q^{(1/2+eps) n} e^{eps (l + deg g)} |g|^{1/2}
  bool within = false;
};

/// sum over f in S(n,m) with the first l coefficients of b of e(af/g).
/// Requires gcd(a, g) = 1 and l + deg g < n.
TwistedSum twisted_class_sum(const Poly& a, const Poly& g, const Poly& b, unsigned l, unsigned n, unsigned m,
                             double eps = 0.25, double constant = 8.0, const Limits& limits = {});

struct MajorRhoRow {
  unsigned k = 0;
  double main_exact = 0;  // main term for g = t^k from Psi
  double rho_diff = 0;    // q^{n-l-k+1}/(q-1) (rho((n-k)/m) - rho((n-k+1)/m))
  double rho_deriv = 0;   // -(1/m) q^{n-l-k+1}/(q-1) rho'((n-k+1)/m)
};

/// Main term of the t^k major arc against its rho forms.
MajorRhoRow major_rho_form(std::uint32_t q, unsigned n, unsigned m, unsigned l, unsigned k);

struct MinorDiagnostic {
  double max_abs = 0;  // max |S(xi; n, m)| over minor xi = a/t^{n+1}
  double envelope = 0; // m^2 n^{1/2} q^{(7n+m+4)/8}
  std::size_t minor_points = 0;
  std::size_t major_points = 0;
  TorusPoint argmax;
};

MinorDiagnostic minor_arc_diagnostic(const SmoothSet& set, const ArcParams& params, const Limits& limits = {});

/// sum_{f in M(n)} e(f xi) by enumeration and by the closed form
/// q^n e(t^n xi) if |xi| < q^{-n}, else 0.
std::complex<double> monic_sum_direct(const TorusPoint& xi, unsigned n, const Limits& limits = {});
std::complex<double> monic_sum_closed(const TorusPoint& xi, unsigned n);

/// q^{-(n+1)} sum_{deg a <= n} e(f a / t^{n+1}); equals [f = 0] for deg f <= n.
std::complex<double> orthogonality_average(const Poly& f, unsigned n);

}  // namespace smoothpoly
