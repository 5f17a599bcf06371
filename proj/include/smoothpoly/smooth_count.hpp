#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// Coefficients prescribed on a monic polynomial of degree n:
/// c_i = alpha_i for every i in the index set I.
class Prescription {
 public:
  Prescription() = default;
  /// Throws std::invalid_argument on an index >= n or a duplicate index.
  Prescription(unsigned n, std::vector<std::pair<unsigned, Elem>> entries);

  /// Parses "i=v,i=v,..." (empty text means no prescription).
  static Prescription parse(unsigned n, std::string_view text);
  /// Prescribes c_0 = ... = c_{r-1} = 0.
  static Prescription zero_prefix(unsigned n, unsigned r);

  unsigned n() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Entries sorted by index.
  const std::vector<std::pair<unsigned, Elem>>& entries() const { return entries_; }
  std::vector<unsigned> indices() const;
  double delta() const { return n_ == 0 ? 0.0 : static_cast<double>(entries_.size()) / n_; }
  /// Throws std::invalid_argument if a value is not an element of F_q.
  void check_field(std::uint32_t q) const;
  bool matches(const Poly& f) const;
  std::string to_text() const;

 private:
  unsigned n_ = 0;
  std::vector<std::pair<unsigned, Elem>> entries_;
};

struct CountReport {
  BigInt exact = 0;
  std::uint32_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::string prescription;
  std::string method;  // "enumeration", "parseval" or "dp"
  double seconds = 0.0;
};

/// Psi(k, m) for k = 0..n: m-smooth monic polynomials of degree k over F_q,
/// from the Euler product prod_{r <= m} (1 - z^r)^{-pi_q(r)}.
std::vector<BigInt> psi_table(std::uint32_t q, unsigned n, unsigned m);

/// The same table from k Psi(k) = sum_j Psi(k - j) sum_{d | j, d <= m} d pi_q(d).
std::vector<BigInt> psi_table_recurrence(std::uint32_t q, unsigned n, unsigned m);

/// Psi(n, m). Throws std::invalid_argument when m < 1. m > n means m = n.
BigInt psi_exact(std::uint32_t q, unsigned n, unsigned m);

/// Psi_g(n, m): m-smooth monic polynomials of degree n coprime to g.
BigInt psi_coprime(unsigned n, unsigned m, const Poly& g);
std::vector<BigInt> psi_coprime_table(unsigned n, unsigned m, const Poly& g);

/// hist[d] = number of monic degree-n f matching pres whose largest
/// irreducible factor has degree d (d = 0..n). Exhaustive; throws
/// BudgetExceeded if q^{n - #I} > limits.enumeration.
std::vector<std::uint64_t> largest_degree_profile(const FieldPtr& field, unsigned n,
                                                  const Prescription& pres,
                                                  const Limits& limits = {});

/// #(S(n,m) intersected with the prescribed set), by enumeration.
CountReport count_prescribed(const FieldPtr& field, unsigned n, unsigned m,
                             const Prescription& pres, const Limits& limits = {});

/// Whether count_prescribed_dp can handle pres: every index must fall in a
/// low block {0..k-1} or a top block {n-l..n-1} with q^{k+l} <= 1024.
bool dp_applicable(std::uint32_t q, unsigned n, const Prescription& pres);

/// counts[m] = #(S(n,m) with the prescription) for m = 0..max_m, computed
/// exactly from the Euler product over irreducibles of degree <= max_m in
/// the monoid of pairs (f mod t^k, f* mod t^{l+1}). Both components are
/// multiplicative, so no degree-n polynomial is ever enumerated.
/// Throws std::invalid_argument when !dp_applicable and BudgetExceeded
/// when q^{max_m} exceeds limits.irreducible.
std::vector<BigInt> prescribed_counts_dp(const FieldPtr& field, unsigned n, unsigned max_m,
                                         const Prescription& pres, const Limits& limits = {});

CountReport count_prescribed_dp(const FieldPtr& field, unsigned n, unsigned m,
                                const Prescription& pres, const Limits& limits = {});

/// Index of the R_l class of a monic f of degree n: sum_j c_{n-1-j} q^j, j < l.
std::uint64_t class_index(const Poly& f, unsigned l);

/// counts[c] = #{f in S(n,m) : class_index(f, l) = c} for all q^l classes.
std::vector<std::uint64_t> class_histogram(const FieldPtr& field, unsigned n, unsigned m,
                                           unsigned l, const Limits& limits = {});

/// #{f in S(n,m) : f has the same first l coefficients as b}. b must be
/// monic of degree >= l; throws std::invalid_argument when l is outside [1, n].
BigInt count_in_class(unsigned n, unsigned m, const Poly& b, unsigned l,
                      const Limits& limits = {});

/// Coefficient vectors (c_0..c_{n-1}) of all m-smooth monic polynomials of
/// degree n, in index order. Throws BudgetExceeded beyond limits.smooth_cache.
std::vector<std::vector<Elem>> smooth_polys(const FieldPtr& field, unsigned n, unsigned m,
                                            const Limits& limits = {});

}  // namespace smoothpoly
