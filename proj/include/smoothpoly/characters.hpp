#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// The relation R_{l,g}: f ~ h iff f = h mod g and f* = h* mod t^{l+1}.
struct Relation {
  unsigned l = 0;
  Poly g;

  /// Both arguments must be nonzero; they are compared through their monic associates.
  bool related(const Poly& f, const Poly& h) const;
};

/// The unit group G_{l,g} = G_l x (F_q[t]/g)^*, decomposed into cyclic
/// factors of orders d_1 | d_2 | ... with a discrete-log table.
///
/// An element is stored by its raw index h + q^l * r, where h encodes the
/// coefficients 1..l of f* mod t^{l+1} and r is the index of f mod g.
class UnitGroup {
 public:
  /// Throws BudgetExceeded when q^l * Phi(g) > limits.group and
  /// std::invalid_argument when g is not monic.
  static std::shared_ptr<const UnitGroup> make(unsigned l, const Poly& g, const Limits& limits = {});

  const FieldPtr& field() const { return g_.field(); }
  unsigned l() const { return l_; }
  const Poly& g() const { return g_; }
  std::uint64_t order() const { return order_; }
  /// Invariant factors d_1 | d_2 | ... (all > 1; empty for the trivial group).
  const std::vector<std::uint64_t>& invariants() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  /// Exponent of the group (largest invariant factor, 1 when trivial).
  std::uint64_t exponent() const { return d_.empty() ? 1 : d_.back(); }
  const std::vector<std::uint32_t>& generators() const { return gens_; }
  /// Raw indices of all units in increasing order.
  const std::vector<std::uint32_t>& elements() const { return units_; }
  std::uint32_t identity() const { return identity_; }

  /// Raw index of the class of the monic associate of f, or nullopt when
  /// gcd(f, g) != 1. Throws std::invalid_argument on f = 0.
  std::optional<std::uint32_t> element_of(const Poly& f) const;
  /// Raw index from the top coefficients and the residue; unit or not.
  std::uint32_t raw_index(const Poly& f) const;
  bool is_unit(std::uint32_t raw) const { return unit_[raw]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  /// Exponent vector with 0 <= e_j < d_j.
  std::vector<std::uint64_t> log(std::uint32_t raw) const;
  /// sum_j log_j(raw) * (exponent / d_j) * e_j mod exponent.
  std::uint64_t pairing(std::uint32_t raw, const std::vector<std::uint64_t>& e) const;
  const std::complex<double>& root(std::uint64_t k) const { return roots_[k % roots_.size()]; }
  /// Member of G_l given by the first l coefficients of a monic b.
  std::uint32_t top_part(const Poly& b) const;
  /// Raw index built from a G_l part and a residue r (deg r < deg g).
  std::uint32_t combine(std::uint32_t top, const Poly& r) const;

 private:
  UnitGroup() = default;
  void decompose();

  unsigned l_ = 0;
  Poly g_{nullptr};
  std::uint32_t q_ = 2;
  std::uint64_t top_size_ = 1;  // q^l
  std::uint64_t raw_size_ = 1;  // q^l * q^{deg g}
  std::uint64_t order_ = 1;
  std::vector<std::uint64_t> d_;
  std::vector<std::uint32_t> gens_;
  std::vector<std::uint32_t> units_;
  std::vector<char> unit_;
  std::vector<std::int32_t> logs_pos_;  // raw index -> unit position
  std::vector<std::uint32_t> logs_;     // rank() entries per unit
  std::uint32_t identity_ = 0;
  std::vector<std::complex<double>> roots_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

/// A character of G_{l,g}: chi(prod y_j^{k_j}) = exp(2 pi i sum_j e_j k_j / d_j).
class Character {
 public:
  /// Throws std::invalid_argument unless the vector has rank() entries with e_j < d_j.
  Character(UnitGroupPtr group, std::vector<std::uint64_t> exps);
  static Character principal(UnitGroupPtr group);
  /// The index-th character in mixed radix over (d_1, d_2, ...).
  static Character from_index(UnitGroupPtr group, std::uint64_t index);

  const UnitGroup& group() const { return *group_; }
  const UnitGroupPtr& group_ptr() const { return group_; }
  const std::vector<std::uint64_t>& exps() const { return e_; }
  std::uint64_t index() const;
  bool is_trivial() const;
  /// Value on a raw index; 0 off the units.
  std::complex<double> at(std::uint32_t raw) const;
  /// chi(f) for f != 0; non-monic f is evaluated at its monic associate.
  std::complex<double> operator()(const Poly& f) const;
  Character conj() const;

 private:
  UnitGroupPtr group_;
  std::vector<std::uint64_t> e_;
};

std::vector<Character> all_characters(const UnitGroupPtr& group);

/// chi(f); throws std::invalid_argument on f = 0. Sets *normalized when f
/// was replaced by its monic associate.
std::complex<double> char_eval(const Character& chi, const Poly& f, bool* normalized = nullptr);

/// Histogram of the classes of polys over raw indices (non-units dropped).
std::vector<std::uint64_t> class_counts(const UnitGroup& group, const std::vector<Poly>& polys);

/// sums[i] = sum over polys of chi_i where chi_i = Character::from_index(group, i).
std::vector<std::complex<double>> character_sums(const UnitGroupPtr& group,
                                                 const std::vector<std::uint64_t>& counts);

/// sum over monic irreducibles of degree n of chi.
std::complex<double> char_sum_irreducibles(const Character& chi, unsigned n, const Limits& limits = {});

/// (l - 1 + deg g) q^{n/2} / n.
double irreducible_sum_bound(const UnitGroup& group, unsigned n);

struct SmoothCharSum {
  std::complex<double> sum;
  double envelope = 0;  // constant * q^{(1/2+eps) n} e^{eps (l + deg g)}
  bool within = false;
};

/// Exact sum over S(n, m) of chi with the envelope for comparison.
SmoothCharSum char_sum_smooth(const Character& chi, unsigned n, unsigned m, double eps = 0.25,
                              double constant = 8.0, const Limits& limits = {});

struct LPolyReport {
  std::vector<std::complex<double>> coeffs;  // c_0..c_{l + deg g}
  unsigned degree = 0;                       // largest n with |c_n| > tol
  bool vanishes_above = false;               // c_n = 0 for n >= l + deg g
  std::vector<std::complex<double>> inverse_roots;
  unsigned unit_roots = 0;                   // |alpha| = 1
  unsigned sqrt_q_roots = 0;                 // |alpha| = sqrt(q)
  unsigned other_roots = 0;
  /// vanishes_above, every root of modulus 1 or sqrt(q), at most one of modulus 1.
  bool weil_ok = false;
};

/// L-polynomial sum_n c_n z^n with c_n = sum_{f in M(n)} chi(f), and its
/// inverse roots. Throws std::invalid_argument for the principal character.
LPolyReport l_poly(const Character& chi, double tol = 1e-6, const Limits& limits = {});

/// l_poly for every non-principal character, in character index order.
std::vector<std::pair<Character, LPolyReport>> l_polys(const UnitGroupPtr& group, double tol = 1e-6,
                                                       const Limits& limits = {});

/// Inverse roots of sum_n c_n z^n = prod (1 - alpha_i z), c_0 != 0.
std::vector<std::complex<double>> inverse_roots(const std::vector<std::complex<double>>& coeffs);

struct GaussCheck {
  double lhs = 0;
  BigInt rhs = 0;  // q^l Phi(g)^2
  bool pass = false;
};

/// sum over chi mod R_{l,g} of |sum*_{a = b mod R_l} chi(a) e(a/g)|^2 against q^l Phi(g)^2.
GaussCheck gauss_identity_check(unsigned l, const Poly& g, const Poly& b, double tol = 1e-6,
                                const Limits& limits = {});

struct RamanujanSum {
  std::complex<double> direct;  // sum over units a mod g of e(af/g)
  BigInt formula = 0;           // sum_{d | gcd(f,g)} |d| mu(g/d)
  bool agree = false;
};

/// Throws std::invalid_argument when g is zero or not monic.
RamanujanSum ramanujan_sum(const Poly& f, const Poly& g, const Limits& limits = {});

/// Phi(g) >= |g| / (2 (log_q deg g + 1)), the lower bound with constant 1/2.
double phi_lower_envelope(const Poly& g);

}  // namespace smoothpoly
