#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smoothpoly/common.hpp"

namespace smoothpoly {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^k.
///
/// Prime fields are supported for any p < 2^20. Extension fields need a
/// modulus (explicit, or from the built-in table for q in {4,8,9,16,25,27})
/// and are limited to q <= 65536 so that log/antilog tables stay small.
/// Instances are immutable and may be shared across threads.
class Field {
 public:
  /// Builds and validates a field. Throws std::invalid_argument on a
  /// composite p, a reducible or malformed modulus, or a missing modulus.
  static FieldPtr make(std::uint32_t p, unsigned k = 1,
                       std::optional<std::vector<Elem>> modulus = std::nullopt);

  /// Parses "q=p^k[:modulus]". Accepted forms include "5", "q=5", "2^2",
  /// "q=4", "q=2^2:1,1,1". The modulus is a coefficient list over F_p,
  /// low-to-high, of a monic irreducible polynomial of degree k.
  static FieldPtr parse(std::string_view spec);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  bool is_prime() const { return k_ == 1; }
  /// Modulus over F_p (low-to-high, monic); empty for prime fields.
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Elem mul(Elem a, Elem b) const {
    if (k_ == 1) return reduce(static_cast<std::uint64_t>(a) * b);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  /// Multiplicative inverse; throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Absolute trace into F_p, returned as an integer in [0, p).
  Elem trace(Elem a) const { return k_ == 1 ? a : trace_[a]; }

  /// Reduces a 64-bit value modulo p (prime fields and digit arithmetic).
  Elem reduce(std::uint64_t x) const {
    std::uint64_t qt = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - qt * p_;
    return static_cast<Elem>(r >= p_ ? r - p_ : r);
  }

  /// exp(2*pi*i*j/p) for j in [0, p).
  const std::complex<double>& root_of_unity(Elem j) const { return roots_[j]; }

  /// Canonical text form "q=p^k" or "q=p^k:modulus".
  std::string spec() const;

  bool same_as(const Field& other) const {
    return this == &other ||
           (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
  }

  /// Base-p digits of an element (length k).
  std::vector<Elem> digits(Elem a) const;
  Elem from_digits(const std::vector<Elem>& d) const;

  /// Built-in modulus for small extension fields, if one exists.
  static std::optional<std::vector<Elem>> builtin_modulus(std::uint32_t p, unsigned k);

  static bool is_prime_number(std::uint64_t n);

 private:
  Field() = default;
  Elem add_ext(Elem a, Elem b) const;
  Elem neg_ext(Elem a) const;
  void build_extension_tables();
  Elem mul_reference(Elem a, Elem b) const;

  std::uint32_t p_ = 2;
  unsigned k_ = 1;
  std::uint32_t q_ = 2;
  std::uint64_t barrett_ = 0;
  std::vector<Elem> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> trace_;
  std::vector<std::uint16_t> add_table_;  // q <= 1024 extension fields only
  std::vector<Elem> inv_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace smoothpoly
