#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace smoothpoly {

using BigInt = boost::multiprecision::cpp_int;

/// Field elements are encoded as integers in [0, q) via the base-p digits
/// of their coefficient vector over the prime field.
using Elem = std::uint32_t;

/// Raised when an enumeration or group construction would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Work limits shared by every enumerating operation.
struct Limits {
  std::uint64_t enumeration = 100'000'000;  // smoothness tests per count
  std::uint64_t irreducible = 10'000'000;   // q^n for enumerate_irreducibles
  std::uint64_t group = 100'000;            // q^l * Phi(g)
  std::uint64_t smooth_cache = 4'000'000;   // polynomials held by a SmoothSet
  unsigned threads = 0;                     // 0 = hardware concurrency

  unsigned thread_count() const {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

inline BigInt big_pow(std::uint64_t base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

/// q^n as a 64-bit value, saturating at UINT64_MAX.
inline std::uint64_t sat_pow(std::uint64_t q, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

}  // namespace smoothpoly
