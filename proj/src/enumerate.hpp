#pragma once

#include <thread>
#include <vector>

#include "factor_kernel.hpp"
#include "smoothpoly/smooth_count.hpp"

namespace smoothpoly::detail {

/// Visits every monic polynomial of degree n that satisfies pres, passing
/// the coefficient buffer c_0..c_n. The free coefficients run in index
/// order (lowest position least significant) and are split into one
/// contiguous block per thread. Each block gets its own State; the states
/// are returned in block order so callers can merge deterministically.
template <class State, class Visit>
std::vector<State> enumerate_monic(const Field& field, unsigned n, const Prescription& pres,
                                   unsigned threads, Visit visit) {
  std::vector<unsigned> free_pos;
  std::vector<Elem> base(n + 1, 0);
  base[n] = 1;
  {
    std::size_t e = 0;
    const auto& entries = pres.entries();
    for (unsigned i = 0; i < n; ++i) {
      if (e < entries.size() && entries[e].first == i) {
        base[i] = entries[e].second;
        ++e;
      } else {
        free_pos.push_back(i);
      }
    }
  }
  const std::uint32_t q = field.q();
  const std::uint64_t total = sat_pow(q, static_cast<unsigned>(free_pos.size()));
  if (threads == 0) threads = 1;
  if (total < 4096 * static_cast<std::uint64_t>(threads)) threads = 1;

  std::vector<State> states(threads);
  auto run_block = [&](unsigned b) {
    const std::uint64_t begin = total / threads * b + std::min<std::uint64_t>(b, total % threads);
    const std::uint64_t len = total / threads + (b < total % threads ? 1 : 0);
    std::vector<Elem> c = base;
    std::uint64_t v = begin;
    for (unsigned pos : free_pos) {
      c[pos] = static_cast<Elem>(v % q);
      v /= q;
    }
    with_kernel(field, n, [&](auto& kernel) {
      for (std::uint64_t i = 0; i < len; ++i) {
        visit(states[b], kernel, c.data());
        for (unsigned pos : free_pos) {
          if (++c[pos] < q) break;
          c[pos] = 0;
        }
      }
      return 0;
    });
  };
  if (threads == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned b = 0; b < threads; ++b) pool.emplace_back(run_block, b);
    for (auto& th : pool) th.join();
  }
  return states;
}

}  // namespace smoothpoly::detail
