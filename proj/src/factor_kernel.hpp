#pragma once

// Allocation-free distinct-degree splitting on raw coefficient buffers.
// Every smoothness test in the library goes through DegreeKernel, so the
// enumeration paths and the Poly-level predicate share one implementation.

#include <algorithm>
#include <vector>

#include "smoothpoly/field.hpp"

namespace smoothpoly::detail {

struct PrimeArith {
  const Field* F;
  std::uint32_t p;
  using Acc = std::uint64_t;

  explicit PrimeArith(const Field& f) : F(&f), p(f.p()) {}
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return F->reduce(static_cast<std::uint64_t>(a) * b); }
  Elem inv(Elem a) const { return F->inv(a); }
  // Products are below 2^40, so up to 2^24 of them can be summed lazily.
  Acc mac(Acc acc, Elem a, Elem b) const { return acc + static_cast<std::uint64_t>(a) * b; }
  Elem fin(Acc acc) const { return F->reduce(acc); }
};

struct GenericArith {
  const Field* F;
  using Acc = Elem;

  explicit GenericArith(const Field& f) : F(&f) {}
  Elem add(Elem a, Elem b) const { return F->add(a, b); }
  Elem sub(Elem a, Elem b) const { return F->sub(a, b); }
  Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
  Elem inv(Elem a) const { return F->inv(a); }
  Acc mac(Acc acc, Elem a, Elem b) const { return F->add(acc, F->mul(a, b)); }
  Elem fin(Acc acc) const { return acc; }
};

template <class A>
class DegreeKernel {
 public:
  DegreeKernel(const Field& field, unsigned max_degree) : ar_(field), q_(field.q()) {
    ensure(max_degree);
  }

  /// Largest degree of an irreducible factor of the monic polynomial f
  /// (coefficients f[0..n], f[n] == 1). When cap > 0 and the answer exceeds
  /// cap, returns cap + 1 without finishing the split.
  unsigned largest_factor_degree(const Elem* f, unsigned n, unsigned cap = 0) {
    if (n <= 1) return n;
    ensure(n);
    build_frobenius(f, n);
    std::copy(f, f + n + 1, cur_.begin());
    int dcur = static_cast<int>(n);
    // h = t mod f
    std::fill(h_.begin(), h_.begin() + n, 0);
    h_[1] = 1;
    unsigned best = 0;
    for (unsigned r = 1;; ++r) {
      if (dcur == 0) return best;
      if (static_cast<unsigned>(dcur) < 2 * r) return clamp(std::max<unsigned>(best, dcur), cap);
      if (cap != 0 && r > cap) return cap + 1;
      apply_frobenius(n);
      // hr = (h mod cur) - t
      std::copy(h_.begin(), h_.begin() + n, hr_.begin());
      int dh = degree_of(hr_.data(), static_cast<int>(n) - 1);
      if (dcur < static_cast<int>(n)) reduce_monic(hr_.data(), dh, cur_.data(), dcur);
      if (dh < 1) {
        std::fill(hr_.begin() + (dh + 1), hr_.begin() + 2, 0);
        dh = 1;
      }
      hr_[1] = ar_.sub(hr_[1], 1);
      dh = degree_of(hr_.data(), dh);
      int dg = gcd_into_a(hr_.data(), dh, cur_.data(), dcur);
      if (dg >= 1) {
        best = r;
        // a_ holds G (monic). Strip every degree-r factor with multiplicity.
        while (dg >= 1) {
          exact_divide(cur_.data(), dcur, a_.data(), dg);
          std::copy(a_.begin(), a_.begin() + dg + 1, tmp_.begin());
          dg = gcd_into_a(tmp_.data(), dg, cur_.data(), dcur);
        }
      }
    }
  }

  bool is_smooth(const Elem* f, unsigned n, unsigned m) {
    if (m >= n) return true;
    return largest_factor_degree(f, n, m) <= m;
  }

 private:
  void ensure(unsigned max_degree) {
    const std::size_t n = max_degree + 2;
    if (cur_.size() >= n) return;
    frob_.resize(n * n);
    for (auto* v : {&h_, &hr_, &cur_, &a_, &b_, &tmp_}) v->resize(2 * n);
    acc_.resize(2 * n);
  }

  static unsigned clamp(unsigned d, unsigned cap) { return (cap != 0 && d > cap) ? cap + 1 : d; }

  static int degree_of(const Elem* a, int hint) {
    while (hint >= 0 && a[hint] == 0) --hint;
    return hint;
  }

  // a (degree da) reduced in place modulo monic m (degree dm >= 1).
  void reduce_monic(Elem* a, int& da, const Elem* m, int dm) const {
    for (int top = da; top >= dm; --top) {
      Elem c = a[top];
      if (c == 0) continue;
      for (int i = 0; i < dm; ++i) a[top - dm + i] = ar_.sub(a[top - dm + i], ar_.mul(c, m[i]));
      a[top] = 0;
    }
    da = degree_of(a, std::min(da, dm - 1));
  }

  // Rows t^{q*i} mod f for i < n.
  void build_frobenius(const Elem* f, unsigned n) {
    const std::size_t stride = n;
    std::fill(frob_.begin(), frob_.begin() + stride * n, 0);
    frob_[0] = 1;
    if (q_ <= 2 * n) {
      // Multiply the previous row by t, q times.
      std::vector<Elem>& row = tmp_;
      std::fill(row.begin(), row.begin() + n, 0);
      row[0] = 1;
      for (unsigned i = 1; i < n; ++i) {
        for (std::uint32_t s = 0; s < q_; ++s) {
          Elem top = row[n - 1];
          for (unsigned j = n - 1; j > 0; --j) row[j] = ar_.sub(row[j - 1], ar_.mul(top, f[j]));
          row[0] = ar_.sub(0, ar_.mul(top, f[0]));
        }
        std::copy(row.begin(), row.begin() + n, frob_.begin() + i * stride);
      }
    } else {
      // x = t^q mod f by square-and-multiply, then rows by repeated mulmod.
      std::vector<Elem> x(n, 0), base(n, 0);
      x[0] = 1;
      base[1 % n] = (n == 1) ? ar_.sub(0, f[0]) : 1;
      std::uint64_t e = q_;
      bool started = false;
      for (int bit = 63; bit >= 0; --bit) {
        if (started) mulmod_into(x.data(), x.data(), f, n);
        if ((e >> bit) & 1) {
          if (started)
            mulmod_into(x.data(), base.data(), f, n);
          else
            std::copy(base.begin(), base.end(), x.begin());
          started = true;
        }
      }
      std::copy(x.begin(), x.end(), frob_.begin() + stride);
      for (unsigned i = 2; i < n; ++i) {
        std::copy(frob_.begin() + (i - 1) * stride, frob_.begin() + i * stride, tmp_.begin());
        mulmod_into(tmp_.data(), x.data(), f, n);
        std::copy(tmp_.begin(), tmp_.begin() + n, frob_.begin() + i * stride);
      }
    }
  }

  // a = a * b mod f, both of length n (degree < n).
  void mulmod_into(Elem* a, const Elem* b, const Elem* f, unsigned n) {
    std::vector<Elem>& prod = b_;
    for (unsigned k = 0; k + 1 < 2 * n; ++k) {
      typename A::Acc acc{};
      unsigned lo = k >= n ? k - n + 1 : 0;
      unsigned hi = std::min(k, n - 1);
      for (unsigned i = lo; i <= hi; ++i) acc = ar_.mac(acc, a[i], b[k - i]);
      prod[k] = ar_.fin(acc);
    }
    int d = static_cast<int>(2 * n - 2);
    d = degree_of(prod.data(), d);
    reduce_monic(prod.data(), d, f, static_cast<int>(n));
    for (unsigned i = 0; i < n; ++i) a[i] = static_cast<int>(i) <= d ? prod[i] : 0;
  }

  // h = h^q mod f via the Frobenius rows.
  void apply_frobenius(unsigned n) {
    const std::size_t stride = n;
    for (unsigned j = 0; j < n; ++j) acc_[j] = typename A::Acc{};
    for (unsigned i = 0; i < n; ++i) {
      Elem hi = h_[i];
      if (hi == 0) continue;
      const Elem* row = frob_.data() + i * stride;
      for (unsigned j = 0; j < n; ++j) acc_[j] = ar_.mac(acc_[j], hi, row[j]);
    }
    for (unsigned j = 0; j < n; ++j) h_[j] = ar_.fin(acc_[j]);
  }

  // Monic gcd of x (degree dx) and monic y (degree dy >= 1) into a_.
  // x is clobbered. Returns the degree of the gcd.
  int gcd_into_a(Elem* x, int dx, const Elem* y, int dy) {
    std::copy(y, y + dy + 1, a_.begin());
    Elem* u = a_.data();
    int du = dy;
    std::copy(x, x + std::max(dx, 0) + 1, b_.begin());
    Elem* v = b_.data();
    int dv = dx;
    while (dv >= 0) {
      // u mod v
      Elem inv_lead = ar_.inv(v[dv]);
      for (int top = du; top >= dv; --top) {
        Elem c = u[top];
        if (c == 0) continue;
        c = ar_.mul(c, inv_lead);
        for (int i = 0; i < dv; ++i) u[top - dv + i] = ar_.sub(u[top - dv + i], ar_.mul(c, v[i]));
        u[top] = 0;
      }
      du = degree_of(u, std::min(du, dv - 1));
      std::swap(u, v);
      std::swap(du, dv);
    }
    Elem inv_lead = ar_.inv(u[du]);
    for (int i = 0; i <= du; ++i) a_[i] = ar_.mul(u[i], inv_lead);
    return du;
  }

  // cur = cur / g exactly (g monic, degree dg).
  void exact_divide(Elem* cur, int& dcur, const Elem* g, int dg) {
    std::vector<Elem>& quot = hr_;
    const int dq = dcur - dg;
    for (int top = dcur; top >= dg; --top) {
      Elem c = cur[top];
      quot[top - dg] = c;
      if (c == 0) continue;
      for (int i = 0; i <= dg; ++i) cur[top - dg + i] = ar_.sub(cur[top - dg + i], ar_.mul(c, g[i]));
    }
    for (int i = 0; i <= dq; ++i) cur[i] = quot[i];
    for (int i = dq + 1; i <= dcur; ++i) cur[i] = 0;
    dcur = dq;
  }

  A ar_;
  std::uint32_t q_;
  std::vector<Elem> frob_, h_, hr_, cur_, a_, b_, tmp_;
  std::vector<typename A::Acc> acc_;
};

/// Runs fn(kernel) with the arithmetic policy matching the field.
template <class Fn>
decltype(auto) with_kernel(const Field& field, unsigned max_degree, Fn&& fn) {
  if (field.is_prime()) {
    DegreeKernel<PrimeArith> k(field, max_degree);
    return fn(k);
  }
  DegreeKernel<GenericArith> k(field, max_degree);
  return fn(k);
}

}  // namespace smoothpoly::detail
