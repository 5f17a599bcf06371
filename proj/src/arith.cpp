#include "smoothpoly/arith.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "factor_kernel.hpp"

namespace smoothpoly {

namespace {

Poly require_nonzero(const Poly& f, const char* what) {
  if (f.is_zero()) throw std::domain_error(std::string(what) + " of the zero polynomial");
  return f.monic();
}

// g^{1/p} for g whose exponents are all multiples of p.
Poly pth_root(const Poly& g) {
  const Field& F = g.F();
  const std::uint32_t p = F.p();
  // x -> x^{p^{k-1}} inverts Frobenius on F_q.
  const std::uint64_t root_exp = sat_pow(p, F.k() - 1);
  std::vector<Elem> v(static_cast<std::size_t>(g.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.pow(g[i * p], root_exp);
  return Poly(g.field(), std::move(v));
}

void sff_into(const Poly& f, unsigned mult, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  Poly d = derivative(f);
  if (d.is_zero()) {
    sff_into(pth_root(f), mult * f.F().p(), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one() && c.degree() > 0) sff_into(pth_root(c.monic()), mult * f.F().p(), out);
}

struct DegreePart {
  Poly prod;  // product of all irreducible factors of degree r
  unsigned r;
};

// Distinct-degree split of a monic squarefree polynomial.
std::vector<DegreePart> ddf(const Poly& f) {
  std::vector<DegreePart> parts;
  Poly rest = f;
  const Poly t = Poly::t(f.field());
  Poly h = t % f;
  for (unsigned r = 1; rest.degree() >= 2 * static_cast<int>(r); ++r) {
    h = powmod(h, f.F().q(), rest);
    Poly g = gcd(h - t, rest);
    if (g.degree() > 0) {
      parts.push_back({g, r});
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) parts.push_back({rest, static_cast<unsigned>(rest.degree())});
  return parts;
}

// Splits a product of distinct irreducibles of degree r (Cantor-Zassenhaus).
void edf(const Poly& f, unsigned r, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(r)) {
    out.push_back(f);
    return;
  }
  const Field& F = f.F();
  const int n = f.degree();
  std::uniform_int_distribution<Elem> coeff(0, F.q() - 1);
  while (true) {
    std::vector<Elem> v(n);
    for (auto& c : v) c = coeff(rng);
    Poly a(f.field(), std::move(v));
    if (a.degree() < 1) continue;
    Poly b(f.field());
    if (F.p() == 2) {
      // Trace map a + a^2 + ... + a^{2^{kr-1}}.
      Poly term = a;
      b = a;
      for (unsigned i = 1; i < F.k() * r; ++i) {
        term = mulmod(term, term, f);
        b += term;
      }
    } else {
      BigInt e = (big_pow(F.q(), r) - 1) / 2;
      b = powmod(a, e, f) - Poly::one(f.field());
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < n) {
      edf(g, r, rng, out);
      edf(f / g, r, rng, out);
      return;
    }
  }
}

}  // namespace

int mobius_int(std::uint64_t n) {
  if (n == 0) return 0;
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

BigInt count_irreducibles(std::uint32_t q, unsigned n) {
  if (n == 0) throw std::invalid_argument("count_irreducibles needs n >= 1");
  BigInt sum = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = mobius_int(d);
    if (mu != 0) sum += mu * big_pow(q, n / d);
  }
  return sum / n;
}

std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, unsigned n, const Limits& limits) {
  if (n == 0) throw std::invalid_argument("enumerate_irreducibles needs n >= 1");
  const std::uint64_t total = sat_pow(field->q(), n);
  if (total > limits.irreducible)
    throw BudgetExceeded("enumerate_irreducibles: q^n = " + std::to_string(total) +
                         " exceeds the irreducible budget");
  std::vector<Poly> out;
  detail::with_kernel(*field, n, [&](auto& kernel) {
    std::vector<Elem> c(n + 1, 0);
    c[n] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (n == 1 || (c[0] != 0 && kernel.largest_factor_degree(c.data(), n) == n))
        out.emplace_back(field, c);
      for (unsigned i = 0; i < n; ++i) {
        if (++c[i] < field->q()) break;
        c[i] = 0;
      }
    }
    return 0;
  });
  return out;
}

unsigned largest_factor_degree(const Poly& f) {
  Poly g = require_nonzero(f, "largest_factor_degree");
  const unsigned n = static_cast<unsigned>(g.degree());
  return detail::with_kernel(g.F(), n, [&](auto& kernel) {
    return kernel.largest_factor_degree(g.coeffs().data(), n);
  });
}

bool is_m_smooth(const Poly& f, unsigned m) {
  Poly g = require_nonzero(f, "is_m_smooth");
  const unsigned n = static_cast<unsigned>(g.degree());
  if (m >= n) return true;
  return detail::with_kernel(g.F(), n, [&](auto& kernel) {
    return kernel.is_smooth(g.coeffs().data(), n, m);
  });
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  return largest_factor_degree(f) == static_cast<unsigned>(f.degree());
}

std::vector<Factor> squarefree_decomposition(const Poly& f) {
  Poly g = require_nonzero(f, "squarefree_decomposition");
  std::vector<Factor> out;
  sff_into(g, 1, out);
  return out;
}

std::vector<Factor> factor(const Poly& f) {
  Poly g = require_nonzero(f, "factor");
  std::mt19937_64 rng(0x5eed);
  std::map<Poly, unsigned> acc;
  for (const Factor& part : squarefree_decomposition(g)) {
    for (const DegreePart& dp : ddf(part.base)) {
      std::vector<Poly> irr;
      edf(dp.prod, dp.r, rng, irr);
      for (Poly& w : irr) acc[w.monic()] += part.exp;
    }
  }
  std::vector<Factor> out;
  for (auto& [base, e] : acc) out.push_back({base, e});
  return out;
}

int mobius(const Poly& f) {
  if (f.is_zero() || !f.is_monic()) throw std::invalid_argument("mobius needs a monic polynomial");
  if (f.degree() == 0) return 1;
  Poly d = derivative(f);
  if (d.is_zero()) return 0;  // f is a p-th power
  if (gcd(f, d).degree() > 0) return 0;
  unsigned count = 0;
  for (const DegreePart& dp : ddf(f)) count += static_cast<unsigned>(dp.prod.degree()) / dp.r;
  return count % 2 == 0 ? 1 : -1;
}

BigInt euler_phi(const Poly& g) {
  if (g.is_zero()) throw std::domain_error("euler_phi of the zero polynomial");
  BigInt phi = 1;
  const std::uint32_t q = g.F().q();
  for (const Factor& fac : factor(g)) {
    const unsigned d = static_cast<unsigned>(fac.base.degree());
    phi *= (big_pow(q, d) - 1) * big_pow(q, d * (fac.exp - 1));
  }
  return phi;
}

std::vector<Poly> divisors(const Poly& f, const Limits& limits) {
  auto fs = factor(f);
  std::uint64_t count = 1;
  for (const Factor& fac : fs) {
    count *= fac.exp + 1;
    if (count > limits.group) throw BudgetExceeded("divisors: too many divisors");
  }
  std::vector<Poly> out{Poly::one(f.field())};
  for (const Factor& fac : fs) {
    const std::size_t base_count = out.size();
    Poly power = Poly::one(f.field());
    for (unsigned e = 1; e <= fac.exp; ++e) {
      power *= fac.base;
      for (std::size_t i = 0; i < base_count; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt tau(const Poly& f) {
  BigInt t = 1;
  for (const Factor& fac : factor(f)) t *= fac.exp + 1;
  return t;
}

}  // namespace smoothpoly
