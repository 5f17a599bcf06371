#include "smoothpoly/circle.hpp"

#include <cmath>

#include "smoothpoly/arith.hpp"
#include "smoothpoly/dickman.hpp"

namespace smoothpoly {

namespace {

Prescription with_degree(const Prescription& pres, unsigned n) {
  if (pres.empty()) return Prescription(n, {});
  if (pres.n() != n) throw std::invalid_argument("prescription degree mismatch");
  return pres;
}

// digits[j-1] = x_{-j} for j = 1..n+1.
std::complex<double> s_J_digits(const Field& F, const Prescription& pres, const std::vector<Elem>& digits) {
  const unsigned n = pres.n();
  const auto& entries = pres.entries();
  std::size_t next = 0;
  Elem phase = F.trace(digits[n]);
  for (unsigned i = 0; i < n; ++i) {
    if (next < entries.size() && entries[next].first == i) {
      phase = (phase + F.trace(F.mul(entries[next].second, digits[i]))) % F.p();
      ++next;
    } else if (digits[i] != 0) {
      return 0.0;
    }
  }
  return std::pow(static_cast<double>(F.q()), static_cast<double>(n - pres.size())) * F.root_of_unity(phase);
}

// Digits of a / t^{n+1}: x_{-j} = a_{n+1-j}.
std::vector<Elem> grid_digits(std::uint64_t index, std::uint32_t q, unsigned n) {
  std::vector<Elem> a(n + 1);
  for (unsigned i = 0; i <= n; ++i, index /= q) a[i] = static_cast<Elem>(index % q);
  std::vector<Elem> d(n + 1);
  for (unsigned j = 1; j <= n + 1; ++j) d[j - 1] = a[n + 1 - j];
  return d;
}

void check_grid_budget(std::uint32_t q, unsigned n, const Limits& limits, const char* what) {
  const std::uint64_t size = sat_pow(q, n + 1);
  if (size == UINT64_MAX || size > limits.enumeration / (static_cast<std::uint64_t>(n + 1) * q))
    throw BudgetExceeded(std::string(what) + ": q^(n+1) = " + std::to_string(size) +
                         " points exceed the enumeration budget");
}

bool is_major_at(const TorusPoint& xi, const Poly& a, const Poly& g, const ArcParams& p) {
  TorusPoint diff = xi - TorusPoint(a, g);
  if (diff.is_zero()) return true;
  return distance_to_poly(diff).exponent < -static_cast<int>(p.n) + static_cast<int>(p.ell);
}

}  // namespace

SmoothSet::SmoothSet(FieldPtr field, unsigned n, unsigned m, const Limits& limits)
    : field_(std::move(field)), n_(n), m_(m) {
  auto polys = smooth_polys(field_, n, m, limits);
  rows_.reserve(polys.size() * (n + 1));
  for (const auto& c : polys) {
    rows_.insert(rows_.end(), c.begin(), c.end());
    rows_.push_back(1);
  }
}

std::complex<double> e_from_digits(const Field& F, const Elem* c, unsigned deg, const std::vector<Elem>& digits) {
  Elem s = 0;
  for (unsigned i = 0; i <= deg; ++i)
    if (c[i] != 0) s = F.add(s, F.mul(c[i], digits[i]));
  return F.root_of_unity(F.trace(s));
}

std::complex<double> s_smooth(const SmoothSet& set, const TorusPoint& xi) {
  const auto digits = fraction_digits(xi, set.n() + 1);
  const Field& F = *set.field();
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < set.size(); ++i) s += e_from_digits(F, set.row(i), set.n(), digits);
  return s;
}

std::complex<double> s_smooth(const TorusPoint& xi, unsigned n, unsigned m, const Limits& limits) {
  return s_smooth(SmoothSet(xi.g().field(), n, m, limits), xi);
}

std::vector<std::complex<double>> s_smooth_grid(const SmoothSet& set, const Limits& limits) {
  const Field& F = *set.field();
  const std::uint32_t q = F.q();
  const unsigned n = set.n();
  check_grid_budget(q, n, limits, "s_smooth_grid");
  const std::uint64_t size = sat_pow(q, n + 1);
  // Place f at the index with digit j = c_{n-j}; after a q-ary Fourier
  // transform along every digit, entry a holds sum_f e(tr(sum_i c_i a_{n-i})).
  std::vector<std::complex<double>> A(size, 0.0);
  for (std::size_t r = 0; r < set.size(); ++r) {
    const Elem* c = set.row(r);
    std::uint64_t idx = 0;
    for (unsigned j = n + 1; j-- > 0;) idx = idx * q + c[n - j];
    A[idx] += 1.0;
  }
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(q) * q);
  for (Elem x = 0; x < q; ++x)
    for (Elem y = 0; y < q; ++y) phase[x * q + y] = F.root_of_unity(F.trace(F.mul(x, y)));
  std::vector<std::complex<double>> in(q), out(q);
  for (std::uint64_t stride = 1; stride < size; stride *= q)
    for (std::uint64_t base = 0; base < size; base += stride * q)
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (Elem y = 0; y < q; ++y) in[y] = A[base + off + y * stride];
        for (Elem x = 0; x < q; ++x) {
          std::complex<double> s = 0;
          for (Elem y = 0; y < q; ++y) s += phase[x * q + y] * in[y];
          out[x] = s;
        }
        for (Elem x = 0; x < q; ++x) A[base + off + x * stride] = out[x];
      }
  return A;
}

std::complex<double> s_J(const TorusPoint& xi, const Prescription& pres) {
  return s_J_digits(xi.g().F(), pres, fraction_digits(xi, pres.n() + 1));
}

std::complex<double> s_J_direct(const TorusPoint& xi, const Prescription& pres, const Limits& limits) {
  const Field& F = xi.g().F();
  const unsigned n = pres.n();
  const std::uint32_t q = F.q();
  pres.check_field(q);
  const std::uint64_t total = sat_pow(q, n - static_cast<unsigned>(pres.size()));
  if (total > limits.enumeration) throw BudgetExceeded("s_J_direct: prescription set too large");
  const auto digits = fraction_digits(xi, n + 1);
  std::vector<unsigned> free;
  std::vector<Elem> c(n + 1, 0);
  c[n] = 1;
  {
    std::size_t next = 0;
    const auto& entries = pres.entries();
    for (unsigned i = 0; i < n; ++i) {
      if (next < entries.size() && entries[next].first == i)
        c[i] = entries[next++].second;
      else
        free.push_back(i);
    }
  }
  std::complex<double> s = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i : free) {
      c[i] = static_cast<Elem>(v % q);
      v /= q;
    }
    s += e_from_digits(F, c.data(), n, digits);
  }
  return s;
}

bool vanishing_applies(const TorusPoint& xi, const Prescription& pres) {
  const Poly& g = xi.g();
  unsigned k = 0;
  while (g[k] == 0) ++k;
  const int deg_g0 = g.degree() - static_cast<int>(k);
  const unsigned n = pres.n();
  const unsigned K = (n + static_cast<unsigned>(pres.size())) / (static_cast<unsigned>(pres.size()) + 1);
  // 1 < q^{deg g0} <= q^K - 1  <=>  1 <= deg g0 < K
  return deg_g0 >= 1 && deg_g0 < static_cast<int>(K);
}

ParsevalReport parseval_from_grid(const FieldPtr& field, unsigned n, const std::vector<std::complex<double>>& grid,
                                  const Prescription& pres) {
  const Prescription P = with_degree(pres, n);
  P.check_field(field->q());
  const std::uint32_t q = field->q();
  std::complex<double> s = 0;
  for (std::uint64_t a = 0; a < grid.size(); ++a) {
    if (grid[a] == 0.0) continue;
    const auto sj = s_J_digits(*field, P, grid_digits(a, q, n));
    if (sj != 0.0) s += grid[a] * std::conj(sj);
  }
  s /= static_cast<double>(grid.size());
  ParsevalReport rep;
  rep.real = s.real();
  rep.imag = s.imag();
  rep.count = BigInt(std::llround(rep.real));
  rep.residue = std::abs(rep.real - to_double(rep.count));
  rep.clean = rep.residue < 1e-6 && std::abs(rep.imag) < 1e-6;
  return rep;
}

ParsevalReport parseval_count(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                              const Limits& limits) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  const Prescription P = with_degree(pres, n);
  P.check_field(field->q());
  check_grid_budget(field->q(), n, limits, "parseval_count");
  return parseval_from_grid(field, n, s_smooth_grid(SmoothSet(field, n, m, limits), limits), P);
}

double s_J_l1_norm(const FieldPtr& field, const Prescription& pres, const Limits& limits) {
  const unsigned n = pres.n();
  const std::uint32_t q = field->q();
  pres.check_field(q);
  check_grid_budget(q, n, limits, "s_J_l1_norm");
  const std::uint64_t size = sat_pow(q, n + 1);
  double s = 0;
  for (std::uint64_t a = 0; a < size; ++a) s += std::abs(s_J_digits(*field, pres, grid_digits(a, q, n)));
  return s / static_cast<double>(size);
}

ArcParams ArcParams::defaults(unsigned n, unsigned m) {
  if (m > n) throw std::invalid_argument("arc parameters need m <= n");
  ArcParams p;
  p.n = n;
  p.m = m;
  const int d = static_cast<int>(n - m);
  p.kappa = d - 2 <= 0 ? 0 : static_cast<unsigned>((d - 2 + 3) / 4);
  p.ell = static_cast<unsigned>((d + 3) / 4);
  return p;
}

ArcClass classify_arc(const TorusPoint& xi, const ArcParams& params) {
  if (params.kappa > 8) return classify_arc_convergents(xi, params);
  const FieldPtr& F = xi.g().field();
  for (unsigned d = 0; d <= params.kappa; ++d)
    for (std::uint64_t i = 0; i < sat_pow(F->q(), d); ++i) {
      const Poly g = Poly::monic_from_index(F, d, i);
      const Poly a = (g * xi.a()) / xi.g();  // nearest numerator for this g
      if (is_major_at(xi, a, g, params)) {
        TorusPoint w(a, g);
        return {true, w.a(), w.g()};
      }
    }
  return {false, Poly(F), Poly::one(F)};
}

ArcClass classify_arc_convergents(const TorusPoint& xi, const ArcParams& params) {
  const FieldPtr& F = xi.g().field();
  Poly a(F), g = Poly::one(F);
  if (params.kappa >= 1) {
    auto ap = dirichlet_approx(xi, 2 * params.kappa);
    a = ap.a;
    g = ap.g;
  }
  if (is_major_at(xi, a, g, params)) {
    TorusPoint w(a, g);
    return {true, w.a(), w.g()};
  }
  return {false, Poly(F), Poly::one(F)};
}

KappaValue bourgain_exponent(double x, double y, double delta) {
  if (!(x > 0 && y > 0)) throw std::invalid_argument("kappa needs x, y > 0");
  if (delta < 0 || delta > 1) throw std::invalid_argument("kappa needs 0 <= delta <= 1");
  const double r = x / y;
  const double rr = std::round(r);
  const bool integral_ratio = std::abs(r - rr) < 1e-9;
  const bool integers = std::abs(x - std::round(x)) < 1e-9 && std::abs(y - std::round(y)) < 1e-9;
  KappaValue out;
  if (integral_ratio && integers && rr >= 1) {
    out.value = 1.0;
    return out;
  }
  if (r > 1 && r < 2 && !integral_ratio) {
    out.value = 2.0 / (delta + 1.0);
    return out;
  }
  double v;
  if (integral_ratio) {
    v = rr + 1;
    out.flagged = true;
  } else {
    v = std::floor(r) + 1;
  }
  if (r < 1) out.flagged = true;
  out.value = 2 * v / ((v + 1) * delta + v - 1);
  return out;
}

double major_main_term(const Poly& g, unsigned l, unsigned n, unsigned m) {
  if (!g.is_monic()) throw std::invalid_argument("major arc modulus must be monic");
  if (static_cast<int>(n) < g.degree()) throw std::invalid_argument("major_main_term needs deg g <= n");
  const double ql = std::pow(static_cast<double>(g.F().q()), l);
  double s = 0;
  for (const Poly& d : divisors(g)) {
    const Poly h = g / d;
    const int mu = mobius(h);
    if (mu == 0) continue;
    s += mu * to_double(psi_coprime(n - static_cast<unsigned>(d.degree()), m, h)) / (ql * to_double(euler_phi(h)));
  }
  return s;
}

TwistedSum twisted_class_sum(const Poly& a, const Poly& g, const Poly& b, unsigned l, unsigned n, unsigned m,
                             double eps, double constant, const Limits& limits) {
  if (!g.is_monic()) throw std::invalid_argument("twisted sum modulus must be monic");
  if (!gcd(a, g).is_one() && !(a.is_zero() && g.is_one()))
    throw std::invalid_argument("twisted sum needs gcd(a, g) = 1");
  if (l + g.degree() >= static_cast<int>(n)) throw std::invalid_argument("twisted sum needs l + deg g < n");
  if (!b.is_monic() || b.degree() < static_cast<int>(l))
    throw std::invalid_argument("class representative must be monic of degree >= l");
  const SmoothSet set(g.field(), n, m, limits);
  const Field& F = g.F();
  const auto digits = fraction_digits(TorusPoint(a, g), n + 1);
  const int db = b.degree();
  TwistedSum out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Elem* c = set.row(i);
    bool same = true;
    for (unsigned j = 1; j <= l && same; ++j) same = c[n - j] == b[db - j];
    if (same) out.exact += e_from_digits(F, c, n, digits);
  }
  out.main = major_main_term(g, l, n, m);
  const double q = F.q();
  out.envelope = constant * std::pow(q, (0.5 + eps) * n) * std::exp(eps * (l + g.degree())) *
                 std::pow(q, g.degree() / 2.0);
  out.within = std::abs(out.exact - out.main) <= out.envelope;
  return out;
}

MajorRhoRow major_rho_form(std::uint32_t q, unsigned n, unsigned m, unsigned l, unsigned k) {
  if (k < 1 || k + l >= n) throw std::invalid_argument("major_rho_form needs 1 <= k < n - l");
  const double qd = q;
  MajorRhoRow row;
  row.k = k;
  const double denom = std::pow(qd, l) * (qd - 1);
  row.main_exact = (qd * to_double(psi_exact(q, n - k, m)) - to_double(psi_exact(q, n - k + 1, m))) / denom;
  const double scale = std::pow(qd, static_cast<double>(n) - l - k + 1) / (qd - 1);
  const RhoTable& T = rho_table();
  const double u0 = static_cast<double>(n - k) / m, u1 = static_cast<double>(n - k + 1) / m;
  row.rho_diff = scale * (T.rho(u0) - T.rho(u1));
  row.rho_deriv = -scale / m * T.deriv(u1, 1);
  return row;
}

MinorDiagnostic minor_arc_diagnostic(const SmoothSet& set, const ArcParams& params, const Limits& limits) {
  const FieldPtr& F = set.field();
  const unsigned n = set.n();
  const auto grid = s_smooth_grid(set, limits);
  const Poly den = Poly::monomial(F, 1, n + 1);
  MinorDiagnostic out{0, 0, 0, 0, TorusPoint::zero(F)};
  for (std::uint64_t a = 0; a < grid.size(); ++a) {
    TorusPoint xi(Poly::from_index(F, n + 1, a), den);
    if (classify_arc(xi, params).major) {
      ++out.major_points;
      continue;
    }
    ++out.minor_points;
    if (std::abs(grid[a]) > out.max_abs) {
      out.max_abs = std::abs(grid[a]);
      out.argmax = xi;
    }
  }
  const double q = F->q();
  out.envelope = static_cast<double>(set.m()) * set.m() * std::sqrt(static_cast<double>(n)) *
                 std::pow(q, (7.0 * n + set.m() + 4) / 8);
  return out;
}

std::complex<double> monic_sum_direct(const TorusPoint& xi, unsigned n, const Limits& limits) {
  const FieldPtr& F = xi.g().field();
  const std::uint64_t total = sat_pow(F->q(), n);
  if (total > limits.enumeration) throw BudgetExceeded("monic_sum_direct: M(n) too large");
  const auto digits = fraction_digits(xi, n + 1);
  std::complex<double> s = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const Poly f = Poly::monic_from_index(F, n, i);
    s += e_from_digits(*F, f.coeffs().data(), n, digits);
  }
  return s;
}

std::complex<double> monic_sum_closed(const TorusPoint& xi, unsigned n) {
  const Field& F = xi.g().F();
  const auto digits = fraction_digits(xi, n + 1);
  for (unsigned j = 0; j < n; ++j)
    if (digits[j] != 0) return 0.0;
  return std::pow(static_cast<double>(F.q()), n) * F.root_of_unity(F.trace(digits[n]));
}

std::complex<double> orthogonality_average(const Poly& f, unsigned n) {
  if (f.degree() > static_cast<int>(n)) throw std::invalid_argument("orthogonality_average needs deg f <= n");
  const Field& F = f.F();
  const std::uint32_t q = F.q();
  const std::uint64_t total = sat_pow(q, n + 1);
  std::complex<double> s = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto digits = grid_digits(a, q, n);
    Elem acc = 0;
    for (unsigned i = 0; i <= n; ++i) acc = F.add(acc, F.mul(f[i], digits[i]));
    s += F.root_of_unity(F.trace(acc));
  }
  return s / static_cast<double>(total);
}

}  // namespace smoothpoly
