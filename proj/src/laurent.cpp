#include "smoothpoly/laurent.hpp"

#include <cmath>

namespace smoothpoly {

TorusPoint::TorusPoint(const Poly& a, const Poly& g) : a_(a.field()), g_(g.field()) {
  if (g.is_zero()) throw std::domain_error("torus point with zero denominator");
  Poly r = a % g;
  if (r.is_zero()) {
    a_ = Poly(g.field());
    g_ = Poly::one(g.field());
    return;
  }
  Poly d = gcd(r, g);
  Poly num = r / d;
  Poly den = g / d;
  Elem inv = g.F().inv(den.lead());
  a_ = num.scaled(inv);
  g_ = den.scaled(inv);
}

TorusPoint TorusPoint::zero(const FieldPtr& field) {
  return TorusPoint(Poly(field), Poly::one(field));
}

TorusPoint TorusPoint::operator-() const { return TorusPoint(-a_, g_); }

TorusPoint TorusPoint::scaled(const Poly& f) const { return TorusPoint(a_ * f, g_); }

TorusPoint operator+(const TorusPoint& x, const TorusPoint& y) {
  return TorusPoint(x.a_ * y.g_ + y.a_ * x.g_, x.g_ * y.g_);
}

Elem laurent_coeff(const Poly& a, const Poly& g, int i) {
  if (g.is_zero()) throw std::domain_error("Laurent expansion with zero denominator");
  if (i >= 0) return (a / g)[static_cast<std::size_t>(i)];
  return (a.shifted(static_cast<unsigned>(-i)) / g)[0];
}

Elem laurent_coeff(const TorusPoint& x, int i) {
  if (i >= 0) return 0;
  return laurent_coeff(x.a(), x.g(), i);
}

std::vector<Elem> fraction_digits(const TorusPoint& x, unsigned count) {
  std::vector<Elem> out(count, 0);
  if (x.is_zero()) return out;
  const Field& F = x.g().F();
  const int dg = x.g().degree();
  const auto gc = x.g().coeffs();
  std::vector<Elem> r(dg + 1, 0);
  for (int i = 0; i <= x.a().degree(); ++i) r[i] = x.a()[i];
  // Long division: shift the remainder by t, peel off the degree-dg term.
  for (unsigned j = 0; j < count; ++j) {
    for (int i = dg; i > 0; --i) r[i] = r[i - 1];
    r[0] = 0;
    Elem d = r[dg];
    out[j] = d;
    if (d == 0) continue;
    for (int i = 0; i <= dg; ++i) r[i] = F.sub(r[i], F.mul(d, gc[i]));
  }
  return out;
}

Elem e_phase(const TorusPoint& x) {
  if (x.is_zero()) return 0;
  // x_{-1} is the coefficient of t^{deg g - 1} in a, since g is monic.
  return x.g().F().trace(x.a()[static_cast<std::size_t>(x.g().degree() - 1)]);
}

std::complex<double> e_char(const TorusPoint& x) { return x.g().F().root_of_unity(e_phase(x)); }

double NormValue::value() const {
  return is_zero ? 0.0 : std::pow(static_cast<double>(q), exponent);
}

NormValue distance_to_poly(const TorusPoint& x) {
  NormValue v;
  v.q = x.g().F().q();
  if (x.is_zero()) return v;
  v.is_zero = false;
  v.exponent = x.a().degree() - x.g().degree();
  return v;
}

Approximation dirichlet_approx(const TorusPoint& x, unsigned n) {
  if (n < 1) throw std::invalid_argument("dirichlet_approx needs n >= 1");
  const FieldPtr& fp = x.g().field();
  // Convergents h_j/k_j of xi = [0; c_1, c_2, ...].
  Poly h_prev = Poly::one(fp), h = Poly(fp);
  Poly k_prev = Poly(fp), k = Poly::one(fp);
  Poly num = x.g(), den = x.a();
  Poly best_h = h, best_k = k;
  while (!den.is_zero()) {
    auto [c, r] = divrem(num, den);
    Poly h_next = c * h + h_prev;
    Poly k_next = c * k + k_prev;
    if (2 * k_next.degree() > static_cast<int>(n)) break;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
    best_h = h;
    best_k = k;
    num = std::move(den);
    den = std::move(r);
  }
  Elem inv = fp->inv(best_k.lead());
  return {best_h.scaled(inv), best_k.scaled(inv)};
}

std::string to_text(const TorusPoint& x) { return to_text(x.a()) + "/" + to_text(x.g()); }

TorusPoint parse_torus(const FieldPtr& field, std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw std::invalid_argument("torus point must have the form a/g");
  return TorusPoint(parse_poly(field, text.substr(0, slash)), parse_poly(field, text.substr(slash + 1)));
}

}  // namespace smoothpoly
