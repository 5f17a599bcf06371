#include "smoothpoly/poly.hpp"

#include <charconv>
#include <sstream>

namespace smoothpoly {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Elem c : c_)
    if (c >= field_->q()) throw std::invalid_argument("coefficient outside field");
  trim();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, unsigned d) {
  std::vector<Elem> v(d + 1, 0);
  v[d] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::monic_from_index(FieldPtr field, unsigned n, std::uint64_t index) {
  const std::uint32_t q = field->q();
  std::vector<Elem> v(n + 1);
  for (unsigned i = 0; i < n; ++i) {
    v[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  v[n] = 1;
  Poly f(std::move(field));
  f.c_ = std::move(v);
  return f;
}

Poly Poly::from_index(FieldPtr field, unsigned n, std::uint64_t index) {
  const std::uint32_t q = field->q();
  std::vector<Elem> v(n);
  for (unsigned i = 0; i < n; ++i) {
    v[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  Poly f(std::move(field));
  f.c_ = std::move(v);
  f.trim();
  return f;
}

BigInt Poly::norm() const {
  if (is_zero()) return 0;
  return big_pow(field_->q(), static_cast<unsigned>(degree()));
}

std::uint64_t Poly::index_below(unsigned n) const {
  std::uint64_t idx = 0;
  for (unsigned i = n; i-- > 0;) idx = idx * field_->q() + (*this)[i];
  return idx;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
  if (!field_->same_as(*o.field_)) throw std::invalid_argument("polynomials over different fields");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Elem& c : r.c_) c = field_->neg(c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly r(a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  const Field& F = *a.field_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
  }
  r.trim();
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(Elem s) const {
  Poly r = *this;
  for (Elem& c : r.c_) c = field_->mul(c, s);
  r.trim();
  return r;
}

Poly Poly::shifted(unsigned k) const {
  if (is_zero()) return *this;
  Poly r = *this;
  r.c_.insert(r.c_.begin(), k, 0);
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(field_->inv(lead()));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

DivRem divrem(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (!f.F().same_as(g.F())) throw std::invalid_argument("polynomials over different fields");
  const Field& F = f.F();
  if (f.degree() < g.degree()) return {Poly(f.field()), f};
  std::vector<Elem> rem(f.coeffs().begin(), f.coeffs().end());
  const auto gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  const Elem inv_lead = F.inv(g.lead());
  std::vector<Elem> quot(rem.size() - dg, 0);
  for (std::size_t top = rem.size(); top-- > dg;) {
    Elem c = F.mul(rem[top], inv_lead);
    quot[top - dg] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i)
      rem[top - dg + i] = F.sub(rem[top - dg + i], F.mul(c, gc[i]));
  }
  rem.resize(dg);
  return {Poly(f.field(), std::move(quot)), Poly(f.field(), std::move(rem))};
}

Poly operator/(const Poly& f, const Poly& g) { return divrem(f, g).quot; }
Poly operator%(const Poly& f, const Poly& g) { return divrem(f, g).rem; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const FieldPtr& fp = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(fp), s1(fp);
  Poly t0(fp), t1 = Poly::one(fp);
  while (!r1.is_zero()) {
    auto [qt, r2] = divrem(r0, r1);
    Poly s2 = s0 - qt * s1;
    Poly t2 = t0 - qt * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Elem inv = fp->inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly reverse(const Poly& f) {
  std::vector<Elem> v(f.coeffs().rbegin(), f.coeffs().rend());
  return Poly(f.field(), std::move(v));
}

Poly derivative(const Poly& f) {
  if (f.degree() < 1) return Poly(f.field());
  const Field& F = f.F();
  std::vector<Elem> v(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i)
    v[i - 1] = F.mul(f[i], static_cast<Elem>(i % F.p()));
  return Poly(f.field(), std::move(v));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(Poly base, const BigInt& e, const Poly& m) {
  Poly result = Poly::one(base.field()) % m;
  base = base % m;
  const auto bits = e == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, base, m);
  }
  return result;
}

Poly truncate(const Poly& f, unsigned n) {
  auto c = f.coeffs();
  std::vector<Elem> v(c.begin(), c.begin() + std::min<std::size_t>(n, c.size()));
  return Poly(f.field(), std::move(v));
}

std::string to_text(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

Poly parse_poly(const FieldPtr& field, std::string_view text) {
  std::vector<Elem> v;
  std::string_view rest = text;
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (rest.empty()) throw std::invalid_argument("empty polynomial text");
  while (true) {
    auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed polynomial text: '" + std::string(text) + "'");
    if (x >= field->q()) throw std::invalid_argument("polynomial coefficient outside field");
    v.push_back(static_cast<Elem>(x));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return Poly(field, std::move(v));
}

}  // namespace smoothpoly
