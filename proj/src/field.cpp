#include "smoothpoly/field.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace smoothpoly {

namespace {

using Coeffs = std::vector<Elem>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Remainder of a by a monic b over F_p.
Coeffs mod_p(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t s = (lead * b[i]) % p;
      a[shift + i] = static_cast<Elem>((a[shift + i] + p - s) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad integer in field spec: '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool Field::is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::vector<Elem>> Field::builtin_modulus(std::uint32_t p, unsigned k) {
  if (p == 2 && k == 2) return Coeffs{1, 1, 1};
  if (p == 2 && k == 3) return Coeffs{1, 1, 0, 1};
  if (p == 2 && k == 4) return Coeffs{1, 1, 0, 0, 1};
  if (p == 3 && k == 2) return Coeffs{1, 0, 1};
  if (p == 3 && k == 3) return Coeffs{1, 2, 0, 1};
  if (p == 5 && k == 2) return Coeffs{2, 0, 1};
  return std::nullopt;
}

FieldPtr Field::make(std::uint32_t p, unsigned k, std::optional<std::vector<Elem>> modulus) {
  if (!is_prime_number(p)) throw std::invalid_argument("field characteristic must be prime");
  if (p >= (1u << 20)) throw std::invalid_argument("characteristic must be below 2^20");
  if (k < 1) throw std::invalid_argument("extension degree must be at least 1");

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = k;
  f->barrett_ = UINT64_MAX / p;

  if (k == 1) {
    if (modulus && modulus->size() > 2)
      throw std::invalid_argument("prime field takes no modulus of degree > 1");
    f->q_ = p;
  } else {
    if (!modulus) modulus = builtin_modulus(p, k);
    if (!modulus) throw std::invalid_argument("no built-in modulus for this extension field");
    Coeffs m = *modulus;
    for (Elem c : m)
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    trim(m);
    if (m.size() != k + 1 || m.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree k");
    std::uint64_t q = sat_pow(p, k);
    if (q > 65536) throw std::invalid_argument("extension fields are limited to q <= 65536");
    // Trial division by every monic polynomial of degree 1..k/2.
    for (unsigned d = 1; d <= k / 2; ++d) {
      std::uint64_t count = sat_pow(p, d);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Coeffs div(d + 1);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < d; ++i) {
          div[i] = static_cast<Elem>(v % p);
          v /= p;
        }
        div[d] = 1;
        if (mod_p(m, div, p).empty())
          throw std::invalid_argument("modulus is reducible over F_p");
      }
    }
    f->modulus_ = m;
    f->q_ = static_cast<std::uint32_t>(q);
    f->build_extension_tables();
  }

  f->inv_.assign(f->q_, 0);
  for (Elem a = 1; a < f->q_; ++a) f->inv_[a] = f->pow(a, f->q_ - 2);

  f->roots_.resize(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
    f->roots_[j] = {std::cos(ang), std::sin(ang)};
  }
  return f;
}

FieldPtr Field::parse(std::string_view spec) {
  std::string_view s = spec;
  if (s.starts_with("q=")) s.remove_prefix(2);
  std::optional<Coeffs> modulus;
  if (auto colon = s.find(':'); colon != std::string_view::npos) {
    Coeffs m;
    std::string_view rest = s.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      m.push_back(static_cast<Elem>(parse_uint(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    modulus = std::move(m);
    s = s.substr(0, colon);
  }
  std::uint64_t p = 0;
  unsigned k = 1;
  if (auto caret = s.find('^'); caret != std::string_view::npos) {
    p = parse_uint(s.substr(0, caret));
    k = static_cast<unsigned>(parse_uint(s.substr(caret + 1)));
  } else {
    std::uint64_t q = parse_uint(s);
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    // Smallest prime factor, then check q is a pure power of it.
    p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    std::uint64_t r = q;
    k = 0;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) throw std::invalid_argument("field order must be a prime power");
  }
  if (p >= (1u << 20)) throw std::invalid_argument("characteristic must be below 2^20");
  return make(static_cast<std::uint32_t>(p), k, std::move(modulus));
}

std::vector<Elem> Field::digits(Elem a) const {
  std::vector<Elem> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<Elem>& d) const {
  Elem v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
  return v;
}

Elem Field::add_ext(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg_ext(Elem a) const {
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

Elem Field::mul_reference(Elem a, Elem b) const {
  Coeffs da = digits(a), db = digits(b);
  Coeffs prod(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = static_cast<Elem>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  Coeffs r = mod_p(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_digits(r);
}

void Field::build_extension_tables() {
  if (q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0, scale = 1, x = a, y = b;
        for (unsigned i = 0; i < k_; ++i) {
          r += ((x % p_ + y % p_) % p_) * scale;
          scale *= p_;
          x /= p_;
          y /= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(r);
      }
  }
  // Find a primitive element by brute force, then fill log/antilog tables.
  const std::uint32_t order = q_ - 1;
  exp_.assign(order, 0);
  log_.assign(q_, 0);
  for (Elem g = 2; g < q_; ++g) {
    Elem x = 1;
    std::uint32_t e = 0;
    bool ok = true;
    for (; e < order; ++e) {
      if (e > 0 && x == 1) {
        ok = false;
        break;
      }
      exp_[e] = x;
      x = mul_reference(x, g);
    }
    if (ok && x == 1) break;
    if (g + 1 == q_) throw std::logic_error("no primitive element found");
  }
  for (std::uint32_t e = 0; e < order; ++e) log_[exp_[e]] = e;
  trace_.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a) {
    Elem s = 0, x = a;
    for (unsigned i = 0; i < k_; ++i) {
      s = add(s, x);
      x = pow(x, p_);
    }
    trace_[a] = s;
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero field element");
  return inv_.empty() ? pow(a, q_ - 2) : inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::string Field::spec() const {
  std::ostringstream os;
  os << "q=" << p_ << '^' << k_;
  if (k_ > 1) {
    os << ':';
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  }
  return os.str();
}

}  // namespace smoothpoly
