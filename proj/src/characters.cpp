#include "smoothpoly/characters.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "smoothpoly/arith.hpp"
#include "smoothpoly/laurent.hpp"
#include "smoothpoly/smooth_count.hpp"

namespace smoothpoly {

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

// Smith normal form of the square matrix a in place, with column operations
// accumulated in v and their inverses in vinv (a_out = u a_in v).
void smith_normal_form(Matrix& a, Matrix& v, Matrix& vinv) {
  const std::size_t s = a.size();
  v.assign(s, std::vector<BigInt>(s, 0));
  vinv = v;
  for (std::size_t i = 0; i < s; ++i) v[i][i] = vinv[i][i] = 1;
  auto col_sub = [&](std::size_t j, std::size_t t, const BigInt& k) {  // col j -= k col t
    for (std::size_t i = 0; i < s; ++i) {
      a[i][j] -= k * a[i][t];
      v[i][j] -= k * v[i][t];
    }
    for (std::size_t c = 0; c < s; ++c) vinv[t][c] += k * vinv[j][c];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < s; ++r) {
      std::swap(a[r][i], a[r][j]);
      std::swap(v[r][i], v[r][j]);
    }
    std::swap(vinv[i], vinv[j]);
  };
  auto row_sub = [&](std::size_t i, std::size_t t, const BigInt& k) {
    for (std::size_t c = 0; c < s; ++c) a[i][c] -= k * a[t][c];
  };
  for (std::size_t t = 0; t < s; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = s, pj = s;
      for (std::size_t i = t; i < s; ++i)
        for (std::size_t j = t; j < s; ++j)
          if (a[i][j] != 0 && (pi == s || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
      if (pi == s) return;
      std::swap(a[t], a[pi]);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < s; ++i) {
        if (a[i][t] == 0) continue;
        row_sub(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s; ++j) {
        if (a[t][j] == 0) continue;
        col_sub(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = s;
      for (std::size_t i = t + 1; i < s && bad == s; ++i)
        for (std::size_t j = t + 1; j < s; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == s) break;
      for (std::size_t c = 0; c < s; ++c) a[t][c] += a[bad][c];
    }
    if (a[t][t] < 0) {
      for (std::size_t r = 0; r < s; ++r) {
        a[r][t] = -a[r][t];
        v[r][t] = -v[r][t];
      }
      for (auto& x : vinv[t]) x = -x;
    }
  }
}

std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

// Raw class counts of all monic polynomials of degree n.
std::vector<std::uint64_t> monic_counts(const UnitGroup& G, unsigned n, const Limits& limits) {
  const std::uint64_t total = sat_pow(G.field()->q(), n);
  if (total > limits.enumeration)
    throw BudgetExceeded("M(" + std::to_string(n) + ") has " + std::to_string(total) +
                         " polynomials, over the enumeration budget");
  std::vector<Poly> polys;
  polys.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) polys.push_back(Poly::monic_from_index(G.field(), n, i));
  return class_counts(G, polys);
}

LPolyReport finish_l_poly(std::vector<std::complex<double>> coeffs, std::uint32_t q, double tol) {
  LPolyReport rep;
  rep.coeffs = std::move(coeffs);
  const unsigned top = static_cast<unsigned>(rep.coeffs.size()) - 1;
  for (unsigned i = 0; i <= top; ++i)
    if (std::abs(rep.coeffs[i]) > tol) rep.degree = i;
  rep.vanishes_above = std::abs(rep.coeffs[top]) <= tol;
  std::vector<std::complex<double>> trimmed(rep.coeffs.begin(), rep.coeffs.begin() + rep.degree + 1);
  rep.inverse_roots = inverse_roots(trimmed);
  const double sq = std::sqrt(static_cast<double>(q));
  for (const auto& alpha : rep.inverse_roots) {
    const double r = std::abs(alpha);
    if (std::abs(r - 1.0) <= tol)
      ++rep.unit_roots;
    else if (std::abs(r - sq) <= tol)
      ++rep.sqrt_q_roots;
    else
      ++rep.other_roots;
  }
  rep.weil_ok = rep.vanishes_above && rep.other_roots == 0 && rep.unit_roots <= 1;
  return rep;
}

}  // namespace

bool Relation::related(const Poly& f, const Poly& h) const {
  if (f.is_zero() || h.is_zero()) throw std::invalid_argument("relation needs nonzero polynomials");
  const Poly fm = f.monic(), hm = h.monic();
  return ((fm - hm) % g).is_zero() && truncate(reverse(fm), l + 1) == truncate(reverse(hm), l + 1);
}

std::shared_ptr<const UnitGroup> UnitGroup::make(unsigned l, const Poly& g, const Limits& limits) {
  if (!g.is_monic()) throw std::invalid_argument("unit group modulus must be monic");
  const std::uint32_t q = g.F().q();
  const unsigned dg = static_cast<unsigned>(g.degree());
  const BigInt order = big_pow(q, l) * euler_phi(g);
  if (order > limits.group)
    throw BudgetExceeded("group order " + order.str() + " exceeds the group budget of " +
                         std::to_string(limits.group));
  const std::uint64_t raw = sat_pow(q, l + dg);
  if (raw > std::max<std::uint64_t>(64 * limits.group, 1 << 16) || raw > (1ull << 31))
    throw BudgetExceeded("residue table of size " + std::to_string(raw) + " is too large");

  std::shared_ptr<UnitGroup> G(new UnitGroup());
  G->l_ = l;
  G->g_ = g;
  G->q_ = q;
  G->top_size_ = sat_pow(q, l);
  G->raw_size_ = raw;
  G->order_ = order.convert_to<std::uint64_t>();
  G->unit_.assign(raw, 0);
  const std::uint64_t residues = sat_pow(q, dg);
  for (std::uint64_t r = 0; r < residues; ++r) {
    if (!gcd(Poly::from_index(g.field(), dg, r), g).is_one()) continue;
    for (std::uint64_t h = 0; h < G->top_size_; ++h) G->unit_[h + G->top_size_ * r] = 1;
  }
  for (std::uint64_t i = 0; i < raw; ++i)
    if (G->unit_[i]) G->units_.push_back(static_cast<std::uint32_t>(i));
  if (G->units_.size() != G->order_) throw std::logic_error("unit count disagrees with q^l Phi(g)");
  G->identity_ = G->raw_index(Poly::one(g.field()));
  G->decompose();
  return G;
}

std::uint32_t UnitGroup::raw_index(const Poly& f) const {
  const int d = f.degree();
  std::uint64_t h = 0;
  for (unsigned j = l_; j >= 1; --j) h = h * q_ + (d - static_cast<int>(j) >= 0 ? f[d - j] : 0);
  return combine(static_cast<std::uint32_t>(h), f % g_);
}

std::uint32_t UnitGroup::top_part(const Poly& b) const {
  return static_cast<std::uint32_t>(raw_index(b) % top_size_);
}

std::uint32_t UnitGroup::combine(std::uint32_t top, const Poly& r) const {
  const unsigned dg = static_cast<unsigned>(g_.degree());
  return static_cast<std::uint32_t>(top + top_size_ * (r % g_).index_below(dg));
}

std::optional<std::uint32_t> UnitGroup::element_of(const Poly& f) const {
  if (f.is_zero()) throw std::invalid_argument("characters are not defined at the zero polynomial");
  const std::uint32_t raw = raw_index(f.monic());
  if (!unit_[raw]) return std::nullopt;
  return raw;
}

std::uint32_t UnitGroup::mul(std::uint32_t a, std::uint32_t b) const {
  const Field& F = g_.F();
  const unsigned dg = static_cast<unsigned>(g_.degree());
  std::vector<Elem> ha(l_ + 1, 0), hb(l_ + 1, 0);
  std::uint64_t ta = a % top_size_, tb = b % top_size_;
  for (unsigned j = 1; j <= l_; ++j, ta /= q_, tb /= q_) {
    ha[j] = static_cast<Elem>(ta % q_);
    hb[j] = static_cast<Elem>(tb % q_);
  }
  std::uint64_t top = 0;
  for (unsigned j = l_; j >= 1; --j) {
    Elem acc = F.add(ha[j], hb[j]);
    for (unsigned x = 1; x < j; ++x) acc = F.add(acc, F.mul(ha[x], hb[j - x]));
    top = top * q_ + acc;
  }
  std::uint64_t res = 0;
  if (dg > 0) {
    std::vector<Elem> ra(dg), rb(dg), prod(2 * dg, 0);
    std::uint64_t xa = a / top_size_, xb = b / top_size_;
    for (unsigned i = 0; i < dg; ++i, xa /= q_, xb /= q_) {
      ra[i] = static_cast<Elem>(xa % q_);
      rb[i] = static_cast<Elem>(xb % q_);
    }
    for (unsigned i = 0; i < dg; ++i)
      if (ra[i] != 0)
        for (unsigned j = 0; j < dg; ++j) prod[i + j] = F.add(prod[i + j], F.mul(ra[i], rb[j]));
    for (unsigned i = 2 * dg - 1; i >= dg; --i) {
      const Elem c = prod[i];
      if (c == 0) continue;
      for (unsigned k = 0; k < dg; ++k) prod[i - dg + k] = F.sub(prod[i - dg + k], F.mul(c, g_[k]));
    }
    for (unsigned i = dg; i-- > 0;) res = res * q_ + prod[i];
  }
  return static_cast<std::uint32_t>(top + top_size_ * res);
}

void UnitGroup::decompose() {
  // Polycyclic series: each new generator x_s has relative order k_s over
  // <x_0..x_{s-1}>, giving the relation x_s^{k_s} = prod x_i^{e_i}.
  const std::size_t n = units_.size();
  std::vector<std::int32_t> pos(raw_size_, -1);
  for (std::size_t i = 0; i < n; ++i) pos[units_[i]] = static_cast<std::int32_t>(i);
  std::size_t smax = 1;
  while ((1ull << smax) <= n) ++smax;
  std::vector<std::uint32_t> coords(n * smax, 0);
  std::vector<char> in_h(n, 0);
  std::vector<std::uint32_t> members{static_cast<std::uint32_t>(pos[identity_])};
  in_h[members[0]] = 1;
  std::vector<std::uint32_t> old_gens;
  std::vector<std::vector<BigInt>> rels;
  for (std::size_t p = 0; p < n; ++p) {
    if (in_h[p]) continue;
    const std::uint32_t x = units_[p];
    const std::size_t s = old_gens.size();
    std::uint32_t y = x;
    std::uint64_t k = 1;
    while (!in_h[pos[y]]) {
      y = mul(y, x);
      ++k;
    }
    std::vector<BigInt> row(s + 1, 0);
    for (std::size_t i = 0; i < s; ++i) row[i] = -BigInt(coords[pos[y] * smax + i]);
    row[s] = k;
    rels.push_back(std::move(row));
    const std::size_t old_size = members.size();
    std::uint32_t xp = x;
    for (std::uint64_t j = 1; j < k; ++j, xp = mul(xp, x))
      for (std::size_t m = 0; m < old_size; ++m) {
        const std::uint32_t h = members[m];
        const std::uint32_t e = static_cast<std::uint32_t>(pos[mul(units_[h], xp)]);
        in_h[e] = 1;
        std::copy_n(&coords[h * smax], s, &coords[e * smax]);
        coords[e * smax + s] = static_cast<std::uint32_t>(j);
        members.push_back(e);
      }
    old_gens.push_back(x);
  }
  const std::size_t s = old_gens.size();
  Matrix a(s, std::vector<BigInt>(s, 0)), v, vinv;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < rels[i].size(); ++j) a[i][j] = rels[i][j];
  smith_normal_form(a, v, vinv);

  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < s; ++t)
    if (a[t][t] != 1) kept.push_back(t);
  d_.clear();
  for (std::size_t t : kept) d_.push_back(a[t][t].convert_to<std::uint64_t>());
  const std::size_t r = d_.size();
  std::vector<std::vector<std::uint64_t>> vm(s, std::vector<std::uint64_t>(r));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) vm[i][j] = mod_u64(v[i][kept[j]], d_[j]);
  logs_.assign(n * r, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t j = 0; j < r; ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t i = 0; i < s; ++i) acc += static_cast<unsigned __int128>(coords[p * smax + i]) * vm[i][j];
      logs_[p * r + j] = static_cast<std::uint32_t>(acc % d_[j]);
    }
  logs_pos_ = std::move(pos);

  auto power = [&](std::uint32_t base, std::uint64_t e) {
    std::uint32_t acc = identity_;
    for (; e; e >>= 1, base = mul(base, base))
      if (e & 1) acc = mul(acc, base);
    return acc;
  };
  gens_.clear();
  for (std::size_t j = 0; j < r; ++j) {
    std::uint32_t y = identity_;
    for (std::size_t i = 0; i < s; ++i) y = mul(y, power(old_gens[i], mod_u64(vinv[kept[j]][i], order_)));
    gens_.push_back(y);
  }
  // Verify orders and logs of the new basis.
  std::uint64_t prod = 1;
  for (std::size_t j = 0; j < r; ++j) {
    auto e = log(gens_[j]);
    for (std::size_t i = 0; i < r; ++i)
      if (e[i] != (i == j ? 1u : 0u)) throw std::logic_error("generator has an unexpected discrete log");
    if (power(gens_[j], d_[j]) != identity_) throw std::logic_error("generator order check failed");
    for (std::uint64_t dv = 2; dv * dv <= d_[j]; ++dv)
      if (d_[j] % dv == 0 && (power(gens_[j], d_[j] / dv) == identity_ || power(gens_[j], dv) == identity_))
        throw std::logic_error("generator order is smaller than its invariant factor");
    if (j + 1 < r && d_[j + 1] % d_[j] != 0) throw std::logic_error("invariant factors do not divide");
    prod *= d_[j];
  }
  if (prod != order_) throw std::logic_error("invariant factors do not multiply to the group order");
  const std::uint64_t N = exponent();
  roots_.resize(N);
  for (std::uint64_t k = 0; k < N; ++k)
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N));
}

std::vector<std::uint64_t> UnitGroup::log(std::uint32_t raw) const {
  if (raw >= raw_size_ || !unit_[raw]) throw std::invalid_argument("discrete log of a non-unit");
  const std::size_t r = rank();
  const std::size_t p = static_cast<std::size_t>(logs_pos_[raw]);
  return std::vector<std::uint64_t>(logs_.begin() + p * r, logs_.begin() + (p + 1) * r);
}

std::uint64_t UnitGroup::pairing(std::uint32_t raw, const std::vector<std::uint64_t>& e) const {
  const std::size_t r = rank();
  const std::size_t p = static_cast<std::size_t>(logs_pos_[raw]);
  const std::uint64_t N = exponent();
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < r; ++j)
    acc = (acc + (logs_[p * r + j] * e[j] % d_[j]) * (N / d_[j])) % N;
  return acc;
}

Character::Character(UnitGroupPtr group, std::vector<std::uint64_t> exps)
    : group_(std::move(group)), e_(std::move(exps)) {
  const auto& d = group_->invariants();
  if (e_.size() != d.size())
    throw std::invalid_argument("character needs " + std::to_string(d.size()) + " exponents");
  for (std::size_t j = 0; j < d.size(); ++j)
    if (e_[j] >= d[j]) throw std::invalid_argument("character exponent out of range");
}

Character Character::principal(UnitGroupPtr group) {
  const std::size_t r = group->rank();
  return Character(std::move(group), std::vector<std::uint64_t>(r, 0));
}

Character Character::from_index(UnitGroupPtr group, std::uint64_t index) {
  if (index >= group->order()) throw std::invalid_argument("character index out of range");
  std::vector<std::uint64_t> e;
  for (std::uint64_t d : group->invariants()) {
    e.push_back(index % d);
    index /= d;
  }
  return Character(std::move(group), std::move(e));
}

std::uint64_t Character::index() const {
  std::uint64_t idx = 0;
  const auto& d = group_->invariants();
  for (std::size_t j = d.size(); j-- > 0;) idx = idx * d[j] + e_[j];
  return idx;
}

bool Character::is_trivial() const {
  for (auto x : e_)
    if (x != 0) return false;
  return true;
}

std::complex<double> Character::at(std::uint32_t raw) const {
  if (!group_->is_unit(raw)) return 0.0;
  return group_->root(group_->pairing(raw, e_));
}

std::complex<double> Character::operator()(const Poly& f) const { return char_eval(*this, f); }

Character Character::conj() const {
  std::vector<std::uint64_t> e = e_;
  const auto& d = group_->invariants();
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = (d[j] - e[j]) % d[j];
  return Character(group_, std::move(e));
}

std::vector<Character> all_characters(const UnitGroupPtr& group) {
  std::vector<Character> out;
  out.reserve(group->order());
  for (std::uint64_t i = 0; i < group->order(); ++i) out.push_back(Character::from_index(group, i));
  return out;
}

std::complex<double> char_eval(const Character& chi, const Poly& f, bool* normalized) {
  auto raw = chi.group().element_of(f);
  if (normalized) *normalized = !f.is_monic();
  return raw ? chi.at(*raw) : 0.0;
}

std::vector<std::uint64_t> class_counts(const UnitGroup& group, const std::vector<Poly>& polys) {
  std::vector<std::uint64_t> counts(group.elements().empty() ? 0 : group.elements().back() + 1, 0);
  for (const Poly& f : polys)
    if (auto raw = group.element_of(f)) ++counts[*raw];
  return counts;
}

std::vector<std::complex<double>> character_sums(const UnitGroupPtr& group,
                                                 const std::vector<std::uint64_t>& counts) {
  std::vector<std::uint32_t> support;
  for (std::uint32_t raw = 0; raw < counts.size(); ++raw)
    if (counts[raw] != 0) support.push_back(raw);
  std::vector<std::complex<double>> sums(group->order());
  for (std::uint64_t i = 0; i < group->order(); ++i) {
    const Character chi = Character::from_index(group, i);
    std::complex<double> s = 0;
    for (std::uint32_t raw : support) s += static_cast<double>(counts[raw]) * chi.at(raw);
    sums[i] = s;
  }
  return sums;
}

std::complex<double> char_sum_irreducibles(const Character& chi, unsigned n, const Limits& limits) {
  std::complex<double> s = 0;
  for (const Poly& w : enumerate_irreducibles(chi.group().field(), n, limits)) s += chi(w);
  return s;
}

double irreducible_sum_bound(const UnitGroup& group, unsigned n) {
  const double c = static_cast<double>(group.l()) - 1.0 + group.g().degree();
  return c * std::pow(static_cast<double>(group.field()->q()), n / 2.0) / n;
}

SmoothCharSum char_sum_smooth(const Character& chi, unsigned n, unsigned m, double eps, double constant,
                              const Limits& limits) {
  const FieldPtr& F = chi.group().field();
  SmoothCharSum out;
  for (auto c : smooth_polys(F, n, m, limits)) {
    c.push_back(1);
    out.sum += chi(Poly(F, std::move(c)));
  }
  const double q = F->q();
  out.envelope = constant * std::pow(q, (0.5 + eps) * n) *
                 std::exp(eps * (chi.group().l() + chi.group().g().degree()));
  out.within = std::abs(out.sum) <= out.envelope;
  return out;
}

std::vector<std::complex<double>> inverse_roots(const std::vector<std::complex<double>>& coeffs) {
  if (coeffs.empty() || coeffs[0] == 0.0) throw std::invalid_argument("constant term must be nonzero");
  const Eigen::Index D = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (D == 0) return {};
  // alpha_i are the roots of z^D + (c_1/c_0) z^{D-1} + ... + c_D/c_0.
  std::vector<std::complex<double>> a(D + 1);
  for (Eigen::Index k = 0; k <= D; ++k) a[k] = coeffs[k] / coeffs[0];
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index i = 1; i < D; ++i) C(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < D; ++i) C(i, D - 1) = -a[D - i];
  // Balancing by powers of two.
  for (bool changed = true; changed;) {
    changed = false;
    for (Eigen::Index i = 0; i < D; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index j = 0; j < D; ++j)
        if (j != i) {
          c += std::abs(C(j, i));
          r += std::abs(C(i, j));
        }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double s = c + r;
      while (c < r / 2) c *= 2, r /= 2, f *= 2;
      while (c >= r * 2) c /= 2, r *= 2, f /= 2;
      if ((c + r) < 0.95 * s) {
        changed = true;
        C.row(i) /= f;
        C.col(i) *= f;
      }
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().begin(), es.eigenvalues().end());
  for (auto& z : roots)
    for (int it = 0; it < 3; ++it) {
      std::complex<double> p = 1.0, dp = 0.0;
      for (Eigen::Index k = 1; k <= D; ++k) {
        dp = dp * z + p;
        p = p * z + a[k];
      }
      if (std::abs(dp) == 0) break;
      z -= p / dp;
    }
  return roots;
}

LPolyReport l_poly(const Character& chi, double tol, const Limits& limits) {
  if (chi.is_trivial()) throw std::invalid_argument("the principal character has no L-polynomial");
  const UnitGroup& G = chi.group();
  const unsigned top = G.l() + static_cast<unsigned>(G.g().degree());
  std::vector<std::complex<double>> coeffs(top + 1);
  for (unsigned n = 0; n <= top; ++n) {
    const auto counts = monic_counts(G, n, limits);
    for (std::uint32_t raw = 0; raw < counts.size(); ++raw)
      if (counts[raw]) coeffs[n] += static_cast<double>(counts[raw]) * chi.at(raw);
  }
  return finish_l_poly(std::move(coeffs), G.field()->q(), tol);
}

std::vector<std::pair<Character, LPolyReport>> l_polys(const UnitGroupPtr& group, double tol,
                                                       const Limits& limits) {
  const unsigned top = group->l() + static_cast<unsigned>(group->g().degree());
  std::vector<std::vector<std::complex<double>>> sums;
  for (unsigned n = 0; n <= top; ++n) sums.push_back(character_sums(group, monic_counts(*group, n, limits)));
  std::vector<std::pair<Character, LPolyReport>> out;
  for (std::uint64_t i = 1; i < group->order(); ++i) {
    std::vector<std::complex<double>> coeffs(top + 1);
    for (unsigned n = 0; n <= top; ++n) coeffs[n] = sums[n][i];
    out.emplace_back(Character::from_index(group, i), finish_l_poly(std::move(coeffs), group->field()->q(), tol));
  }
  return out;
}

GaussCheck gauss_identity_check(unsigned l, const Poly& g, const Poly& b, double tol, const Limits& limits) {
  if (b.is_zero()) throw std::invalid_argument("b must be nonzero");
  auto G = UnitGroup::make(l, g, limits);
  const std::uint32_t top = G->top_part(b.monic());
  const unsigned dg = static_cast<unsigned>(g.degree());
  std::vector<std::pair<std::uint32_t, std::complex<double>>> terms;
  for (std::uint64_t r = 0; r < sat_pow(g.F().q(), dg); ++r) {
    Poly rp = Poly::from_index(g.field(), dg, r);
    if (!gcd(rp, g).is_one()) continue;
    terms.emplace_back(G->combine(top, rp), e_char(TorusPoint(rp, g)));
  }
  GaussCheck out;
  for (const Character& chi : all_characters(G)) {
    std::complex<double> s = 0;
    for (const auto& [raw, e] : terms) s += chi.at(raw) * e;
    out.lhs += std::norm(s);
  }
  const BigInt phi = euler_phi(g);
  out.rhs = big_pow(g.F().q(), l) * phi * phi;
  out.pass = std::abs(out.lhs - to_double(out.rhs)) <= tol;
  return out;
}

RamanujanSum ramanujan_sum(const Poly& f, const Poly& g, const Limits& limits) {
  if (g.is_zero()) throw std::invalid_argument("Ramanujan sum needs a nonzero modulus");
  if (!g.is_monic()) throw std::invalid_argument("Ramanujan sum modulus must be monic");
  const unsigned dg = static_cast<unsigned>(g.degree());
  RamanujanSum out;
  for (std::uint64_t r = 0; r < sat_pow(g.F().q(), dg); ++r) {
    Poly a = Poly::from_index(g.field(), dg, r);
    if (!gcd(a, g).is_one()) continue;
    out.direct += e_char(TorusPoint(a * f, g));
  }
  for (const Poly& d : divisors(gcd(f, g), limits)) out.formula += d.norm() * mobius(g / d);
  out.agree = std::abs(out.direct.real() - to_double(out.formula)) < 1e-6 && std::abs(out.direct.imag()) < 1e-6;
  return out;
}

double phi_lower_envelope(const Poly& g) {
  if (g.is_zero()) throw std::invalid_argument("Phi lower bound needs g != 0");
  const double q = g.F().q();
  const int d = g.degree();
  const double norm = std::pow(q, d);
  if (d <= 1) return norm / 2;
  return norm / (2 * (std::log(static_cast<double>(d)) / std::log(q) + 1));
}

}  // namespace smoothpoly
