#include "smoothpoly/smooth_count.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <optional>
#include <sstream>

#include "enumerate.hpp"
#include "smoothpoly/arith.hpp"

namespace smoothpoly {

namespace {

unsigned parse_unsigned(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  return v;
}

void check_budget(std::uint64_t work, const Limits& limits, const char* what) {
  if (work > limits.enumeration)
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(work) +
                         " polynomials exceed the enumeration budget of " +
                         std::to_string(limits.enumeration));
}

// Multiplies series s (truncated at z^n) by (1 - z^r)^{-P}.
void mul_inverse_power(std::vector<BigInt>& s, unsigned r, const BigInt& P) {
  const unsigned n = static_cast<unsigned>(s.size()) - 1;
  std::vector<BigInt> b(n / r + 1);
  b[0] = 1;
  for (unsigned j = 1; j < b.size(); ++j) b[j] = b[j - 1] * (P + j - 1) / j;
  for (unsigned i = n + 1; i-- > 0;) {
    BigInt acc = 0;
    for (unsigned j = 0; j * r <= i; ++j) acc += b[j] * s[i - j * r];
    s[i] = acc;
  }
}

struct DpLayout {
  unsigned k = 0;  // low block {0..k-1}
  unsigned l = 0;  // top block {n-l..n-1}
};

std::optional<DpLayout> dp_layout(std::uint32_t q, unsigned n, const Prescription& pres) {
  const auto idx = pres.indices();
  std::optional<DpLayout> best;
  for (std::size_t split = 0; split <= idx.size(); ++split) {
    DpLayout lay;
    lay.k = split > 0 ? idx[split - 1] + 1 : 0;
    lay.l = split < idx.size() ? n - idx[split] : 0;
    if (!best || lay.k + lay.l < best->k + best->l) best = lay;
  }
  if (sat_pow(q, best->k + best->l) > 1024) return std::nullopt;
  return best;
}

}  // namespace

Prescription::Prescription(unsigned n, std::vector<std::pair<unsigned, Elem>> entries)
    : n_(n), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first >= n)
      throw std::invalid_argument("prescribed index " + std::to_string(entries_[i].first) +
                                  " outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    if (i > 0 && entries_[i].first == entries_[i - 1].first)
      throw std::invalid_argument("duplicate prescribed index " + std::to_string(entries_[i].first));
  }
}

Prescription Prescription::parse(unsigned n, std::string_view text) {
  std::vector<std::pair<unsigned, Elem>> entries;
  std::string_view rest = text;
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("prescription entries must look like i=v: '" + std::string(item) + "'");
    entries.emplace_back(parse_unsigned(item.substr(0, eq), "prescription index"),
                         parse_unsigned(item.substr(eq + 1), "prescription value"));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return Prescription(n, std::move(entries));
}

Prescription Prescription::zero_prefix(unsigned n, unsigned r) {
  std::vector<std::pair<unsigned, Elem>> entries;
  for (unsigned i = 0; i < r; ++i) entries.emplace_back(i, 0);
  return Prescription(n, std::move(entries));
}

std::vector<unsigned> Prescription::indices() const {
  std::vector<unsigned> out;
  for (const auto& [i, v] : entries_) out.push_back(i);
  return out;
}

void Prescription::check_field(std::uint32_t q) const {
  for (const auto& [i, v] : entries_)
    if (v >= q) throw std::invalid_argument("prescribed value " + std::to_string(v) + " is not in F_q");
}

bool Prescription::matches(const Poly& f) const {
  if (f.degree() != static_cast<int>(n_) || !f.is_monic()) return false;
  for (const auto& [i, v] : entries_)
    if (f[i] != v) return false;
  return true;
}

std::string Prescription::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    os << (i ? "," : "") << entries_[i].first << '=' << entries_[i].second;
  return os.str();
}

std::vector<BigInt> psi_table(std::uint32_t q, unsigned n, unsigned m) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  std::vector<BigInt> s(n + 1, 0);
  s[0] = 1;
  for (unsigned r = 1; r <= std::min(m, n); ++r) mul_inverse_power(s, r, count_irreducibles(q, r));
  return s;
}

std::vector<BigInt> psi_table_recurrence(std::uint32_t q, unsigned n, unsigned m) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  std::vector<BigInt> weight(n + 1, 0);  // sum_{d | j, d <= m} d pi_q(d)
  for (unsigned d = 1; d <= std::min(m, n); ++d) {
    BigInt w = d * count_irreducibles(q, d);
    for (unsigned j = d; j <= n; j += d) weight[j] += w;
  }
  std::vector<BigInt> psi(n + 1, 0);
  psi[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    BigInt acc = 0;
    for (unsigned j = 1; j <= k; ++j) acc += psi[k - j] * weight[j];
    psi[k] = acc / k;
  }
  return psi;
}

BigInt psi_exact(std::uint32_t q, unsigned n, unsigned m) { return psi_table(q, n, m)[n]; }

std::vector<BigInt> psi_coprime_table(unsigned n, unsigned m, const Poly& g) {
  if (g.is_zero()) throw std::invalid_argument("psi_coprime needs a nonzero modulus");
  std::vector<BigInt> s = psi_table(g.F().q(), n, m);
  for (const Factor& fac : factor(g)) {
    const unsigned d = static_cast<unsigned>(fac.base.degree());
    if (d > m) continue;
    for (unsigned i = n + 1; i-- > d;) s[i] -= s[i - d];
  }
  return s;
}

BigInt psi_coprime(unsigned n, unsigned m, const Poly& g) { return psi_coprime_table(n, m, g)[n]; }

std::vector<std::uint64_t> largest_degree_profile(const FieldPtr& field, unsigned n,
                                                  const Prescription& pres, const Limits& limits) {
  if (pres.n() != n && !pres.empty()) throw std::invalid_argument("prescription degree mismatch");
  pres.check_field(field->q());
  check_budget(sat_pow(field->q(), n - static_cast<unsigned>(pres.size())), limits, "largest_degree_profile");
  using Hist = std::vector<std::uint64_t>;
  auto states = detail::enumerate_monic<Hist>(
      *field, n, pres, limits.thread_count(), [n](Hist& h, auto& kernel, const Elem* c) {
        if (h.empty()) h.assign(n + 1, 0);
        ++h[kernel.largest_factor_degree(c, n)];
      });
  Hist total(n + 1, 0);
  for (const Hist& h : states)
    for (std::size_t d = 0; d < h.size(); ++d) total[d] += h[d];
  return total;
}

CountReport count_prescribed(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                             const Limits& limits) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  if (pres.n() != n && !pres.empty()) throw std::invalid_argument("prescription degree mismatch");
  pres.check_field(field->q());
  const auto start = std::chrono::steady_clock::now();
  check_budget(sat_pow(field->q(), n - static_cast<unsigned>(pres.size())), limits, "count_prescribed");
  auto states = detail::enumerate_monic<std::uint64_t>(
      *field, n, pres, limits.thread_count(), [n, m](std::uint64_t& count, auto& kernel, const Elem* c) {
        if (kernel.is_smooth(c, n, m)) ++count;
      });
  CountReport rep;
  for (std::uint64_t s : states) rep.exact += s;
  rep.q = field->q();
  rep.n = n;
  rep.m = m;
  rep.prescription = pres.to_text();
  rep.method = "enumeration";
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool dp_applicable(std::uint32_t q, unsigned n, const Prescription& pres) {
  return dp_layout(q, n, pres).has_value();
}

std::vector<BigInt> prescribed_counts_dp(const FieldPtr& field, unsigned n, unsigned max_m,
                                         const Prescription& pres, const Limits& limits) {
  if (pres.n() != n && !pres.empty()) throw std::invalid_argument("prescription degree mismatch");
  const std::uint32_t q = field->q();
  pres.check_field(q);
  const auto lay = dp_layout(q, n, pres);
  if (!lay) throw std::invalid_argument("prescription spans too many coefficients for the dp method");
  const unsigned k = lay->k, l = lay->l;
  const std::size_t qk = sat_pow(q, k);
  const std::size_t S = qk * sat_pow(q, l);
  const Field& F = *field;

  // A state packs (f mod t^k, coefficients 1..l of f* mod t^{l+1}) in base q.
  auto decode = [&](std::size_t s, std::vector<Elem>& lo, std::vector<Elem>& hi) {
    lo.assign(k, 0);
    hi.assign(l, 0);
    for (unsigned i = 0; i < k; ++i, s /= q) lo[i] = static_cast<Elem>(s % q);
    for (unsigned j = 0; j < l; ++j, s /= q) hi[j] = static_cast<Elem>(s % q);
  };
  auto encode = [&](const std::vector<Elem>& lo, const std::vector<Elem>& hi) {
    std::size_t s = 0;
    for (unsigned j = l; j-- > 0;) s = s * q + hi[j];
    for (unsigned i = k; i-- > 0;) s = s * q + lo[i];
    return s;
  };
  std::vector<std::uint32_t> table(S * S);
  {
    std::vector<Elem> la, ha, lb, hb, lc(k), hc(l);
    for (std::size_t a = 0; a < S; ++a) {
      decode(a, la, ha);
      for (std::size_t b = 0; b < S; ++b) {
        decode(b, lb, hb);
        for (unsigned i = 0; i < k; ++i) {
          Elem acc = 0;
          for (unsigned x = 0; x <= i; ++x) acc = F.add(acc, F.mul(la[x], lb[i - x]));
          lc[i] = acc;
        }
        // (1 + sum h_j t^j)(1 + sum g_j t^j) mod t^{l+1}
        for (unsigned j = 1; j <= l; ++j) {
          Elem acc = F.add(ha[j - 1], hb[j - 1]);
          for (unsigned x = 1; x < j; ++x) acc = F.add(acc, F.mul(ha[x - 1], hb[j - x - 1]));
          hc[j - 1] = acc;
        }
        table[a * S + b] = static_cast<std::uint32_t>(encode(lc, hc));
      }
    }
  }
  auto state_of = [&](const Poly& w) {
    std::vector<Elem> lo(k), hi(l);
    const int d = w.degree();
    for (unsigned i = 0; i < k; ++i) lo[i] = w[i];
    for (unsigned j = 1; j <= l; ++j) hi[j - 1] = d - static_cast<int>(j) >= 0 ? w[d - j] : 0;
    return encode(lo, hi);
  };
  std::vector<std::pair<std::size_t, std::size_t>> checks;  // (digit position, value)
  for (const auto& [i, v] : pres.entries())
    checks.emplace_back(i < k ? i : k + (n - i) - 1, v);
  auto matches = [&](std::size_t s) {
    std::vector<Elem> lo, hi;
    decode(s, lo, hi);
    for (const auto& [pos, v] : checks)
      if ((pos < k ? lo[pos] : hi[pos - k]) != v) return false;
    return true;
  };
  std::vector<char> wanted(S);
  for (std::size_t s = 0; s < S; ++s) wanted[s] = matches(s);

  std::vector<std::vector<BigInt>> dp(n + 1, std::vector<BigInt>(S));
  dp[0][state_of(Poly::one(field))] = 1;
  std::vector<BigInt> counts(max_m + 1, 0);
  auto total = [&] {
    BigInt c = 0;
    for (std::size_t s = 0; s < S; ++s)
      if (wanted[s]) c += dp[n][s];
    return c;
  };
  counts[0] = total();
  const unsigned top = std::min(max_m, n == 0 ? 0 : n - 1);
  for (unsigned d = 1; d <= top; ++d) {
    std::vector<BigInt> per_state(S, 0);
    for (const Poly& w : enumerate_irreducibles(field, d, limits)) per_state[state_of(w)] += 1;
    for (std::size_t x = 0; x < S; ++x) {
      if (per_state[x] == 0) continue;
      // (1 - [x] z^d)^{-N} = sum_j C(N+j-1, j) [x^j] z^{dj}
      const unsigned jmax = n / d;
      std::vector<BigInt> binom(jmax + 1);
      std::vector<std::size_t> power(jmax + 1);
      binom[0] = 1;
      power[0] = state_of(Poly::one(field));
      for (unsigned j = 1; j <= jmax; ++j) {
        binom[j] = binom[j - 1] * (per_state[x] + j - 1) / j;
        power[j] = table[power[j - 1] * S + x];
      }
      for (unsigned e = n; e >= d; --e) {
        for (unsigned j = 1; j * d <= e; ++j) {
          const auto& src = dp[e - j * d];
          for (std::size_t s = 0; s < S; ++s)
            if (src[s] != 0) dp[e][table[s * S + power[j]]] += binom[j] * src[s];
        }
      }
    }
    counts[d] = total();
  }
  const BigInt all = big_pow(q, n - static_cast<unsigned>(pres.size()));
  for (unsigned m = std::max(1u, n); m <= max_m; ++m) counts[m] = all;
  return counts;
}

CountReport count_prescribed_dp(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                                const Limits& limits) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  CountReport rep;
  rep.exact = prescribed_counts_dp(field, n, m, pres, limits)[m];
  rep.q = field->q();
  rep.n = n;
  rep.m = m;
  rep.prescription = pres.to_text();
  rep.method = "dp";
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::uint64_t class_index(const Poly& f, unsigned l) {
  const int n = f.degree();
  std::uint64_t idx = 0;
  for (unsigned j = l; j-- > 0;) {
    const int pos = n - 1 - static_cast<int>(j);
    idx = idx * f.F().q() + (pos >= 0 ? f[static_cast<std::size_t>(pos)] : 0);
  }
  return idx;
}

std::vector<std::uint64_t> class_histogram(const FieldPtr& field, unsigned n, unsigned m, unsigned l,
                                           const Limits& limits) {
  if (l < 1 || l > n) throw std::invalid_argument("class length l must lie in [1, n]");
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  check_budget(sat_pow(field->q(), n), limits, "class_histogram");
  const std::uint32_t q = field->q();
  const std::size_t classes = sat_pow(q, l);
  using Hist = std::vector<std::uint64_t>;
  auto states = detail::enumerate_monic<Hist>(
      *field, n, Prescription(), limits.thread_count(), [&](Hist& h, auto& kernel, const Elem* c) {
        if (h.empty()) h.assign(classes, 0);
        if (!kernel.is_smooth(c, n, m)) return;
        std::uint64_t idx = 0;
        for (unsigned j = l; j-- > 0;) idx = idx * q + c[n - 1 - j];
        ++h[idx];
      });
  Hist total(classes, 0);
  for (const Hist& h : states)
    for (std::size_t i = 0; i < h.size(); ++i) total[i] += h[i];
  return total;
}

BigInt count_in_class(unsigned n, unsigned m, const Poly& b, unsigned l, const Limits& limits) {
  if (l < 1 || l > n) throw std::invalid_argument("class length l must lie in [1, n]");
  if (!b.is_monic() || b.degree() < static_cast<int>(l))
    throw std::invalid_argument("class representative must be monic of degree >= l");
  std::vector<std::pair<unsigned, Elem>> entries;
  const int db = b.degree();
  for (unsigned j = 0; j < l; ++j) entries.emplace_back(n - 1 - j, b[static_cast<std::size_t>(db - 1 - static_cast<int>(j))]);
  return count_prescribed(b.field(), n, m, Prescription(n, std::move(entries)), limits).exact;
}

std::vector<std::vector<Elem>> smooth_polys(const FieldPtr& field, unsigned n, unsigned m,
                                            const Limits& limits) {
  if (m < 1) throw std::invalid_argument("smoothness bound m must be at least 1");
  check_budget(sat_pow(field->q(), n), limits, "smooth_polys");
  using List = std::vector<std::vector<Elem>>;
  auto states = detail::enumerate_monic<List>(
      *field, n, Prescription(), limits.thread_count(), [n, m](List& out, auto& kernel, const Elem* c) {
        if (kernel.is_smooth(c, n, m)) out.emplace_back(c, c + n);
      });
  List all;
  for (List& s : states) {
    if (all.size() + s.size() > limits.smooth_cache)
      throw BudgetExceeded("smooth_polys: more than " + std::to_string(limits.smooth_cache) + " polynomials");
    for (auto& v : s) all.push_back(std::move(v));
  }
  return all;
}

}  // namespace smoothpoly
