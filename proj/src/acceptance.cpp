#include "smoothpoly/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "smoothpoly/arith.hpp"
#include "smoothpoly/characters.hpp"
#include "smoothpoly/circle.hpp"
#include "smoothpoly/dickman.hpp"
#include "smoothpoly/predict.hpp"

namespace smoothpoly {

namespace {

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

std::vector<Poly> monics_of_degree(const FieldPtr& F, unsigned d) {
  std::vector<Poly> out;
  const std::uint64_t count = sat_pow(F->q(), d);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(Poly::monic_from_index(F, d, i));
  return out;
}

std::vector<Poly> monics_upto(const FieldPtr& F, unsigned d) {
  std::vector<Poly> out;
  for (unsigned k = 0; k <= d; ++k)
    for (Poly& f : monics_of_degree(F, k)) out.push_back(std::move(f));
  return out;
}

Prescription random_prescription(std::mt19937_64& rng, std::uint32_t q, unsigned n, unsigned max_size) {
  std::vector<std::pair<unsigned, Elem>> entries;
  const unsigned size = std::min<unsigned>(rng() % (max_size + 1), n);
  while (entries.size() < size) {
    const unsigned i = rng() % n;
    bool dup = false;
    for (auto& e : entries) dup |= e.first == i;
    if (!dup) entries.emplace_back(i, static_cast<Elem>(rng() % q));
  }
  return Prescription(n, entries);
}

TorusPoint random_point(const FieldPtr& F, std::mt19937_64& rng, unsigned max_deg) {
  const unsigned d = 1 + rng() % max_deg;
  const std::uint64_t span = sat_pow(F->q(), d);
  return TorusPoint(Poly::from_index(F, d, rng() % span), Poly::monic_from_index(F, d, rng() % span));
}

// Pairs (l, g) with l + deg g <= bound and a nontrivial group.
template <class Fn>
void for_each_modulus(const FieldPtr& F, unsigned bound, Fn fn) {
  for (const Poly& g : monics_upto(F, bound))
    for (unsigned l = 0; l + g.degree() <= bound; ++l) {
      if (l == 0 && g.degree() == 0) continue;
      fn(l, g);
    }
}

CriterionResult c1_parseval(const AcceptanceOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  auto F = Field::make(2);
  int checked = 0, bad = 0;
  double worst = 0;
  for (unsigned n : {6u, 8u, 10u})
    for (unsigned m : {2u, 3u, 4u}) {
      const auto grid = s_smooth_grid(SmoothSet(F, n, m, opt.limits), opt.limits);
      for (int k = 0; k < 20; ++k) {
        const Prescription pres = random_prescription(rng, 2, n, 3);
        const ParsevalReport p = parseval_from_grid(F, n, grid, pres);
        const BigInt exact = count_prescribed(F, n, m, pres, opt.limits).exact;
        worst = std::max({worst, p.residue, std::abs(p.imag)});
        ++checked;
        if (p.count != exact || p.residue >= 1e-6 || std::abs(p.imag) >= 1e-6) {
          ++bad;
          r.table.push_back("n=" + std::to_string(n) + " m=" + std::to_string(m) + " " + pres.to_text() +
                            ": parseval " + to_string(p.count) + " exact " + to_string(exact));
        }
      }
    }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " prescriptions, " + std::to_string(bad) + " mismatches, max residue " +
             fmt("%.2e", worst);
  return r;
}

CriterionResult c2_psi(const AcceptanceOptions& opt) {
  CriterionResult r;
  int checked = 0, bad = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 1; n <= 12; ++n) {
      const auto hist = largest_degree_profile(F, n, Prescription(), opt.limits);
      BigInt running = 0;
      for (unsigned m = 1; m <= n; ++m) {
        running += hist[m];
        ++checked;
        if (psi_exact(q, n, m) != running) {
          ++bad;
          r.table.push_back("q=" + std::to_string(q) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " (q,n,m) cells against enumeration, " + std::to_string(bad) + " mismatches";
  return r;
}

CriterionResult c3_zero_prefix(const AcceptanceOptions& opt) {
  CriterionResult r;
  int checked = 0, bad = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 2; n <= 10; ++n)
      for (unsigned rr = 1; rr <= 3 && rr < n; ++rr)
        for (unsigned m = 1; m <= n; ++m) {
          ++checked;
          const BigInt counted = count_prescribed(F, n, m, Prescription::zero_prefix(n, rr), opt.limits).exact;
          if (counted != psi_exact(q, n - rr, m)) ++bad;
        }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " cells, " + std::to_string(bad) + " mismatches";
  return r;
}

// rho on [2,3] is 1 - ln u + int_2^u ln(t-1)/t dt; composite Simpson on [2,3].
double rho3_quadrature() {
  const int steps = 4000;
  const double h = 1.0 / steps;
  auto f = [](double t) { return std::log(t - 1) / t; };
  double s = f(2.0) + f(3.0);
  for (int k = 1; k < steps; ++k) s += (k % 2 ? 4 : 2) * f(2.0 + k * h);
  return 1 - std::log(3.0) + s * h / 3;
}

CriterionResult c4_dickman(const AcceptanceOptions&) {
  CriterionResult r;
  const RhoTable& T = rho_table();
  const double e2 = std::abs(T.rho(2.0) - (1 - std::log(2.0)));
  double residual = 0;
  for (int k = 11; k <= 200; ++k) {
    const double u = k / 10.0;
    residual = std::max(residual, std::abs(u * T.interpolant_deriv(u) + T.rho(u - 1)));
  }
  const double e3 = std::abs(T.rho(3.0) - rho3_quadrature());
  r.pass = e2 <= 1e-8 && residual <= 1e-9 && e3 <= 1e-8;
  r.detail = fmt("|rho(2)-(1-ln2)| = %.2e, max DDE residual = %.2e, |rho(3)-quadrature| = %.2e", e2, residual, e3);
  return r;
}

CriterionResult c5_weil(const AcceptanceOptions& opt) {
  CriterionResult r;
  int checked = 0, degree_bad = 0, modulus_bad = 0, extra_unit = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for_each_modulus(F, 4, [&](unsigned l, const Poly& g) {
      for (const auto& [chi, lp] : l_polys(UnitGroup::make(l, g, opt.limits), 1e-6, opt.limits)) {
        ++checked;
        const bool deg_ok = lp.vanishes_above && lp.degree + 1 <= l + g.degree();
        degree_bad += !deg_ok;
        modulus_bad += lp.other_roots > 0;
        extra_unit += lp.unit_roots > 1;
        if (!lp.weil_ok && r.table.size() < 12)
          r.table.push_back("q=" + std::to_string(q) + " l=" + std::to_string(l) + " g=" + to_text(g) +
                            " chi#" + std::to_string(chi.index()) + ": roots of modulus 1: " +
                            std::to_string(lp.unit_roots) + ", sqrt(q): " + std::to_string(lp.sqrt_q_roots) +
                            ", other: " + std::to_string(lp.other_roots));
      }
    });
  }
  r.pass = degree_bad == 0 && modulus_bad == 0 && extra_unit == 0;
  r.detail = std::to_string(checked) + " characters; degree violations " + std::to_string(degree_bad) +
             ", roots off {1, sqrt q} " + std::to_string(modulus_bad) + ", more than one root of modulus 1 " +
             std::to_string(extra_unit);
  return r;
}

CriterionResult c6_gauss(const AcceptanceOptions& opt) {
  CriterionResult r;
  int checked = 0, bad = 0;
  double worst = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (const Poly& g : monics_upto(F, 3))
      for (unsigned l = 0; l <= 2; ++l)
        for (const Poly& b : monics_of_degree(F, l)) {
          const GaussCheck c = gauss_identity_check(l, g, b, 1e-6, opt.limits);
          ++checked;
          bad += !c.pass;
          worst = std::max(worst, std::abs(c.lhs - to_double(c.rhs)));
        }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " (l, g, b) cases, " + std::to_string(bad) + " failures, max |LHS-RHS| " +
             fmt("%.2e", worst);
  return r;
}

CriterionResult c7_ramanujan(const AcceptanceOptions& opt) {
  CriterionResult r;
  auto F = Field::make(2);
  const auto polys = monics_upto(F, 4);
  int checked = 0, bad = 0;
  for (const Poly& f : polys)
    for (const Poly& g : polys) {
      ++checked;
      bad += !ramanujan_sum(f, g, opt.limits).agree;
    }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " pairs, " + std::to_string(bad) + " disagreements";
  return r;
}

CriterionResult c8_char_sum(const AcceptanceOptions& opt) {
  CriterionResult r;
  long checked = 0, violations = 0;
  double worst_ratio = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    std::vector<std::vector<Poly>> irreducibles(13);
    for (unsigned n = 1; n <= 12; ++n) irreducibles[n] = enumerate_irreducibles(F, n, opt.limits);
    for_each_modulus(F, 4, [&](unsigned l, const Poly& g) {
      auto G = UnitGroup::make(l, g, opt.limits);
      const unsigned h = l + g.degree();  // l - 1 + deg g + 1
      for (unsigned n = h; n <= 12; ++n) {
        if (n == 0) continue;
        const auto sums = character_sums(G, class_counts(*G, irreducibles[n]));
        const double bound = irreducible_sum_bound(*G, n);
        for (std::size_t i = 1; i < sums.size(); ++i) {
          ++checked;
          const double a = std::abs(sums[i]);
          if (a > bound + 1e-9) {
            ++violations;
            if (r.table.size() < 12)
              r.table.push_back("q=" + std::to_string(q) + " l=" + std::to_string(l) + " g=" + to_text(g) +
                                " n=" + std::to_string(n) + " chi#" + std::to_string(i) + ": |sum| = " +
                                fmt("%.4f > bound %.4f", a, bound));
          }
          if (bound > 0) worst_ratio = std::max(worst_ratio, a / bound);
        }
      }
    });
  }
  r.pass = violations == 0;
  r.detail = std::to_string(checked) + " (chi, n) sums; " + std::to_string(violations) +
             " exceed (l-1+deg g) q^{n/2}/n, max ratio " + fmt("%.3f", worst_ratio);
  return r;
}

CriterionResult c9_s_J(const AcceptanceOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 9);
  double worst = 0;
  for (int k = 0; k < 500; ++k) {
    auto F = Field::make(k % 2 ? 2 : 3);
    const unsigned n = 3 + rng() % (F->q() == 2 ? 7 : 4);
    const Prescription pres = random_prescription(rng, F->q(), n, 3);
    const TorusPoint xi =
        k % 3 ? random_point(F, rng, n + 1)
              : TorusPoint(Poly::from_index(F, n + 1, rng() % sat_pow(F->q(), n + 1)), Poly::monomial(F, 1, n + 1));
    worst = std::max(worst, std::abs(s_J(xi, pres) - s_J_direct(xi, pres, opt.limits)));
  }

  auto F2 = Field::make(2);
  const unsigned n = 10;
  long applied = 0, nonzero = 0;
  for (unsigned d = 1; d <= 5; ++d)
    for (const Poly& g : monics_of_degree(F2, d))
      for (std::uint64_t ai = 0; ai < sat_pow(2, d); ++ai) {
        const Poly a = Poly::from_index(F2, d, ai);
        if (!gcd(a, g).is_one()) continue;
        const TorusPoint xi(a, g);
        for (unsigned i = 0; i < n; ++i)
          for (Elem v = 0; v < 2; ++v) {
            const Prescription pres(n, {{i, v}});
            if (!vanishing_applies(xi, pres)) continue;
            ++applied;
            nonzero += std::abs(s_J_direct(xi, pres, opt.limits)) > 1e-9;
          }
      }

  double l1_worst = 0;
  for (int k = 0; k < 10; ++k) {
    auto F = Field::make(k % 2 ? 2 : 3);
    const unsigned nn = F->q() == 2 ? 8 : 5;
    const Prescription pres = random_prescription(rng, F->q(), nn, 3);
    l1_worst = std::max(l1_worst, std::abs(s_J_l1_norm(F, pres, opt.limits) - 1.0));
  }
  r.pass = worst <= 1e-9 && nonzero == 0 && applied > 0 && l1_worst <= 1e-9;
  r.detail = fmt("closed vs direct max diff %.2e; ", worst) + std::to_string(applied) + " vanishing cases, " +
             std::to_string(nonzero) + " nonzero; " + fmt("L1 norm max |norm-1| %.2e", l1_worst);
  return r;
}

CriterionResult c10_psi_envelope(const AcceptanceOptions&) {
  CriterionResult r;
  const std::uint32_t q = 5;
  const unsigned m = 8;
  int checked = 0, bad = 0;
  for (unsigned n = 8; n <= 32; ++n) {
    if (m * m < n * std::log(static_cast<double>(n))) continue;
    const double u = static_cast<double>(n) / m;
    const double ratio = to_double(psi_exact(q, n, m)) / (std::pow(q, n) * rho_table().rho(u));
    const double dev = std::abs(ratio - 1), allowed = 2 * u * std::log(u + 1) / m;
    ++checked;
    bad += dev > allowed;
    r.table.push_back("n=" + std::to_string(n) + fmt(" u=%.4f |ratio-1|=%.4e allowed=%.4e", u, dev, allowed));
  }
  r.pass = bad == 0 && checked > 0;
  r.detail = std::to_string(checked) + " values of n, " + std::to_string(bad) + " outside 2 u log(u+1)/m";
  return r;
}

CriterionResult c11_trend(const AcceptanceOptions& opt) {
  CriterionResult r;
  int cells = 0, better = 0;
  PredictOptions po;
  po.with_exact = true;
  po.limits = opt.limits;
  r.table.push_back("q n m I exact main corrected rel_err_main rel_err_corrected lambda0");
  for (std::uint32_t q : {3u, 4u, 5u})
    for (unsigned m : {4u, 6u}) {
      const unsigned n = 12;
      auto F = Field::parse(std::to_string(q));
      const auto p = predict(F, n, m, Prescription(n, {{1, 0}}), Variant::thm2, po);
      ++cells;
      better += *p.rel_err_corrected <= *p.rel_err_main;
      std::ostringstream row;
      row << q << ' ' << n << ' ' << m << " {1=0} " << to_string(*p.exact) << ' '
          << fmt("%.6g %.6g %.4e", p.main, p.corrected, *p.rel_err_main) << ' '
          << fmt("%.4e %.4e", *p.rel_err_corrected, p.lambda0);
      r.table.push_back(row.str());
    }
  r.pass = 3 * better >= 2 * cells;
  r.detail = std::to_string(better) + "/" + std::to_string(cells) +
             " cells where the corrected error is no larger than the main-term error";
  return r;
}

CriterionResult c12_orthogonality(const AcceptanceOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 12);
  double ort1 = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 1; n <= 4; ++n) {
      const Poly den = Poly::monomial(F, 1, n + 2);
      for (std::uint64_t ai = 0; ai < sat_pow(q, n + 2); ++ai) {
        const TorusPoint xi(Poly::from_index(F, n + 2, ai), den);
        ort1 = std::max(ort1, std::abs(monic_sum_direct(xi, n, opt.limits) - monic_sum_closed(xi, n)));
      }
      for (int k = 0; k < 30; ++k) {
        const TorusPoint xi = random_point(F, rng, 6);
        ort1 = std::max(ort1, std::abs(monic_sum_direct(xi, n, opt.limits) - monic_sum_closed(xi, n)));
      }
    }
  }

  double ort2 = 0;
  auto F2 = Field::make(2);
  for (const Poly& g : monics_upto(F2, 2))
    for (unsigned l = 0; l <= 2; ++l) {
      auto G = UnitGroup::make(l, g, opt.limits);
      const auto chars = all_characters(G);
      const Relation rel{l, g};
      std::vector<Poly> reps;
      for (const Poly& f : monics_upto(F2, l + g.degree() + 1))
        if (gcd(f, g).is_one()) reps.push_back(f);
      for (const Poly& a : reps)
        for (const Poly& b : reps) {
          std::complex<double> s = 0;
          for (const auto& chi : chars) s += std::conj(chi(a)) * chi(b);
          s /= static_cast<double>(G->order());
          ort2 = std::max(ort2, std::abs(s - (rel.related(a, b) ? 1.0 : 0.0)));
        }
    }

  double ortogonal = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 0; n <= (q == 2 ? 6u : 4u); ++n)
      for (std::uint64_t fi = 0; fi < sat_pow(q, n + 1); ++fi) {
        const Poly f = Poly::from_index(F, n + 1, fi);
        ortogonal = std::max(ortogonal, std::abs(orthogonality_average(f, n) - (f.is_zero() ? 1.0 : 0.0)));
      }
  }
  r.pass = ort1 <= 1e-9 && ort2 <= 1e-9 && ortogonal <= 1e-9;
  r.detail = fmt("monic sum closed form %.2e, character orthogonality %.2e, finite average %.2e", ort1, ort2,
                 ortogonal);
  return r;
}

using Runner = CriterionResult (*)(const AcceptanceOptions&);

constexpr Runner kRunners[kCriteria] = {c1_parseval, c2_psi,   c3_zero_prefix, c4_dickman,
                                        c5_weil,     c6_gauss, c7_ramanujan,   c8_char_sum,
                                        c9_s_J,      c10_psi_envelope, c11_trend, c12_orthogonality};

constexpr const char* kNames[kCriteria] = {
    "parseval-reconstruction", "psi-agreement",      "zero-prefix-identity", "dickman-solver",
    "weil-roots",              "gauss-sum-identity", "ramanujan-sums",       "irreducible-character-sum-bound",
    "s_J-structure",           "psi-envelope",       "predictor-trend",      "orthogonality"};

}  // namespace

const char* criterion_name(int id) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion id must be in [1, 12]");
  return kNames[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  const char* name = criterion_name(id);
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = kRunners[id - 1](options);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_result(const CriterionResult& r, bool timing) {
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + " " + (r.id < 10 ? " " : "") + std::to_string(r.id) +
                     " " + r.name + ": " + r.detail;
  if (timing) line += fmt(" (%.2f s)", r.seconds);
  return line;
}

}  // namespace smoothpoly
