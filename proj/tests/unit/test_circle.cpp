#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "smoothpoly/arith.hpp"
#include "smoothpoly/circle.hpp"

using namespace smoothpoly;

namespace {

Poly P(const FieldPtr& F, std::vector<Elem> c) { return Poly(F, std::move(c)); }

TorusPoint random_point(const FieldPtr& F, std::mt19937_64& rng, unsigned max_deg) {
  const unsigned d = 1 + rng() % max_deg;
  return TorusPoint(Poly::from_index(F, d, rng() % oracle::ipow(F->q(), d)),
                    Poly::monic_from_index(F, d, rng() % oracle::ipow(F->q(), d)));
}

Prescription random_prescription(const FieldPtr& F, std::mt19937_64& rng, unsigned n, unsigned max_size) {
  std::vector<std::pair<unsigned, Elem>> entries;
  const unsigned size = rng() % (max_size + 1);
  while (entries.size() < size) {
    const unsigned i = rng() % n;
    bool dup = false;
    for (auto& e : entries) dup |= e.first == i;
    if (!dup) entries.emplace_back(i, static_cast<Elem>(rng() % F->q()));
  }
  return Prescription(n, entries);
}

}  // namespace

TEST_CASE("S(xi; n, m) against the Laurent-series oracle") {
  for (const char* spec : {"2", "3"}) {
    auto F = Field::parse(spec);
    const unsigned n = F->q() == 2 ? 7 : 4, m = 2;
    SmoothSet set(F, n, m);
    CHECK(set.size() == psi_exact(F->q(), n, m));
    CHECK(std::abs(s_smooth(set, TorusPoint::zero(F)) - to_double(psi_exact(F->q(), n, m))) < 1e-9);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 20; ++it) {
      TorusPoint xi = random_point(F, rng, 5);
      std::complex<double> brute = 0;
      for (const Poly& f : oracle::monics(F, n))
        if (oracle::smooth(f, m)) brute += e_char(xi.scaled(f));
      const auto s = s_smooth(set, xi);
      CHECK(std::abs(s - brute) < 1e-9);
      CHECK(std::abs(s) <= set.size() + 1e-9);
    }
  }
}

TEST_CASE("grid of S(a/t^{n+1}) matches the pairing oracle") {
  for (const char* spec : {"2", "3", "4"}) {
    auto F = Field::parse(spec);
    const unsigned n = F->q() == 2 ? 6 : 3, m = 2;
    SmoothSet set(F, n, m);
    auto grid = s_smooth_grid(set);
    REQUIRE(grid.size() == oracle::ipow(F->q(), n + 1));
    std::vector<Poly> smooth;
    for (const Poly& f : oracle::monics(F, n))
      if (oracle::smooth(f, m)) smooth.push_back(f);
    for (std::uint64_t ai = 0; ai < grid.size(); ++ai) {
      const Poly a = Poly::from_index(F, n + 1, ai);
      std::complex<double> brute = 0;
      for (const Poly& f : smooth) brute += oracle::e_pairing(f, a, n);
      CHECK(std::abs(grid[ai] - brute) < 1e-9);
    }
  }
}

TEST_CASE("full monic sum on the grid follows the orthogonality closed form") {
  auto F2 = Field::make(2);
  SmoothSet all(F2, 8, 8);
  const Poly den = Poly::monomial(F2, 1, 9);
  for (std::uint64_t ai = 0; ai < 512; ++ai) {
    TorusPoint xi(Poly::from_index(F2, 9, ai), den);
    const auto s = s_smooth(all, xi);
    // |xi| < 2^{-8} iff a is a constant; then the sum is 2^8 e(t^8 xi) = 2^8 (-1)^{a_0}.
    const double expect = ai <= 1 ? (ai == 0 ? 256.0 : -256.0) : 0.0;
    CHECK(std::abs(s - expect) < 1e-9);
    CHECK(std::abs(s - monic_sum_closed(xi, 8)) < 1e-9);
  }
}

TEST_CASE("monic sum closed form and orthogonality average") {
  std::mt19937_64 rng(3);
  for (const char* spec : {"2", "3", "4"}) {
    auto F = Field::parse(spec);
    for (int it = 0; it < 40; ++it) {
      const unsigned n = 1 + rng() % 4;
      TorusPoint xi = it % 4 == 0 ? TorusPoint(Poly::one(F), Poly::monomial(F, 1, n + 1 + rng() % 2))
                                  : random_point(F, rng, 6);
      CHECK(std::abs(monic_sum_direct(xi, n) - monic_sum_closed(xi, n)) < 1e-9);
    }
  }
  auto F2 = Field::make(2);
  for (unsigned n = 0; n <= 6; ++n)
    for (std::uint64_t fi = 0; fi < oracle::ipow(2, n + 1); ++fi) {
      const Poly f = Poly::from_index(F2, n + 1, fi);
      CHECK(std::abs(orthogonality_average(f, n) - (f.is_zero() ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("S_J closed form") {
  auto F2 = Field::make(2);
  auto pres = Prescription::parse(4, "0=1");
  TorusPoint inv_t(Poly::one(F2), P(F2, {0, 1}));
  CHECK(std::abs(s_J(inv_t, pres) - (-8.0)) < 1e-12);
  CHECK(std::abs(s_J_direct(inv_t, pres) - (-8.0)) < 1e-12);
  CHECK(std::abs(s_J(TorusPoint::zero(F2), pres) - 8.0) < 1e-12);
  std::mt19937_64 rng(21);
  int nonzero = 0;
  for (int it = 0; it < 500; ++it) {
    auto F = Field::parse(it % 3 == 0 ? "2" : (it % 3 == 1 ? "3" : "4"));
    const unsigned n = 3 + rng() % (F->q() == 2 ? 6 : 3);
    auto pr = random_prescription(F, rng, n, 3);
    // Half the points have denominator t^k so that the closed form is often nonzero.
    TorusPoint xi = it % 2 ? random_point(F, rng, n + 1)
                           : TorusPoint(Poly::from_index(F, n + 1, rng() % oracle::ipow(F->q(), n + 1)),
                                        Poly::monomial(F, 1, n + 1));
    const auto closed = s_J(xi, pr);
    CHECK(std::abs(closed - s_J_direct(xi, pr)) < 1e-9);
    const double mag = std::abs(closed);
    const double full = std::pow(F->q(), n - pr.size());
    CHECK((mag < 1e-9 || std::abs(mag - full) < 1e-9));
    nonzero += mag > 0.5;
  }
  CHECK(nonzero > 20);
}

TEST_CASE("S_J vanishes for small coprime-to-t denominators") {
  auto F2 = Field::make(2);
  const unsigned n = 10;
  int applied = 0;
  for (unsigned d = 1; d <= 5; ++d)
    for (const Poly& g : oracle::monics(F2, d))
      for (std::uint64_t ai = 0; ai < oracle::ipow(2, d); ++ai) {
        const Poly a = Poly::from_index(F2, d, ai);
        if (!gcd(a, g).is_one()) continue;
        TorusPoint xi(a, g);
        for (unsigned i = 0; i < n; ++i)
          for (Elem v = 0; v < 2; ++v) {
            Prescription pres(n, {{i, v}});
            if (!vanishing_applies(xi, pres)) continue;
            ++applied;
            CHECK(s_J(xi, pres) == 0.0);
            if (applied % 37 == 0) CHECK(std::abs(s_J_direct(xi, pres)) < 1e-9);
          }
      }
  CHECK(applied > 100);
  // K = ceil(10/2) = 5: g_0 of degree 5 is outside the vanishing range.
  CHECK_FALSE(vanishing_applies(TorusPoint(Poly::one(F2), P(F2, {1, 0, 1, 0, 0, 1})), Prescription(10, {{0, 1}})));
  CHECK(vanishing_applies(TorusPoint(Poly::one(F2), P(F2, {0, 0, 1, 1, 1})), Prescription(10, {{0, 1}})));
}

TEST_CASE("L1 norm of S_J") {
  auto F2 = Field::make(2);
  auto F3 = Field::make(3);
  CHECK(s_J_l1_norm(F2, Prescription::parse(6, "0=1")) == doctest::Approx(1.0).epsilon(1e-12));
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b)
      CHECK(s_J_l1_norm(F3, Prescription(4, {{1, a}, {2, b}})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s_J_l1_norm(F3, Prescription(5, {})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Parseval reconstruction") {
  auto F2 = Field::make(2);
  auto empty = parseval_count(F2, 8, 3, Prescription());
  CHECK(empty.count == psi_exact(2, 8, 3));
  CHECK(empty.clean);
  auto one = parseval_count(F2, 8, 3, Prescription::parse(8, "0=1"));
  CHECK(one.count == count_prescribed(F2, 8, 3, Prescription::parse(8, "0=1")).exact);
  CHECK(parseval_count(F2, 8, 3, Prescription::parse(8, "0=0,1=0")).count == psi_exact(2, 6, 3));
  std::mt19937_64 rng(8);
  for (const char* spec : {"2", "3"}) {
    auto F = Field::parse(spec);
    const unsigned n = 6;
    for (unsigned m = 2; m <= 3; ++m) {
      auto grid = s_smooth_grid(SmoothSet(F, n, m));
      for (int it = 0; it < 10; ++it) {
        auto pres = random_prescription(F, rng, n, 3);
        auto rep = parseval_from_grid(F, n, grid, pres);
        CHECK(rep.clean);
        CHECK(rep.count == count_prescribed(F, n, m, pres).exact);
      }
    }
  }
  Limits tight;
  tight.enumeration = 1000;
  CHECK_THROWS_AS(parseval_count(F2, 10, 3, Prescription(), tight), BudgetExceeded);
}

TEST_CASE("arc parameters and classification") {
  auto p = ArcParams::defaults(20, 8);
  CHECK(p.kappa == 3);
  CHECK(p.ell == 3);
  CHECK(p.valid());
  CHECK(ArcParams::defaults(10, 9).kappa == 0);
  auto F2 = Field::make(2);
  auto F3 = Field::make(3);
  CHECK(classify_arc(TorusPoint::zero(F2), p).major);
  auto c = classify_arc(TorusPoint(P(F2, {1}), P(F2, {1, 1, 1})), p);
  CHECK(c.major);
  CHECK(c.g == P(F2, {1, 1, 1}));
  CHECK(c.a == P(F2, {1}));
  // Exhaustive comparison with an independent search over all a/g.
  for (const auto& F : {F2, F3}) {
    const unsigned n = F->q() == 2 ? 9 : 5;
    const ArcParams ap = ArcParams::defaults(n, 1);
    const Poly den = Poly::monomial(F, 1, n + 1);
    int major = 0;
    for (std::uint64_t ai = 0; ai < oracle::ipow(F->q(), n + 1); ++ai) {
      TorusPoint xi(Poly::from_index(F, n + 1, ai), den);
      bool brute = false;
      for (unsigned d = 0; d <= ap.kappa && !brute; ++d)
        for (const Poly& g : oracle::monics(F, d)) {
          for (std::uint64_t bi = 0; bi < oracle::ipow(F->q(), d) && !brute; ++bi) {
            TorusPoint diff = xi - TorusPoint(Poly::from_index(F, d, bi), g);
            brute = diff.is_zero() ||
                    distance_to_poly(diff).exponent < -static_cast<int>(n) + static_cast<int>(ap.ell);
          }
          if (brute) break;
        }
      const auto cls = classify_arc(xi, ap);
      CHECK(cls.major == brute);
      CHECK(classify_arc_convergents(xi, ap).major == brute);
      if (cls.major) CHECK(cls.g.degree() <= static_cast<int>(ap.kappa));
      major += brute;
    }
    CHECK(major > 0);
  }
}

TEST_CASE("Bourgain exponent") {
  CHECK(bourgain_exponent(10, 5, 0.05).value == 1.0);
  CHECK_FALSE(bourgain_exponent(10, 5, 0.05).flagged);
  CHECK(bourgain_exponent(3, 2, 0.05).value == doctest::Approx(2 / 1.05));
  // x/y = 2.5, v = 3: 6 / (4 * 0.1 + 2).
  CHECK(bourgain_exponent(5, 2, 0.1).value == doctest::Approx(2.5));
  CHECK(bourgain_exponent(7, 2, 0.05).value == doctest::Approx(8.0 / (5 * 0.05 + 3)));
  auto b = bourgain_exponent(3, 1.5, 0.05);
  CHECK(b.flagged);
  CHECK(b.value == doctest::Approx(6.0 / (4 * 0.05 + 2)));
  // delta >= 1/(v+1) keeps the value at most 2.
  for (double r = 1.1; r < 12; r += 0.37) {
    const double v = std::floor(r) + 1;
    CHECK(bourgain_exponent(r * 4, 4, 1.0 / (v + 1)).value <= 2.0 + 1e-12);
  }
  CHECK_THROWS_AS(bourgain_exponent(0, 1, 0.1), std::invalid_argument);
}

TEST_CASE("twisted class sums and the major arc main term") {
  auto F2 = Field::make(2);
  const Poly b = P(F2, {1, 0, 0, 0, 0, 0, 0, 1, 1, 1});  // c_8 = c_7 = 1
  auto plain = twisted_class_sum(Poly(F2), Poly::one(F2), b, 2, 9, 3);
  CHECK(std::abs(plain.exact - to_double(count_in_class(9, 3, b, 2))) < 1e-9);
  CHECK(plain.main == doctest::Approx(to_double(psi_exact(2, 9, 3)) / 4));

  const Poly t = P(F2, {0, 1});
  const Poly b10 = Poly::monic_from_index(F2, 10, 0);
  auto tw = twisted_class_sum(Poly::one(F2), t, b10, 2, 10, 4);
  // Oracle: direct sum with the Laurent-series character.
  std::complex<double> brute = 0;
  for (const Poly& f : oracle::monics(F2, 10))
    if (f[9] == 0 && f[8] == 0 && oracle::smooth(f, 4)) brute += e_char(TorusPoint(f, t));
  CHECK(std::abs(tw.exact - brute) < 1e-9);
  // g = t: main = Psi(9,4)/q^l - Psi_t(10,4) / (q^l (q-1)).
  const double main = to_double(psi_exact(2, 9, 4)) / 4 - to_double(psi_coprime(10, 4, t)) / 4;
  CHECK(tw.main == doctest::Approx(main));
  CHECK(tw.within);
  CHECK_THROWS_AS(twisted_class_sum(t, t, b10, 2, 10, 4), std::invalid_argument);

  for (unsigned k = 1; k <= 4; ++k) {
    auto row = major_rho_form(3, 12, 6, 2, k);
    CHECK(row.main_exact == doctest::Approx(major_main_term(Poly::monomial(Field::make(3), 1, k), 2, 12, 6)));
    CHECK(row.rho_diff > 0);
    CHECK(row.rho_deriv > 0);
  }
}

TEST_CASE("minor arc diagnostic") {
  auto F2 = Field::make(2);
  SmoothSet set(F2, 10, 3);
  auto p = ArcParams::defaults(10, 3);
  auto d = minor_arc_diagnostic(set, p);
  CHECK(d.minor_points + d.major_points == 2048);
  CHECK(d.minor_points > 0);
  CHECK(d.max_abs <= set.size());
  CHECK(d.envelope > 0);
}
