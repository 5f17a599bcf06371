#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "smoothpoly/dickman.hpp"
#include "smoothpoly/predict.hpp"

using namespace smoothpoly;

TEST_CASE("nu index") {
  auto a = nu_index(Prescription::parse(10, "0=1"));
  CHECK(a.nu == 0);
  CHECK(a.i_nu == 0u);
  auto b = nu_index(Prescription::parse(10, "5=1,0=0,2=0"));
  CHECK(b.nu == 2);
  CHECK(b.i_nu == 5u);
  CHECK(b.indices == std::vector<unsigned>{0, 2, 5});
  auto c = nu_index(Prescription::parse(10, "1=0,3=0"));
  CHECK(c.nu == 2);
  CHECK_FALSE(c.i_nu.has_value());
  CHECK(lambda1(2, 10, 9, Prescription::parse(10, "1=0,3=0")) == 0.0);
  CHECK_THROWS_AS(nu_index(Prescription()), std::invalid_argument);
}

TEST_CASE("lambda values on [1,2] where rho'(u) = -1/u") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    // I = {0}, alpha_0 != 0, n = 12, m = 9: u = 4/3.
    const double l1 = lambda1(q, 12, 9, Prescription(12, {{0, 1}}));
    CHECK(l1 == doctest::Approx(0.75 / (9.0 * (q - 1))).epsilon(1e-9));
    CHECK(lambda0(q, 12, 9, Prescription(12, {{0, 1}})) == 0.0);
    // I = {0,1}, both zero, n = 16, m = 9: 8 * 1 < 9 so both terms count.
    const double l0 = lambda0(q, 16, 9, Prescription(16, {{0, 0}, {1, 0}}));
    CHECK(l0 == doctest::Approx((9.0 / 16 + 9.0 / 15) / 9).epsilon(1e-9));
  }
  // i_0 >= m/8 and nu = 0: both vanish.
  CHECK(lambda0(2, 20, 8, Prescription(20, {{1, 1}})) == 0.0);
  CHECK(lambda1(2, 20, 8, Prescription(20, {{1, 1}})) == 0.0);
  // 8 * i < m is decided on integers: i = 1, m = 8 is excluded.
  CHECK(lambda0(2, 20, 8, Prescription(20, {{1, 0}})) == 0.0);
  CHECK(lambda0(2, 20, 9, Prescription(20, {{1, 0}})) > 0.0);
}

TEST_CASE("lambda structure on random prescriptions") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 400; ++it) {
    const std::uint32_t q = 2 + rng() % 4;
    const unsigned n = 10 + rng() % 30;
    const unsigned m = 1 + rng() % n;
    std::vector<std::pair<unsigned, Elem>> entries;
    const unsigned size = 1 + rng() % 3;
    for (unsigned k = 0; entries.size() < size && k < 20; ++k) {
      const unsigned i = rng() % 4;
      bool dup = false;
      for (auto& e : entries) dup |= e.first == i;
      if (!dup) entries.emplace_back(i, rng() % 3 == 0 ? 1 : 0);
    }
    Prescription pres(n, entries);
    const NuIndex nu = nu_index(pres);
    const double l0 = lambda0(q, n, m, pres), l1 = lambda1(q, n, m, pres);
    CHECK(l0 >= 0.0);
    CHECK(l1 >= 0.0);
    if (nu.nu == 0) CHECK(l0 == 0.0);
    if (!nu.i_nu || 8 * *nu.i_nu >= m) CHECK(l1 == 0.0);
  }
}

TEST_CASE("zero-prefix identity") {
  CHECK(zero_prefix_exact(2, 8, 3, 1) == psi_exact(2, 7, 3));
  for (std::uint32_t q : {2u, 3u, 5u}) CHECK(zero_prefix_exact(q, 9, 4, 8) == q);
  CHECK(zero_prefix_exact(3, 9, 4, 2) ==
        count_prescribed(Field::make(3), 9, 4, Prescription::zero_prefix(9, 2)).exact);
  CHECK_THROWS_AS(zero_prefix_exact(2, 8, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(zero_prefix_exact(2, 8, 3, 8), std::invalid_argument);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 2; n <= 10; ++n)
      for (unsigned r = 1; r <= 3 && r < n; ++r)
        for (unsigned m = 1; m <= n; ++m)
          CHECK(zero_prefix_exact(q, n, m, r) == count_prescribed(F, n, m, Prescription::zero_prefix(n, r)).exact);
  }
}

TEST_CASE("predict: preconditions and trivial cases") {
  auto F2 = Field::make(2);
  // #I = 1 = n/10 violates delta < 1/10.
  CHECK_THROWS_AS(predict(F2, 10, 4, Prescription::parse(10, "0=1"), Variant::thm1), std::invalid_argument);
  PredictOptions force;
  force.force = true;
  auto f = predict(F2, 10, 4, Prescription::parse(10, "0=1"), Variant::thm1, force);
  CHECK(f.extrapolation);
  CHECK(f.main == doctest::Approx(to_double(psi_exact(2, 10, 4)) / 2));
  CHECK(f.lambda0 == 0.0);
  CHECK(f.corrected - f.main == doctest::Approx(std::pow(2.0, 9) * f.lambda1));
  CHECK_THROWS_AS(predict(F2, 20, 8, Prescription::parse(20, "0=0"), Variant::thm1), std::invalid_argument);
  CHECK_THROWS_AS(predict(F2, 20, 8, Prescription::parse(20, "1=1"), Variant::thm1), std::invalid_argument);
  CHECK_THROWS_AS(predict(F2, 20, 21, Prescription(), Variant::thm2), std::invalid_argument);

  auto e = predict(F2, 12, 5, Prescription(), Variant::thm2);
  CHECK(e.main == doctest::Approx(to_double(psi_exact(2, 12, 5))));
  CHECK(e.corrected == e.main);
  CHECK(e.envelope.total() == 0.0);
}

TEST_CASE("predict: exact comparison and thm1 reduction") {
  auto F3 = Field::make(3);
  PredictOptions opts;
  opts.with_exact = true;
  auto r = predict(F3, 12, 4, Prescription::parse(12, "1=0"), Variant::thm2, opts);
  REQUIRE(r.exact.has_value());
  const BigInt brute = count_prescribed(F3, 12, 4, Prescription::parse(12, "1=0")).exact;
  CHECK(*r.exact == brute);
  CHECK(r.main == doctest::Approx(to_double(psi_exact(3, 12, 4)) / 3));
  // 8 * 1 >= 4, so no secondary term applies.
  CHECK(r.corrected == doctest::Approx(r.main + std::pow(3.0, 11) * r.lambda0));
  CHECK(r.lambda0 == 0.0);
  CHECK(*r.rel_err_main == doctest::Approx(std::abs(r.main - to_double(brute)) / to_double(brute)));
  CHECK(r.extrapolation);  // 4 < sqrt(12 log 12)

  auto F5 = Field::make(5);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 30; ++it) {
    const unsigned n = 21 + rng() % 20, m = 8 + rng() % (n - 8);
    std::vector<std::pair<unsigned, Elem>> entries{{0, static_cast<Elem>(1 + rng() % 4)}};
    if (rng() % 2) entries.emplace_back(1 + rng() % 5, rng() % 5);
    Prescription pres(n, entries);
    auto t1 = predict(F5, n, m, pres, Variant::thm1);
    auto t2 = predict(F5, n, m, pres, Variant::thm2);
    CHECK(t2.lambda0 == 0.0);
    CHECK(t2.corrected - t1.main == doctest::Approx(std::pow(5.0, n - pres.size()) * t2.lambda1));
    for (double c : {t1.envelope.delta_term, t1.envelope.low_index, t1.envelope.major_arc,
                     t1.envelope.minor_arc, t2.envelope.major_arc})
      CHECK(c >= 0.0);
    CHECK(t2.envelope.major_arc >= t1.envelope.major_arc);
  }
}

TEST_CASE("scan rows and CSV") {
  std::vector<ScanCell> cells{{"2", 10, 3, "0=1"}, {"3", 8, 2, "1=0"}, {"4", 6, 3, ""}};
  auto rows = scan(cells);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].exact == count_prescribed(Field::make(2), 10, 3, Prescription::parse(10, "0=1")).exact);
  CHECK(rows[2].exact == psi_exact(4, 6, 3));
  CHECK(rows[2].rel_err_main == 0.0);
  CHECK(scan_csv_header() == "q,n,m,prescription,exact,main,corrected,rel_err_main,rel_err_corrected");
  const std::string line = scan_csv_row(rows[1]);
  CHECK(line.rfind("3,8,2,\"1=0\",", 0) == 0);
  CHECK_THROWS(scan({{"6", 6, 3, ""}}));
}

TEST_CASE("diagnostic: sign of the zero-coefficient deviation") {
  // Recorded only. I = {0}, alpha_0 = 0: the smallest index below m/8 for m <= 6.
  int same = 0, total = 0;
  PredictOptions opts;
  opts.with_exact = true;
  opts.force = true;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto F = Field::parse(std::to_string(q));
    for (unsigned n : {10u, 12u})
      for (unsigned m : {4u, 5u, 6u}) {
        auto r = predict(F, n, m, Prescription(n, {{0, 0}}), Variant::thm2, opts);
        const double err = to_double(*r.exact) - r.main;
        same += (err > 0) == (r.lambda0 > 0);
        ++total;
      }
  }
  MESSAGE("sign agreement " << same << "/" << total);
  CHECK(total == 24);
}
