#include <doctest.h>

#include <cmath>
#include <string>

#include "oracle.hpp"
#include "smoothpoly/arith.hpp"
#include "smoothpoly/dickman.hpp"
#include "smoothpoly/smooth_count.hpp"

using namespace smoothpoly;

namespace {

Poly P(const FieldPtr& F, std::vector<Elem> c) { return Poly(F, std::move(c)); }

BigInt from_profile(const std::vector<std::uint64_t>& hist, unsigned m) {
  BigInt s = 0;
  for (unsigned d = 0; d < hist.size() && d <= m; ++d) s += hist[d];
  return s;
}

}  // namespace

TEST_CASE("psi examples") {
  for (std::uint32_t q : {2u, 3u, 5u, 9u})
    for (unsigned n = 1; n <= 10; ++n) CHECK(psi_exact(q, n, n) == big_pow(q, n));
  CHECK(psi_exact(2, 3, 1) == 4);
  CHECK(psi_exact(2, 0, 1) == 1);
  CHECK_THROWS_AS(psi_exact(2, 3, 0), std::invalid_argument);
}

TEST_CASE("psi matches brute-force smoothness testing") {
  auto F2 = Field::make(2);
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned m = 1; m <= n; ++m) {
      int brute = 0;
      for (const Poly& f : oracle::monics(F2, n)) brute += oracle::smooth(f, m);
      CHECK(psi_exact(2, n, m) == brute);
    }
  auto F3 = Field::make(3);
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned m = 1; m <= n; ++m) {
      int brute = 0;
      for (const Poly& f : oracle::monics(F3, n)) brute += oracle::smooth(f, m);
      CHECK(psi_exact(3, n, m) == brute);
    }
}

TEST_CASE("psi matches exhaustive enumeration up to degree 12") {
  for (unsigned q : {2u, 3u}) {
    auto F = Field::make(q);
    for (unsigned n = 1; n <= 12; ++n) {
      auto hist = largest_degree_profile(F, n, Prescription());
      auto table = psi_table(q, n, 1);
      for (unsigned m = 1; m <= n; ++m) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(psi_exact(q, n, m) == from_profile(hist, m));
      }
    }
  }
}

TEST_CASE("product and recurrence forms agree") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u})
    for (unsigned m = 1; m <= 12; ++m) CHECK(psi_table(q, 30, m) == psi_table_recurrence(q, 30, m));
}

TEST_CASE("psi is monotone in m") {
  for (std::uint32_t q : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 24; ++n) {
      BigInt prev = 0;
      for (unsigned m = 1; m <= n; ++m) {
        BigInt v = psi_exact(q, n, m);
        CHECK(prev <= v);
        CHECK(v <= big_pow(q, n));
        prev = v;
      }
    }
}

TEST_CASE("psi against q^n rho(n/m) in the admissible range") {
  const std::uint32_t q = 5;
  const unsigned m = 8;
  int checked = 0;
  for (unsigned n = 8; n <= 32; ++n) {
    if (m * m < n * std::log(static_cast<double>(n))) continue;
    const double u = static_cast<double>(n) / m;
    const double ratio = to_double(psi_exact(q, n, m)) / (std::pow(q, n) * rho_table().rho(u));
    CAPTURE(n);
    CHECK(std::abs(ratio - 1.0) <= 2.0 * u * std::log(u + 1.0) / m);
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("psi_coprime") {
  auto F2 = Field::make(2);
  Poly t = P(F2, {0, 1});
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned m = 1; m <= n; ++m) {
      CHECK(psi_coprime(n, m, Poly::one(F2)) == psi_exact(2, n, m));
      CHECK(psi_coprime(n, m, t) == psi_exact(2, n, m) - psi_exact(2, n - 1, m));
    }
  // g = t(t+1): 2-smooth quartics with f(0) != 0 and f(1) != 0.
  Poly g = P(F2, {0, 1, 1});
  int brute = 0;
  for (const Poly& f : oracle::monics(F2, 4)) brute += oracle::smooth(f, 2) && gcd(f, g).is_one();
  CHECK(psi_coprime(4, 2, g) == brute);
  CHECK_THROWS_AS(psi_coprime(4, 2, Poly(F2)), std::invalid_argument);
  // General moduli over F_3 against enumeration.
  auto F3 = Field::make(3);
  for (const Poly& mod : {P(F3, {1, 0, 1}), P(F3, {0, 0, 1, 1}), P(F3, {2, 1, 0, 0, 1})})
    for (unsigned n = 1; n <= 6; ++n)
      for (unsigned m = 1; m <= n; ++m) {
        int count = 0;
        for (const Poly& f : oracle::monics(F3, n)) count += is_m_smooth(f, m) && gcd(f, mod).is_one();
        CHECK(psi_coprime(n, m, mod) == count);
      }
}

TEST_CASE("prescription parsing") {
  auto p = Prescription::parse(8, "3=1, 0=2");
  REQUIRE(p.size() == 2);
  CHECK(p.entries()[0] == std::pair<unsigned, Elem>{0, 2});
  CHECK(p.to_text() == "0=2,3=1");
  CHECK(p.delta() == doctest::Approx(0.25));
  CHECK(Prescription::parse(8, "").empty());
  CHECK_THROWS_AS(Prescription::parse(8, "8=1"), std::invalid_argument);
  CHECK_THROWS_AS(Prescription::parse(8, "1=1,1=0"), std::invalid_argument);
  CHECK_THROWS_AS(Prescription::parse(8, "1:1"), std::invalid_argument);
  CHECK_THROWS_AS(Prescription::parse(8, "x=1"), std::invalid_argument);
  auto F2 = Field::make(2);
  CHECK_THROWS_AS(count_prescribed(F2, 8, 3, Prescription::parse(8, "1=2")), std::invalid_argument);
}

TEST_CASE("count_prescribed identities") {
  auto F2 = Field::make(2);
  auto F3 = Field::make(3);
  for (unsigned n = 1; n <= 10; ++n)
    for (unsigned m = 1; m <= n; ++m) {
      CHECK(count_prescribed(F2, n, m, Prescription()).exact == psi_exact(2, n, m));
      for (unsigned r = 1; r <= n; ++r)
        CHECK(count_prescribed(F2, n, m, Prescription::zero_prefix(n, r)).exact == psi_exact(2, n - r, m));
    }
  for (unsigned n = 1; n <= 7; ++n)
    for (unsigned r = 1; r <= n; ++r)
      CHECK(count_prescribed(F3, n, 2, Prescription::zero_prefix(n, r)).exact == psi_exact(3, n - r, 2));
}

TEST_CASE("count_prescribed against brute force") {
  auto F3 = Field::make(3);
  for (const char* text : {"0=1", "2=0,3=2", "1=1,4=1"}) {
    auto pres = Prescription::parse(5, text);
    for (unsigned m = 1; m <= 5; ++m) {
      int brute = 0;
      for (const Poly& f : oracle::monics(F3, 5)) brute += pres.matches(f) && oracle::smooth(f, m);
      CHECK(count_prescribed(F3, 5, m, pres).exact == brute);
    }
  }
  auto F2 = Field::make(2);
  auto rep = count_prescribed(F2, 8, 3, Prescription::parse(8, "0=1"));
  int brute = 0;
  for (const Poly& f : oracle::monics(F2, 8)) brute += f[0] == 1 && oracle::smooth(f, 3);
  CHECK(rep.exact == brute);
  CHECK(rep.method == "enumeration");
  CHECK(rep.prescription == "0=1");
}

TEST_CASE("enumeration budget") {
  auto F5 = Field::make(5);
  Limits tight;
  tight.enumeration = 1000;
  CHECK_THROWS_AS(count_prescribed(F5, 6, 2, Prescription(), tight), BudgetExceeded);
  CHECK_NOTHROW(count_prescribed(F5, 6, 2, Prescription::zero_prefix(6, 2), tight));
}

TEST_CASE("thread count does not change results") {
  auto F3 = Field::make(3);
  Limits one, four;
  one.threads = 1;
  four.threads = 4;
  auto pres = Prescription::parse(10, "1=2");
  CHECK(largest_degree_profile(F3, 10, pres, one) == largest_degree_profile(F3, 10, pres, four));
  CHECK(smooth_polys(F3, 9, 3, one) == smooth_polys(F3, 9, 3, four));
  CHECK(class_histogram(F3, 9, 3, 2, one) == class_histogram(F3, 9, 3, 2, four));
}

TEST_CASE("residue classes of the first l coefficients") {
  auto F2 = Field::make(2);
  // Classes partition S(n, m).
  auto hist = class_histogram(F2, 8, 3, 3);
  BigInt total = 0;
  for (auto c : hist) total += c;
  CHECK(total == psi_exact(2, 8, 3));
  // l = n: each class holds at most one polynomial.
  for (auto c : class_histogram(F2, 6, 2, 6)) CHECK(c <= 1);
  // Envelope with eps = 1/4 and constant 4.
  const double psi = to_double(psi_exact(2, 8, 4));
  for (auto c : class_histogram(F2, 8, 4, 2))
    CHECK(std::abs(c - psi / 4) <= 4 * std::pow(2.0, 0.75 * 8) * std::exp(0.25 * 2));
  // Prescribing c_{n-1}..c_{n-l} gives the same count as the histogram.
  auto F3 = Field::make(3);
  const unsigned n = 7, m = 3, l = 2;
  auto h3 = class_histogram(F3, n, m, l);
  for (std::uint64_t idx = 0; idx < h3.size(); ++idx) {
    // Representative: c_{n-1-j} is digit j of idx.
    std::vector<Elem> c(n + 1, 0);
    c[n] = 1;
    std::uint64_t v = idx;
    for (unsigned j = 0; j < l; ++j) {
      c[n - 1 - j] = static_cast<Elem>(v % 3);
      v /= 3;
    }
    Poly b(F3, c);
    CHECK(class_index(b, l) == idx);
    CHECK(count_in_class(n, m, b, l) == h3[idx]);
    std::vector<std::pair<unsigned, Elem>> entries;
    for (unsigned j = 0; j < l; ++j) entries.emplace_back(n - 1 - j, c[n - 1 - j]);
    CHECK(count_prescribed(F3, n, m, Prescription(n, entries)).exact == h3[idx]);
  }
  CHECK_THROWS_AS(count_in_class(n, m, P(F3, {0, 1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(class_histogram(F3, 4, 2, 5), std::invalid_argument);
}

TEST_CASE("smooth polynomial list") {
  auto F2 = Field::make(2);
  auto list = smooth_polys(F2, 7, 2);
  CHECK(list.size() == psi_exact(2, 7, 2));
  for (const auto& c : list) {
    std::vector<Elem> full = c;
    full.push_back(1);
    CHECK(oracle::smooth(Poly(F2, full), 2));
  }
  Limits tight;
  tight.smooth_cache = 10;
  CHECK_THROWS_AS(smooth_polys(F2, 7, 2, tight), BudgetExceeded);
}

TEST_CASE("dp counts agree with enumeration") {
  for (const char* spec : {"2", "3", "4", "5"}) {
    auto F = Field::parse(spec);
    const std::uint32_t q = F->q();
    const unsigned n = q <= 3 ? 8 : 6;
    std::vector<std::string> texts = {"", "0=1", "0=0,1=1", std::to_string(n - 1) + "=1",
                                      std::to_string(n - 2) + "=0," + std::to_string(n - 1) + "=1",
                                      "0=1," + std::to_string(n - 1) + "=0"};
    for (const auto& text : texts) {
      auto pres = Prescription::parse(n, text);
      REQUIRE(dp_applicable(q, n, pres));
      auto counts = prescribed_counts_dp(F, n, n + 1, pres);
      for (unsigned m = 1; m <= n + 1; ++m) {
        CAPTURE(spec);
        CAPTURE(text);
        CAPTURE(m);
        CHECK(counts[m] == count_prescribed(F, n, m, pres).exact);
      }
    }
  }
}

TEST_CASE("dp reproduces the zero-prefix identity") {
  auto F3 = Field::make(3);
  for (unsigned n = 2; n <= 9; ++n)
    for (unsigned r = 1; r <= std::min(n, 5u); ++r) {
      auto counts = prescribed_counts_dp(F3, n, n, Prescription::zero_prefix(n, r));
      for (unsigned m = 1; m <= n; ++m) CHECK(counts[m] == psi_exact(3, n - r, m));
    }
}

TEST_CASE("dp applicability and report") {
  CHECK(dp_applicable(5, 12, Prescription::parse(12, "1=0")));
  CHECK(dp_applicable(2, 20, Prescription::parse(20, "0=1,1=0,18=1,19=1")));
  CHECK_FALSE(dp_applicable(5, 12, Prescription::parse(12, "5=0")));
  CHECK_FALSE(dp_applicable(3, 20, Prescription::parse(20, "0=1,10=1")));
  auto F3 = Field::make(3);
  CHECK_THROWS_AS(count_prescribed_dp(F3, 20, 3, Prescription::parse(20, "0=1,10=1")), std::invalid_argument);
  auto rep = count_prescribed_dp(F3, 10, 3, Prescription::parse(10, "1=2"));
  CHECK(rep.method == "dp");
  CHECK(rep.exact == count_prescribed(F3, 10, 3, Prescription::parse(10, "1=2")).exact);
}
