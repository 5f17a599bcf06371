#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "smoothpoly/dickman.hpp"

using namespace smoothpoly;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double eps, int depth = 0) {
  const double c = 0.5 * (a + b);
  const double whole = (b - a) / 6 * (f(a) + 4 * f(c) + f(b));
  const double left = (c - a) / 6 * (f(a) + 4 * f(0.5 * (a + c)) + f(c));
  const double right = (b - c) / 6 * (f(c) + 4 * f(0.5 * (c + b)) + f(b));
  if (depth > 40 || std::abs(left + right - whole) < 15 * eps) return left + right + (left + right - whole) / 15;
  return simpson(f, a, c, eps / 2, depth + 1) + simpson(f, c, b, eps / 2, depth + 1);
}

// rho on [2, 3] from the closed form on [1, 2]: rho(u) = rho(2) - int_2^u (1 - ln(s-1))/s ds.
double rho_oracle_2_3(double u) {
  return 1.0 - std::log(2.0) - simpson([](double s) { return (1.0 - std::log(s - 1.0)) / s; }, 2.0, u, 1e-15);
}

}  // namespace

TEST_CASE("rho values") {
  const RhoTable& T = rho_table();
  CHECK(T.rho(0.5) == 1.0);
  CHECK(T.rho(0.0) == 1.0);
  CHECK(T.rho(1.0) == 1.0);
  CHECK(T.rho(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(T.rho(2.0) == doctest::Approx(0.3068528194).epsilon(1e-10));
  CHECK(T.rho(3.0) == doctest::Approx(0.04860839).epsilon(1e-7));
  for (double u = 2.0; u <= 3.0; u += 0.0625)
    CHECK(T.rho(u) == doctest::Approx(rho_oracle_2_3(u)).epsilon(1e-11));
}

TEST_CASE("rho at the classical reference points") {
  const RhoTable& T = rho_table();
  // Tabulated values of Dickman's function.
  CHECK(T.rho(3.0) == doctest::Approx(0.048608388291131).epsilon(1e-11));
  CHECK(T.rho(4.0) == doctest::Approx(0.00491092564776).epsilon(1e-10));
  CHECK(T.rho(5.0) == doctest::Approx(0.000354724700456).epsilon(1e-10));
  CHECK(T.rho(10.0) == doctest::Approx(2.77017183772596e-11).epsilon(1e-9));
}

TEST_CASE("rho domain errors") {
  const RhoTable& T = rho_table();
  CHECK_THROWS_AS(T.rho(-0.1), std::domain_error);
  CHECK_THROWS_AS(T.rho(40.5), std::domain_error);
  CHECK_NOTHROW(T.rho(40.0));
  CHECK_THROWS_AS(T.deriv(3.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(debruijn_envelope(2.5), std::domain_error);
}

TEST_CASE("rho derivatives") {
  const RhoTable& T = rho_table();
  CHECK(T.deriv(2.0, 1) == doctest::Approx(-0.5));
  CHECK(T.deriv(3.0, 1) == doctest::Approx(-(1 - std::log(2.0)) / 3).epsilon(1e-12));
  CHECK(T.deriv(3.0, 1) == doctest::Approx(-0.1022843).epsilon(1e-6));
  CHECK(T.deriv(3.0, 2) == doctest::Approx(0.2007614).epsilon(1e-6));
  CHECK(T.deriv(0.5, 1) == 0.0);
  CHECK(T.deriv(0.5, 2) == 0.0);
  // Finite differences.
  for (double u = 2.2; u < 20.0; u += 0.7) {
    const double h = 1e-4;
    const double fd1 = (T.rho(u + h) - T.rho(u - h)) / (2 * h);
    const double fd2 = (T.rho(u + h) - 2 * T.rho(u) + T.rho(u - h)) / (h * h);
    CHECK(fd1 == doctest::Approx(T.deriv(u, 1)).epsilon(1e-6));
    CHECK(fd2 == doctest::Approx(T.deriv(u, 2)).epsilon(1e-3));
  }
}

TEST_CASE("delay equation residual") {
  const RhoTable& T = rho_table();
  for (int i = 11; i <= 200; ++i) {
    const double u = i / 10.0;
    CAPTURE(u);
    CHECK(std::abs(u * T.interpolant_deriv(u) + T.rho(u - 1.0)) < 1e-9);
  }
}

TEST_CASE("rho monotonicity and sign pattern") {
  const RhoTable& T = rho_table();
  double prev = T.rho(2.0);
  for (double u = 2.05; u <= 20.0; u += 0.05) {
    const double v = T.rho(u);
    CHECK(v > 0.0);
    CHECK(v < prev);
    CHECK(T.deriv(u, 1) < 0.0);
    CHECK(T.deriv(u, 2) > 0.0);
    prev = v;
  }
  CHECK(T.rho(39.5) > 0.0);
}

TEST_CASE("rho shift inequality with constant 3") {
  const RhoTable& T = rho_table();
  for (double u = 3.0; u <= 20.0; u += 0.25)
    for (double v = 0.0; v <= 1.0; v += 0.125)
      CHECK(T.rho(u - v) <= 3.0 * std::pow(u * std::log(u), v) * T.rho(u));
}

TEST_CASE("quadrature self-check") {
  CHECK(rho_table().error_estimate() < 1e-9);
  std::vector<double> x, w;
  gauss_legendre(32, x, w);
  double s = 0, s4 = 0;
  for (int i = 0; i < 32; ++i) {
    s += w[i];
    s4 += w[i] * std::pow(x[i], 30);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s4 == doctest::Approx(2.0 / 31).epsilon(1e-13));
}

TEST_CASE("de Bruijn envelope") {
  const RhoTable& T = rho_table();
  const double e3 = debruijn_envelope(3.0);
  CHECK(e3 == doctest::Approx(std::exp(-3 * std::log(3 * std::log(3.0)) + 3)));
  CHECK(e3 > T.rho(3.0) * 1e-2);
  CHECK(e3 < T.rho(3.0) * 1e2);
  CHECK(std::isfinite(std::log(T.rho(10.0) / debruijn_envelope(10.0))));
}
