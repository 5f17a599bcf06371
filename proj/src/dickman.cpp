#include "smoothpoly/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smoothpoly {

namespace {

constexpr int N = RhoTable::kNodes - 1;

// Chebyshev-Lobatto point j mapped to [k, k+1]; j = 0 is the right end.
double node(int k, int j) { return k + 0.5 * (1.0 + std::cos(std::numbers::pi * j / N)); }

double bary_weight(int j) {
  double w = (j % 2 == 0) ? 1.0 : -1.0;
  return (j == 0 || j == N) ? 0.5 * w : w;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
}

RhoTable::RhoTable(double max_u) : max_u_(max_u) {
  if (!(max_u >= 2.0)) throw std::invalid_argument("RhoTable needs max_u >= 2");
  std::vector<double> gx, gw;
  gauss_legendre(32, gx, gw);
  auto integrate = [&](double a, double b) {
    // int_a^b rho(t) dt over earlier pieces
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), sum = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) sum += gw[i] * rho(mid + half * gx[i]);
    return sum * half;
  };

  // Differentiation matrix on the Lobatto points of [-1, 1].
  double D[RhoTable::kNodes][RhoTable::kNodes];
  double x[RhoTable::kNodes];
  for (int j = 0; j <= N; ++j) x[j] = std::cos(std::numbers::pi * j / N);
  for (int i = 0; i <= N; ++i) {
    double row = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      double ci = (i == 0 || i == N) ? 2.0 : 1.0;
      double cj = (j == 0 || j == N) ? 2.0 : 1.0;
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      D[i][j] = ci / cj * sign / (x[i] - x[j]);
      row += D[i][j];
    }
    D[i][i] = -row;
  }

  // W[j][i] = integral of the i-th Lagrange basis function from k to node j.
  std::vector<double> W(RhoTable::kNodes * RhoTable::kNodes, 0.0);
  for (int j = 0; j <= N; ++j) {
    const double b = node(0, j);
    if (b == 0.0) continue;
    for (std::size_t g = 0; g < gx.size(); ++g) {
      const double s = 0.5 * b * (1.0 + gx[g]);
      double basis[RhoTable::kNodes], den = 0.0;
      for (int i = 0; i <= N; ++i) {
        basis[i] = bary_weight(i) / (s - node(0, i));
        den += basis[i];
      }
      for (int i = 0; i <= N; ++i) W[j * RhoTable::kNodes + i] += 0.5 * b * gw[g] * basis[i] / den;
    }
  }

  // u rho(u) = int_{u-1}^{u} rho(t) dt. Every term is positive, so relative
  // accuracy survives even where rho is tiny. The part over [k, u] involves
  // the unknown piece and is solved by fixed-point iteration (contraction
  // factor below (u - k)/u <= 1/2).
  const int last = static_cast<int>(std::ceil(max_u_));
  for (int k = 2; k < last; ++k) {
    Piece piece{};
    double known[RhoTable::kNodes];
    for (int j = 0; j <= N; ++j) {
      const double u = node(k, j);
      const double full = integrate(u - 1.0, k);
      const double split = integrate(u - 1.0, 0.5 * (u - 1.0 + k)) + integrate(0.5 * (u - 1.0 + k), k);
      known[j] = split;
      if (split > 0.0) error_estimate_ = std::max(error_estimate_, std::abs(full - split) / split);
    }
    const double start = rho(static_cast<double>(k));
    for (int j = 0; j <= N; ++j) piece.values[j] = start;
    for (int it = 0; it < 200; ++it) {
      double change = 0.0;
      double next[RhoTable::kNodes];
      for (int j = 0; j <= N; ++j) {
        double acc = known[j];
        for (int i = 0; i <= N; ++i) acc += W[j * RhoTable::kNodes + i] * piece.values[i];
        next[j] = acc / node(k, j);
        change = std::max(change, std::abs(next[j] - piece.values[j]) / next[j]);
      }
      std::copy(next, next + RhoTable::kNodes, piece.values);
      if (change < 1e-17) break;
    }
    // d/du = 2 d/dx on a unit interval.
    for (int i = 0; i <= N; ++i) {
      double s = 0.0;
      for (int j = 0; j <= N; ++j) s += D[i][j] * piece.values[j];
      piece.derivs[i] = 2.0 * s;
    }
    pieces_.push_back(piece);
  }
}

void RhoTable::check(double u) const {
  if (!(u >= 0.0) || u > max_u_)
    throw std::domain_error("rho: u = " + std::to_string(u) + " outside [0, " + std::to_string(max_u_) + "]");
}

int RhoTable::piece_index(double u) const {
  // The right end of the last piece belongs to it.
  return std::min(static_cast<int>(std::floor(u)), static_cast<int>(pieces_.size()) + 1);
}

double RhoTable::interpolate(const double* data, int k, double u) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= N; ++j) {
    double diff = u - node(k, j);
    if (diff == 0.0) return data[j];
    double w = bary_weight(j) / diff;
    num += w * data[j];
    den += w;
  }
  return num / den;
}

double RhoTable::rho(double u) const {
  check(u);
  if (u <= 1.0) return 1.0;
  if (u <= 2.0) return 1.0 - std::log(u);
  const int k = piece_index(u);
  return interpolate(pieces_[k - 2].values, k, u);
}

double RhoTable::deriv(double u, int k) const {
  check(u);
  if (k != 1 && k != 2) throw std::invalid_argument("rho derivative order must be 1 or 2");
  if (u < 1.0) return 0.0;
  if (k == 1) return -rho(u - 1.0) / u;
  return (rho(u - 1.0) / u - deriv(u - 1.0, 1)) / u;
}

double RhoTable::interpolant_deriv(double u) const {
  check(u);
  if (u < 1.0) return 0.0;
  if (u < 2.0) return -1.0 / u;
  const int k = piece_index(u);
  return interpolate(pieces_[k - 2].derivs, k, u);
}

const RhoTable& rho_table() {
  static const RhoTable table(40.0);
  return table;
}

double debruijn_envelope(double u) {
  if (!(u >= 3.0)) throw std::domain_error("de Bruijn envelope needs u >= 3");
  return std::exp(-u * std::log(u * std::log(u)) + u);
}

}  // namespace smoothpoly
