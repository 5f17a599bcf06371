#include "smoothpoly/predict.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "smoothpoly/dickman.hpp"

namespace smoothpoly {

namespace {

constexpr unsigned kExactPsiMaxN = 2000;

double rho_prime(double u) { return rho_table().deriv(u, 1); }

double positive_log(double x) { return x > 1.0 ? std::log(x) : 0.0; }

bool delta_ok(const Prescription& pres, unsigned n) { return 10 * pres.size() < n; }

bool alpha0_nonzero(const Prescription& pres) {
  return !pres.empty() && pres.entries().front().first == 0 && pres.entries().front().second != 0;
}

double relative_error(double predicted, const BigInt& exact) {
  if (exact == 0) return std::numeric_limits<double>::quiet_NaN();
  const double e = to_double(exact);
  return std::abs(predicted - e) / e;
}

}  // namespace

NuIndex nu_index(const Prescription& pres) {
  if (pres.empty()) throw std::invalid_argument("nu is undefined for an empty prescription");
  NuIndex r;
  for (const auto& [i, v] : pres.entries()) r.indices.push_back(i);
  while (r.nu < pres.size() && pres.entries()[r.nu].second == 0) ++r.nu;
  if (r.nu < pres.size()) r.i_nu = pres.entries()[r.nu].first;
  return r;
}

double lambda0(std::uint32_t q, unsigned n, unsigned m, const Prescription& pres) {
  if (pres.empty()) return 0.0;
  const NuIndex nu = nu_index(pres);
  double sum = 0;
  for (unsigned j = 0; j < nu.nu; ++j) {
    const unsigned i = nu.indices[j];
    if (8 * i >= m) continue;
    sum += std::pow(static_cast<double>(q), static_cast<double>(j) - i) *
           rho_prime(static_cast<double>(n - i) / m);
  }
  return sum == 0 ? 0.0 : -sum / m;
}

double lambda1(std::uint32_t q, unsigned n, unsigned m, const Prescription& pres) {
  if (pres.empty()) return 0.0;
  const NuIndex nu = nu_index(pres);
  if (!nu.i_nu || 8 * *nu.i_nu >= m) return 0.0;
  const unsigned i = *nu.i_nu;
  return -std::pow(static_cast<double>(q), static_cast<double>(nu.nu) - i) / (q - 1.0) *
         rho_prime(static_cast<double>(n - i) / m) / m;
}

const char* variant_name(Variant v) { return v == Variant::thm1 ? "thm1" : "thm2"; }

Variant parse_variant(std::string_view text) {
  if (text == "thm1") return Variant::thm1;
  if (text == "thm2") return Variant::thm2;
  throw std::invalid_argument("variant must be thm1 or thm2");
}

CountReport exact_count(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                        const Limits& limits) {
  if (dp_applicable(field->q(), n, pres)) return count_prescribed_dp(field, n, m, pres, limits);
  return count_prescribed(field, n, m, pres, limits);
}

PredictionReport predict(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres, Variant variant,
                         const PredictOptions& options) {
  if (m < 1 || m > n) throw std::invalid_argument("predict needs 1 <= m <= n");
  if (!pres.empty() && pres.n() != n) throw std::invalid_argument("prescription degree differs from n");
  pres.check_field(field->q());
  if (variant == Variant::thm1 && !alpha0_nonzero(pres))
    throw std::invalid_argument("thm1 needs 0 in I with alpha_0 != 0");
  const bool small_delta = delta_ok(pres, n);
  if (!small_delta && !options.force) throw std::invalid_argument("#I must be below n/10");

  const std::uint32_t q = field->q();
  const double qd = q;
  PredictionReport r;
  r.q = q;
  r.n = n;
  r.m = m;
  r.prescription = pres.to_text();
  r.variant = variant;
  r.u = static_cast<double>(n) / m;
  r.delta = static_cast<double>(pres.size()) / n;
  r.extrapolation = !small_delta || m < std::sqrt(n * std::log(static_cast<double>(n)));

  const double scale = std::pow(qd, static_cast<double>(n) - pres.size());  // q^{n-#I}
  if (n <= kExactPsiMaxN) {
    r.psi = psi_exact(q, n, m);
    r.main = to_double(r.psi) / std::pow(qd, static_cast<double>(pres.size()));
  } else {
    r.psi_is_exact = false;
    r.main = scale * rho_table().rho(r.u);
  }
  if (!pres.empty()) {
    r.nu = nu_index(pres).nu;
    r.lambda0 = lambda0(q, n, m, pres);
    r.lambda1 = lambda1(q, n, m, pres);
  }
  r.corrected = r.main + scale * (r.lambda0 + r.lambda1);

  if (!pres.empty()) {
    Envelope& e = r.envelope;
    const double u = r.u, d = r.delta;
    e.delta_term = r.main * std::pow(u * positive_log(u), 0.125) * std::abs(std::log(d)) / d *
                   std::pow(qd, -options.C / d);
    const unsigned i0 = variant == Variant::thm1 ? 0 : pres.entries().front().first;
    e.low_index = r.main * std::pow(qd, -(static_cast<double>(i0) + 1)) * std::sqrt(u) *
                  std::pow(positive_log(u), 2.5) / m;
    e.major_arc = scale * std::pow(qd, -((1 - options.eps) * n + 2.0 * m) / 8 + 2);
    if (variant == Variant::thm2) e.major_arc *= std::exp(options.eps * (n - m));
    e.minor_arc = static_cast<double>(m) * m * std::sqrt(static_cast<double>(n)) *
                  std::pow(qd, (7.0 * n + m + 4) / 8);
  }

  if (options.with_exact) {
    const CountReport c = exact_count(field, n, m, pres, options.limits);
    r.exact = c.exact;
    r.exact_method = c.method;
    r.rel_err_main = relative_error(r.main, c.exact);
    r.rel_err_corrected = relative_error(r.corrected, c.exact);
  }
  return r;
}

BigInt zero_prefix_exact(std::uint32_t q, unsigned n, unsigned m, unsigned r) {
  if (r < 1 || r >= n) throw std::invalid_argument("zero prefix length must satisfy 1 <= r < n");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  return psi_exact(q, n - r, m);
}

std::vector<ScanRow> scan(const std::vector<ScanCell>& cells, const Limits& limits) {
  std::vector<ScanRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  PredictOptions opts;
  opts.with_exact = true;
  opts.force = true;
  opts.limits = limits;
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        const ScanCell& c = cells[k];
        auto F = Field::parse(c.field);
        auto pres = Prescription::parse(c.n, c.prescription);
        auto rep = predict(F, c.n, c.m, pres, Variant::thm2, opts);
        rows[k] = ScanRow{rep.q, rep.n, rep.m, rep.prescription, *rep.exact, rep.main, rep.corrected,
                          *rep.rel_err_main, *rep.rel_err_corrected};
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned width = std::min<std::size_t>(limits.thread_count(), std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < width; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string scan_csv_header() { return "q,n,m,prescription,exact,main,corrected,rel_err_main,rel_err_corrected"; }

std::string scan_csv_row(const ScanRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.6e,%.6e", row.main, row.corrected, row.rel_err_main,
                row.rel_err_corrected);
  return std::to_string(row.q) + "," + std::to_string(row.n) + "," + std::to_string(row.m) + ",\"" +
         row.prescription + "\"," + to_string(row.exact) + buf;
}

}  // namespace smoothpoly
