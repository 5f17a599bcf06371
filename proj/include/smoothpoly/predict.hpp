#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smoothpoly/smooth_count.hpp"

namespace smoothpoly {

/// Sorted prescribed indices i_0 < i_1 < ... and nu, the number of leading
/// zero-prescribed indices. When every value is zero, nu = #I and i_nu is absent.
struct NuIndex {
  unsigned nu = 0;
  std::vector<unsigned> indices;
  std::optional<unsigned> i_nu;
};

/// Throws std::invalid_argument when the prescription is empty.
NuIndex nu_index(const Prescription& pres);

/// -(1/m) sum_{j < nu, i_j < m/8} q^{j - i_j} rho'((n - i_j)/m). Zero for an empty prescription.
double lambda0(std::uint32_t q, unsigned n, unsigned m, const Prescription& pres);
/// -(1/m) q^{nu - i_nu}/(q - 1) rho'((n - i_nu)/m) when i_nu < m/8, else 0.
double lambda1(std::uint32_t q, unsigned n, unsigned m, const Prescription& pres);

enum class Variant { thm1, thm2 };

const char* variant_name(Variant v);
/// "thm1" or "thm2"; throws std::invalid_argument otherwise.
Variant parse_variant(std::string_view text);

/// Error terms of the asymptotic formula with every implied constant set
/// to 1 and C = 1/2. An envelope, not a bound.
struct Envelope {
  double delta_term = 0;  // main (u log u)^{1/8} delta^{-1} |log delta| q^{-C/delta}
  double low_index = 0;   // main q^{-(i_0+1)} u^{1/2} (log u)^{5/2} / m  (thm1: q^{-1})
  double major_arc = 0;   // q^{n-#I} q^{-((1-eps) n + 2m)/8 + 2}, times e^{eps (n-m)} for thm2
  double minor_arc = 0;   // m^2 n^{1/2} q^{(7n+m+4)/8}
  double total() const { return delta_term + low_index + major_arc + minor_arc; }
};

struct PredictOptions {
  bool with_exact = false;
  /// Allow delta >= 1/10 (thm1 still needs alpha_0 != 0); the report is then flagged.
  bool force = false;
  double eps = 0.1;
  double C = 0.5;
  Limits limits{};
};

struct PredictionReport {
  std::uint32_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::string prescription;
  Variant variant = Variant::thm2;
  double u = 0;
  double delta = 0;
  unsigned nu = 0;
  bool psi_is_exact = true;  // false when Psi came from q^n rho(u)
  BigInt psi = 0;            // meaningful when psi_is_exact
  double main = 0;           // Psi(n,m) / q^{#I}
  double lambda0 = 0;
  double lambda1 = 0;
  double corrected = 0;      // main + q^{n-#I} (lambda0 + lambda1)
  std::optional<BigInt> exact;
  std::optional<std::string> exact_method;
  std::optional<double> rel_err_main;       // |main - exact| / exact
  std::optional<double> rel_err_corrected;  // |corrected - exact| / exact
  Envelope envelope;
  bool extrapolation = false;  // m < sqrt(n log n) or delta >= 1/10 under force
};

/// Throws std::invalid_argument when delta >= 1/10 (unless forced), when
/// thm1 is asked without 0 in I and alpha_0 != 0, or when m is outside [1, n].
PredictionReport predict(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres, Variant variant,
                         const PredictOptions& options = {});

/// Exact count for I = {0..r-1}, all alpha = 0: Psi(n - r, m). Requires 1 <= r < n.
BigInt zero_prefix_exact(std::uint32_t q, unsigned n, unsigned m, unsigned r);

/// The exact count through the dp method when it applies, else by enumeration.
CountReport exact_count(const FieldPtr& field, unsigned n, unsigned m, const Prescription& pres,
                        const Limits& limits = {});

struct ScanCell {
  std::string field;  // field spec, e.g. "4" or "2^2"
  unsigned n = 0;
  unsigned m = 0;
  std::string prescription;
};

struct ScanRow {
  std::uint32_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::string prescription;
  BigInt exact = 0;
  double main = 0;
  double corrected = 0;
  double rel_err_main = 0;
  double rel_err_corrected = 0;
};

/// thm2 predictions with exact counts for every cell, in cell order. Cells
/// run on limits.thread_count() workers; delta >= 1/10 is allowed here.
std::vector<ScanRow> scan(const std::vector<ScanCell>& cells, const Limits& limits = {});

/// CSV header and row with columns q,n,m,prescription,exact,main,corrected,rel_err_main,rel_err_corrected.
std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& row);

}  // namespace smoothpoly
