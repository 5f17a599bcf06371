#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "smoothpoly/acceptance.hpp"
#include "smoothpoly/arith.hpp"
#include "smoothpoly/characters.hpp"
#include "smoothpoly/circle.hpp"
#include "smoothpoly/dickman.hpp"
#include "smoothpoly/predict.hpp"

namespace smoothpoly {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kScanHelp =
    "CSV columns: q,n,m,prescription,exact,main,corrected,rel_err_main,rel_err_corrected";

json cjson(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json cjson(const std::vector<std::complex<double>>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(cjson(z));
  return a;
}

std::string rho_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, std::abs(v) >= 1e-3 || v == 0 ? "%.12f" : "%.12e", v);
  return buf;
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(const std::vector<std::string>& args) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e, out_, err_);
      return code == 0 ? 0 : 1;
    }
    if (!(tol_ > 0 && tol_ <= 1e-3)) {
      err_ << "error: --tol must lie in (0, 1e-3]\n";
      return 1;
    }
    try {
      return dispatch();
    } catch (const BudgetExceeded& e) {
      err_ << "budget exceeded: " << e.what() << "\n";
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
    }
    return 1;
  }

 private:
  Limits limits() const {
    Limits l;
    l.enumeration = budget_;
    l.group = group_budget_;
    l.threads = threads_;
    return l;
  }

  bool json_output(bool plain_default) const { return format_ == "json" || (format_ == "auto" && !plain_default); }

  json header(const std::string& command) const {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
  }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  void field_opts(CLI::App* sub, bool needs_nm = true) {
    sub->add_option("--q", field_, "Field size or spec (\"4\", \"2^2\")")->required();
    if (needs_nm) {
      sub->add_option("--n", n_, "Degree")->required()->check(CLI::PositiveNumber);
      sub->add_option("--m", m_, "Smoothness bound")->required()->check(CLI::PositiveNumber);
    }
  }

  void modulus_opts(CLI::App* sub) {
    sub->add_option("--q", field_, "Field size or spec")->required();
    sub->add_option("--l", l_, "Number of leading coefficients")->required();
    sub->add_option("--g", g_, "Monic modulus, coefficients low to high (\"0,1\" is t)")->required();
  }

  void build() {
    app_.description("Smooth polynomials over finite fields with prescribed coefficients");
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--budget", budget_, "Enumeration budget (polynomials examined per count)")
        ->envname("SMOOTHPOLY_BUDGET")
        ->check(CLI::PositiveNumber);
    app_.add_option("--group-budget", group_budget_, "Largest character group order")->check(CLI::PositiveNumber);
    app_.add_option("--threads", threads_, "Worker threads for scans (0 = all cores)");
    app_.add_option("--seed", seed_, "Seed for sampled checks");
    app_.add_option("--tol", tol_, "Tolerance for floating identities, in (0, 1e-3]");
    app_.add_option("--format", format_, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));
    app_.add_flag("--timing", timing_, "Include wall-clock seconds (output is then not reproducible)");

    count_ = app_.add_subcommand("count", "Count m-smooth monic polynomials with prescribed coefficients");
    field_opts(count_);
    count_->add_option("--prescribe", prescribe_, "Prescription \"i=v,i=v\"");
    count_->add_option("--method", method_, "enum | parseval | dp | both")
        ->check(CLI::IsMember({"enum", "parseval", "dp", "both"}));

    predict_ = app_.add_subcommand("predict", "Main term, corrections and envelope");
    field_opts(predict_);
    predict_->add_option("--prescribe", prescribe_, "Prescription \"i=v,i=v\"");
    predict_->add_option("--variant", variant_, "thm1 | thm2")->check(CLI::IsMember({"thm1", "thm2"}));
    predict_->add_flag("--with-exact", with_exact_, "Also compute the exact count");
    predict_->add_flag("--force", force_, "Allow #I >= n/10 (flagged as extrapolation)");
    predict_->add_option("--eps", eps_, "epsilon in the error terms");

    verify_ = app_.add_subcommand("verify", "Check identities; exit 2 on failure");
    verify_->require_subcommand(1);
    v_parseval_ = verify_->add_subcommand("parseval", "Parseval count against enumeration");
    field_opts(v_parseval_);
    v_parseval_->add_option("--samples", samples_, "Random prescriptions")->check(CLI::PositiveNumber);
    v_parseval_->add_option("--max-size", max_size_, "Largest #I");
    v_arcs_ = verify_->add_subcommand("arcs", "Arc classification on the a/t^{n+1} grid");
    field_opts(v_arcs_);
    v_arcs_->add_option("--kappa", kappa_, "Major arc denominator degree");
    v_arcs_->add_option("--ell", ell_, "Major arc width");
    v_gauss_ = verify_->add_subcommand("gauss", "Gauss sum identity");
    modulus_opts(v_gauss_);
    v_gauss_->add_option("--b", b_, "Class representative (default 1)");
    v_all_ = verify_->add_subcommand("all", "Acceptance suite");
    v_all_->add_flag("--small", small_, "Desk-scale parameters (the only size)");

    rho_ = app_.add_subcommand("rho", "Dickman rho or its derivatives");
    rho_->add_option("--u", u_, "Argument")->required()->check(CLI::NonNegativeNumber);
    rho_->add_option("--deriv", deriv_, "Derivative order 0, 1 or 2")->check(CLI::Range(0, 2));

    charsum_ = app_.add_subcommand("charsum", "Character sums over irreducibles or smooth polynomials");
    modulus_opts(charsum_);
    charsum_->add_option("--n", n_, "Degree")->required()->check(CLI::PositiveNumber);
    charsum_->add_option("--m", charsum_m_, "Sum over S(n,m) instead of irreducibles");
    charsum_->add_option("--chi", chi_, "Character index (default: all)");

    lpoly_ = app_.add_subcommand("lpoly", "L-polynomials and inverse roots");
    modulus_opts(lpoly_);
    lpoly_->add_option("--chi", chi_, "Character index");
    lpoly_->add_flag("--all-chi", all_chi_, "Every non-principal character (default)");

    scan_ = app_.add_subcommand("scan", std::string("Predicted vs exact counts over a grid. ") + kScanHelp);
    scan_->add_option("--q", scan_q_, "Field specs")->required()->delimiter(',');
    scan_->add_option("--n", scan_n_, "Degrees")->required()->delimiter(',');
    scan_->add_option("--m", scan_m_, "Smoothness bounds")->required()->delimiter(',');
    scan_->add_option("--prescribe", scan_pres_, "Prescription, repeatable");
  }

  int dispatch() {
    if (count_->parsed()) return cmd_count();
    if (predict_->parsed()) return cmd_predict();
    if (v_parseval_->parsed()) return cmd_verify_parseval();
    if (v_arcs_->parsed()) return cmd_verify_arcs();
    if (v_gauss_->parsed()) return cmd_verify_gauss();
    if (v_all_->parsed()) return cmd_verify_all();
    if (rho_->parsed()) return cmd_rho();
    if (charsum_->parsed()) return cmd_charsum();
    if (lpoly_->parsed()) return cmd_lpoly();
    if (scan_->parsed()) return cmd_scan();
    return 1;
  }

  FieldPtr field() const { return Field::parse(field_); }

  Prescription prescription(const FieldPtr& F) const {
    Prescription p = Prescription::parse(n_, prescribe_);
    p.check_field(F->q());
    return p;
  }

  UnitGroupPtr group(const FieldPtr& F) const {
    return UnitGroup::make(l_, parse_poly(F, g_), limits());
  }

  int cmd_count() {
    auto F = field();
    const Prescription pres = prescription(F);
    const Limits lim = limits();
    json j = header("count");
    j["field"] = F->spec();
    j["q"] = F->q();
    j["n"] = n_;
    j["m"] = m_;
    j["prescription"] = pres.to_text();
    json counts = json::object();
    std::vector<std::pair<std::string, BigInt>> values;
    bool clean = true;
    const auto start = std::chrono::steady_clock::now();
    if (method_ == "enum" || method_ == "both")
      values.emplace_back("enumeration", count_prescribed(F, n_, m_, pres, lim).exact);
    if (method_ == "parseval" || method_ == "both") {
      const ParsevalReport p = parseval_count(F, n_, m_, pres, lim);
      values.emplace_back("parseval", p.count);
      j["parseval_residue"] = p.residue;
      j["parseval_imag"] = p.imag;
      clean = p.clean;
    }
    if (method_ == "dp" || (method_ == "both" && dp_applicable(F->q(), n_, pres)))
      values.emplace_back("dp", count_prescribed_dp(F, n_, m_, pres, lim).exact);
    bool agree = clean;
    for (const auto& [name, v] : values) {
      counts[name] = to_string(v);
      agree &= v == values.front().second;
    }
    j["counts"] = counts;
    j["exact"] = to_string(values.front().second);
    j["agree"] = agree;
    if (timing_) j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(j);
    if (!agree) {
      err_ << "count mismatch:";
      for (const auto& [name, v] : values) err_ << " " << name << "=" << to_string(v);
      err_ << "\n";
      return 2;
    }
    return 0;
  }

  int cmd_predict() {
    auto F = field();
    const Prescription pres = prescription(F);
    PredictOptions opts;
    opts.with_exact = with_exact_;
    opts.force = force_;
    opts.eps = eps_;
    opts.limits = limits();
    const auto start = std::chrono::steady_clock::now();
    const PredictionReport r = predict(F, n_, m_, pres, parse_variant(variant_), opts);
    json j = header("predict");
    j["field"] = F->spec();
    j["q"] = r.q;
    j["n"] = r.n;
    j["m"] = r.m;
    j["prescription"] = r.prescription;
    j["variant"] = variant_name(r.variant);
    j["u"] = r.u;
    j["delta"] = r.delta;
    j["nu"] = r.nu;
    j["psi"] = r.psi_is_exact ? json(to_string(r.psi)) : json(nullptr);
    j["main"] = r.main;
    j["lambda0"] = r.lambda0;
    j["lambda1"] = r.lambda1;
    j["corrected"] = r.corrected;
    j["exact"] = r.exact ? json(to_string(*r.exact)) : json(nullptr);
    j["exact_method"] = r.exact_method ? json(*r.exact_method) : json(nullptr);
    j["rel_err_main"] = r.rel_err_main ? json(*r.rel_err_main) : json(nullptr);
    j["rel_err_corrected"] = r.rel_err_corrected ? json(*r.rel_err_corrected) : json(nullptr);
    j["envelope"] = {{"label", "envelope, not bound (constants 1, C = 1/2)"},
                     {"delta_term", r.envelope.delta_term},
                     {"low_index", r.envelope.low_index},
                     {"major_arc", r.envelope.major_arc},
                     {"minor_arc", r.envelope.minor_arc},
                     {"total", r.envelope.total()}};
    j["extrapolation"] = r.extrapolation;
    if (timing_) j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(j);
    return 0;
  }

  int cmd_verify_parseval() {
    auto F = field();
    const Limits lim = limits();
    const auto grid = s_smooth_grid(SmoothSet(F, n_, m_, lim), lim);
    std::mt19937_64 rng(seed_);
    json cases = json::array();
    int bad = 0;
    for (unsigned k = 0; k < samples_; ++k) {
      std::vector<std::pair<unsigned, Elem>> entries;
      const unsigned size = std::min<unsigned>(rng() % (max_size_ + 1), n_);
      while (entries.size() < size) {
        const unsigned i = rng() % n_;
        if (std::none_of(entries.begin(), entries.end(), [&](auto& e) { return e.first == i; }))
          entries.emplace_back(i, static_cast<Elem>(rng() % F->q()));
      }
      const Prescription pres(n_, entries);
      const ParsevalReport p = parseval_from_grid(F, n_, grid, pres);
      const BigInt exact = count_prescribed(F, n_, m_, pres, lim).exact;
      const bool ok = p.clean && p.count == exact;
      bad += !ok;
      cases.push_back({{"prescription", pres.to_text()},
                       {"parseval", to_string(p.count)},
                       {"enumeration", to_string(exact)},
                       {"residue", p.residue},
                       {"pass", ok}});
      if (!ok)
        err_ << "- " << pres.to_text() << ": expected " << to_string(exact) << "\n+ " << pres.to_text()
             << ": parseval " << to_string(p.count) << " (residue " << p.residue << ")\n";
    }
    json j = header("verify parseval");
    j["field"] = F->spec();
    j["n"] = n_;
    j["m"] = m_;
    j["seed"] = seed_;
    j["cases"] = cases;
    j["pass"] = bad == 0;
    emit(j);
    return bad == 0 ? 0 : 2;
  }

  int cmd_verify_arcs() {
    auto F = field();
    ArcParams p = ArcParams::defaults(n_, m_);
    if (kappa_ >= 0) p.kappa = static_cast<unsigned>(kappa_);
    if (ell_ >= 0) p.ell = static_cast<unsigned>(ell_);
    const Limits lim = limits();
    const std::uint64_t points = sat_pow(F->q(), n_ + 1);
    if (points > lim.enumeration) throw BudgetExceeded("q^{n+1} grid points exceed the enumeration budget");
    const Poly den = Poly::monomial(F, 1, n_ + 1);
    std::uint64_t major = 0, disagreements = 0;
    for (std::uint64_t ai = 0; ai < points; ++ai) {
      const TorusPoint xi(Poly::from_index(F, n_ + 1, ai), den);
      const ArcClass a = classify_arc(xi, p), b = classify_arc_convergents(xi, p);
      major += a.major;
      if (a.major != b.major) {
        ++disagreements;
        err_ << "- " << to_text(xi.a()) << " / " << to_text(xi.g()) << ": exhaustive " << (a.major ? "major" : "minor")
             << "\n+ convergents " << (b.major ? "major" : "minor") << "\n";
      }
    }
    json j = header("verify arcs");
    j["field"] = F->spec();
    j["n"] = n_;
    j["m"] = m_;
    j["kappa"] = p.kappa;
    j["ell"] = p.ell;
    j["valid"] = p.valid();
    j["points"] = points;
    j["major"] = major;
    j["minor"] = points - major;
    j["disagreements"] = disagreements;
    if (sat_pow(F->q(), n_) <= lim.smooth_cache) {
      const MinorDiagnostic d = minor_arc_diagnostic(SmoothSet(F, n_, m_, lim), p, lim);
      j["minor_max_abs"] = d.max_abs;
      j["minor_envelope"] = d.envelope;
      j["minor_argmax"] = to_text(d.argmax.a()) + " / " + to_text(d.argmax.g());
    }
    j["pass"] = disagreements == 0;
    emit(j);
    return disagreements == 0 ? 0 : 2;
  }

  int cmd_verify_gauss() {
    auto F = field();
    const Poly g = parse_poly(F, g_);
    const Poly b = parse_poly(F, b_);
    const GaussCheck c = gauss_identity_check(l_, g, b, tol_, limits());
    json j = header("verify gauss");
    j["field"] = F->spec();
    j["l"] = l_;
    j["g"] = to_text(g);
    j["b"] = to_text(b);
    j["lhs"] = c.lhs;
    j["rhs"] = to_string(c.rhs);
    j["pass"] = c.pass;
    emit(j);
    if (!c.pass) {
      err_ << "- q^l Phi(g)^2 = " << to_string(c.rhs) << "\n+ sum |G(chi)|^2 = " << c.lhs << "\n";
      return 2;
    }
    return 0;
  }

  int cmd_verify_all() {
    AcceptanceOptions opts;
    opts.seed = seed_;
    opts.limits = limits();
    json j = header("verify all");
    json list = json::array();
    bool all = true;
    for (int id = 1; id <= kCriteria; ++id) {
      const CriterionResult r = run_criterion(id, opts);
      all &= r.pass;
      json c = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"table", r.table}};
      if (timing_) c["seconds"] = r.seconds;
      list.push_back(c);
      if (!r.pass) err_ << format_result(r, false) << "\n";
    }
    j["criteria"] = list;
    j["pass"] = all;
    emit(j);
    return all ? 0 : 2;
  }

  int cmd_rho() {
    const RhoTable& T = rho_table();
    const double v = deriv_ == 0 ? T.rho(u_) : T.deriv(u_, deriv_);
    if (json_output(true)) {
      json j = header("rho");
      j["u"] = u_;
      j["deriv"] = deriv_;
      j["value"] = v;
      emit(j);
    } else {
      out_ << rho_text(v) << "\n";
    }
    return 0;
  }

  int cmd_charsum() {
    auto F = field();
    auto G = group(F);
    std::vector<Character> chars;
    if (chi_ >= 0) {
      chars.push_back(Character::from_index(G, static_cast<std::uint64_t>(chi_)));
    } else {
      chars = all_characters(G);
    }
    json j = header("charsum");
    j["field"] = F->spec();
    j["l"] = l_;
    j["g"] = g_;
    j["n"] = n_;
    j["order"] = G->order();
    j["invariants"] = G->invariants();
    json rows = json::array();
    if (charsum_m_ > 0) {
      j["m"] = charsum_m_;
      for (const Character& chi : chars) {
        const SmoothCharSum s = char_sum_smooth(chi, n_, charsum_m_, 0.25, 8.0, limits());
        rows.push_back({{"chi", chi.index()},
                        {"trivial", chi.is_trivial()},
                        {"sum", cjson(s.sum)},
                        {"abs", std::abs(s.sum)},
                        {"envelope", s.envelope},
                        {"within", s.within}});
      }
    } else {
      const Limits lim = limits();
      const auto counts = class_counts(*G, enumerate_irreducibles(F, n_, lim));
      const auto sums = character_sums(G, counts);
      const double bound = irreducible_sum_bound(*G, n_);
      j["bound"] = bound;
      for (const Character& chi : chars) {
        const auto s = sums[chi.index()];
        rows.push_back({{"chi", chi.index()},
                        {"trivial", chi.is_trivial()},
                        {"sum", cjson(s)},
                        {"abs", std::abs(s)},
                        {"within_bound", chi.is_trivial() ? json(nullptr) : json(std::abs(s) <= bound + 1e-9)}});
      }
    }
    j["characters"] = rows;
    emit(j);
    return 0;
  }

  int cmd_lpoly() {
    auto F = field();
    auto G = group(F);
    std::vector<std::pair<Character, LPolyReport>> reports;
    if (chi_ >= 0 && !all_chi_) {
      Character chi = Character::from_index(G, static_cast<std::uint64_t>(chi_));
      reports.emplace_back(chi, l_poly(chi, tol_, limits()));
    } else {
      reports = l_polys(G, tol_, limits());
    }
    json j = header("lpoly");
    j["field"] = F->spec();
    j["l"] = l_;
    j["g"] = g_;
    j["order"] = G->order();
    j["invariants"] = G->invariants();
    json rows = json::array();
    bool all_ok = true;
    for (const auto& [chi, r] : reports) {
      json moduli = json::array();
      for (const auto& z : r.inverse_roots) moduli.push_back(std::abs(z));
      all_ok &= r.weil_ok;
      rows.push_back({{"chi", chi.index()},
                      {"exps", chi.exps()},
                      {"coeffs", cjson(r.coeffs)},
                      {"degree", r.degree},
                      {"vanishes_above", r.vanishes_above},
                      {"inverse_roots", cjson(r.inverse_roots)},
                      {"moduli", moduli},
                      {"unit_roots", r.unit_roots},
                      {"sqrt_q_roots", r.sqrt_q_roots},
                      {"other_roots", r.other_roots},
                      {"weil_ok", r.weil_ok}});
    }
    j["characters"] = rows;
    j["all_weil_ok"] = all_ok;
    emit(j);
    return 0;
  }

  int cmd_scan() {
    if (scan_pres_.empty()) scan_pres_.push_back("");
    std::vector<ScanCell> cells;
    for (const auto& q : scan_q_)
      for (unsigned n : scan_n_)
        for (unsigned m : scan_m_) {
          if (m < 1 || m > n) continue;
          for (const auto& p : scan_pres_) cells.push_back({q, n, m, p});
        }
    const auto rows = scan(cells, limits());
    if (format_ == "json") {
      json j = header("scan");
      json list = json::array();
      for (const auto& r : rows)
        list.push_back({{"q", r.q},
                        {"n", r.n},
                        {"m", r.m},
                        {"prescription", r.prescription},
                        {"exact", to_string(r.exact)},
                        {"main", r.main},
                        {"corrected", r.corrected},
                        {"rel_err_main", r.rel_err_main},
                        {"rel_err_corrected", r.rel_err_corrected}});
      j["rows"] = list;
      emit(j);
    } else {
      out_ << scan_csv_header() << "\n";
      for (const auto& r : rows) out_ << scan_csv_row(r) << "\n";
    }
    return 0;
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"smoothpoly"};

  std::uint64_t budget_ = Limits{}.enumeration;
  std::uint64_t group_budget_ = Limits{}.group;
  unsigned threads_ = 0;
  std::uint64_t seed_ = 1;
  double tol_ = 1e-6;
  std::string format_ = "auto";
  bool timing_ = false;

  std::string field_;
  unsigned n_ = 0;
  unsigned m_ = 0;
  std::string prescribe_;
  std::string method_ = "enum";
  std::string variant_ = "thm2";
  bool with_exact_ = false;
  bool force_ = false;
  double eps_ = 0.1;
  unsigned samples_ = 20;
  unsigned max_size_ = 3;
  int kappa_ = -1;
  int ell_ = -1;
  unsigned l_ = 0;
  std::string g_;
  std::string b_ = "1";
  bool small_ = false;
  double u_ = 0;
  int deriv_ = 0;
  unsigned charsum_m_ = 0;
  long long chi_ = -1;
  bool all_chi_ = false;
  std::vector<std::string> scan_q_;
  std::vector<unsigned> scan_n_;
  std::vector<unsigned> scan_m_;
  std::vector<std::string> scan_pres_;

  CLI::App* count_ = nullptr;
  CLI::App* predict_ = nullptr;
  CLI::App* verify_ = nullptr;
  CLI::App* v_parseval_ = nullptr;
  CLI::App* v_arcs_ = nullptr;
  CLI::App* v_gauss_ = nullptr;
  CLI::App* v_all_ = nullptr;
  CLI::App* rho_ = nullptr;
  CLI::App* charsum_ = nullptr;
  CLI::App* lpoly_ = nullptr;
  CLI::App* scan_ = nullptr;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace smoothpoly
