// Command-line front end. Exact sieve counts, asymptotic predictions and
// exact-vs-predicted comparison tables, plus character tables, L values and
// a self-test battery. Tables are CSV on standard output (header row, '.'
// decimal, no locale); single predictions are JSON. Diagnostics go to
// standard error. Exit 0 on success, 2 on usage errors, 3 on
// numeric-validation failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsdlab/counters.hpp"
#include "lsdlab/lvalues.hpp"
#include "lsdlab/predictors.hpp"

namespace {

using namespace lsdlab;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<std::string> kQuantities = {
    "restricted",      "lambda-star-div", "lambda-star-eq", "lambda-prime-min",
    "lambda-prime-eq", "sathe-omega",     "sathe-Omega"};

struct Options {
  std::string quantity;
  u64 q = 0;
  std::vector<u64> A;
  u64 a = 0;
  u32 k = 0;
  u32 N = 1;
  std::vector<double> xs;
  std::string spf_cache;
};

bool is_sathe(const std::string& quantity) {
  return quantity.rfind("sathe-", 0) == 0;
}

void check_quantity_flags(const Options& o, const CLI::App* sub) {
  if (o.quantity == "restricted" && o.A.empty())
    throw DomainError("restricted requires --A");
  if (is_sathe(o.quantity) && sub->count("--a") == 0)
    throw DomainError(o.quantity + " requires --a");
}

std::string parameter_string(const Options& o) {
  std::string s = "q=" + std::to_string(o.q);
  if (o.quantity == "restricted") {
    s += " A={";
    for (size_t i = 0; i < o.A.size(); ++i)
      s += (i ? ";" : "") + std::to_string(o.A[i]);
    s += "}";
  } else if (is_sathe(o.quantity)) {
    s += " a=" + std::to_string(o.a) + " k=" + std::to_string(o.k);
  }
  return s;
}

// Reuses a cached table when it covers the range, otherwise sieves and,
// when a path is given, saves for the next run.
SpfTable acquire_table(const std::string& path, u64 limit) {
  if (!path.empty() && std::filesystem::exists(path)) {
    SpfTable t = SpfTable::load(path);
    if (t.limit() >= limit) return t;
    std::fprintf(stderr, "cache %s covers %llu < %llu, resieving\n",
                 path.c_str(), (unsigned long long)t.limit(),
                 (unsigned long long)limit);
  }
  SpfTable t = sieve_spf(limit);
  if (!path.empty()) t.save(path);
  return t;
}

u64 exact_count(const Options& o, u64 x, const SpfTable& table) {
  if (o.quantity == "restricted") return count_restricted(x, o.q, o.A, &table);
  if (o.quantity == "lambda-star-div")
    return count_lambda_star_divisible(x, o.q, &table);
  if (o.quantity == "lambda-star-eq")
    return count_lambda_star_equal(x, o.q, &table);
  if (o.quantity == "lambda-prime-min")
    return count_lambda_prime_at_least(x, o.q, &table);
  if (o.quantity == "lambda-prime-eq")
    return count_lambda_prime_equal(x, o.q, &table);
  Histogram h = o.quantity == "sathe-omega"
                    ? histogram_omega_a(x, o.q, o.a, &table)
                    : histogram_Omega_a(x, o.q, o.a, &table);
  auto it = h.bins.find(o.k);
  return it == h.bins.end() ? 0 : it->second;
}

// One contour pass per configuration; the expansion is then reused across
// the whole x list. The local laws depend on Y = log log x, so those are
// evaluated per point.
class PredictionPlan {
 public:
  explicit PredictionPlan(const Options& o) : o_(o) {
    if (o.quantity == "restricted")
      expansion_ = expansion_restricted(o.q, o.A, o.N);
    else if (o.quantity == "lambda-star-div" || o.quantity == "lambda-star-eq")
      expansion_ = expansion_lambda_star_divisible(o.q, o.N);
    else if (o.quantity == "lambda-prime-min")
      expansion_ = expansion_primary_at_least(o.q, o.N);
    else if (o.quantity == "lambda-prime-eq") {
      expansion_ = expansion_primary_at_least(o.q, o.N);
      next_ = expansion_primary_at_least(next_prime_power(o.q), o.N);
    }
  }

  double at(double x) const {
    if (!(x >= 4.0)) throw DomainError("prediction requires x >= 4");
    if (o_.quantity == "sathe-omega")
      return predict_omega_hist(x, o_.q, o_.a, o_.k);
    if (o_.quantity == "sathe-Omega")
      return predict_Omega_hist(x, o_.q, o_.a, o_.k);
    double v = expansion_->evaluate(x);
    if (o_.quantity == "lambda-star-eq") v -= li_correction(x, o_.q);
    if (o_.quantity == "lambda-prime-eq") v -= next_->evaluate(x);
    return v;
  }

  const std::optional<Expansion>& expansion() const { return expansion_; }
  const std::optional<Expansion>& next() const { return next_; }

 private:
  Options o_;
  std::optional<Expansion> expansion_;
  std::optional<Expansion> next_;
};

int cmd_count(const Options& o, const CLI::App* sub) {
  check_quantity_flags(o, sub);
  double xmax = *std::max_element(o.xs.begin(), o.xs.end());
  SpfTable table = acquire_table(o.spf_cache, (u64)xmax);
  std::printf("x,quantity,parameters,count\n");
  for (double x : o.xs)
    std::printf("%s,%s,%s,%llu\n", fmt(x).c_str(), o.quantity.c_str(),
                parameter_string(o).c_str(),
                (unsigned long long)exact_count(o, (u64)x, table));
  return 0;
}

json coefficients_json(const Expansion& e) {
  json out = json::array();
  for (const cplx& c : e.coefficients)
    out.push_back({c.real(), c.imag()});
  return out;
}

int cmd_predict(const Options& o, const CLI::App* sub) {
  check_quantity_flags(o, sub);
  if (o.xs.size() != 1) throw DomainError("predict takes a single --x");
  double x = o.xs[0];

  json j;
  j["application"] = o.quantity;
  json& p = j["parameters"];
  p["q"] = o.q;
  if (o.quantity == "restricted") p["A"] = o.A;
  if (is_sathe(o.quantity)) {
    p["a"] = o.a;
    p["k"] = o.k;
  }
  p["x"] = x;

  PredictionPlan plan(o);
  double value = plan.at(x);
  if (plan.expansion()) {
    j["N"] = o.N;
    j["alpha0"] = plan.expansion()->alpha0.real();
    j["coefficients"] = coefficients_json(*plan.expansion());
  }
  if (o.quantity == "lambda-star-eq") j["li_correction"] = li_correction(x, o.q);
  if (o.quantity == "lambda-prime-eq") {
    j["next_q"] = next_prime_power(o.q);
    j["coefficients_next"] = coefficients_json(*plan.next());
  }
  if (is_sathe(o.quantity)) {
    double phi = double(euler_phi(o.q));
    j["coefficient"] = value / x * std::pow(std::log(x), 1.0 / phi);
  }
  j["prediction"] = value;
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

int cmd_compare(const Options& o, const CLI::App* sub) {
  check_quantity_flags(o, sub);
  double xmax = *std::max_element(o.xs.begin(), o.xs.end());
  SpfTable table = acquire_table(o.spf_cache, (u64)xmax);
  PredictionPlan plan(o);
  std::printf("x,quantity,parameters,exact,predicted,rel_error\n");
  for (double x : o.xs) {
    u64 exact = exact_count(o, (u64)x, table);
    double predicted = plan.at(x);
    std::string rel = exact > 0 ? fmt(predicted / double(exact) - 1.0) : "NA";
    std::printf("%s,%s,%s,%llu,%s,%s\n", fmt(x).c_str(), o.quantity.c_str(),
                parameter_string(o).c_str(), (unsigned long long)exact,
                fmt(predicted).c_str(), rel.c_str());
  }
  return 0;
}

int cmd_chars(u64 q) {
  CharacterGroup g(q);
  std::fprintf(stderr, "q=%llu phi=%llu rank=%zu\n", (unsigned long long)q,
               (unsigned long long)g.phi(), g.rank());
  std::printf("t,a,re,im\n");
  for (u64 t = 0; t < g.phi(); ++t)
    for (u64 a : g.units()) {
      cplx v = g.chi(t, a);
      std::printf("%llu,%llu,%s,%s\n", (unsigned long long)t,
                  (unsigned long long)a, fmt(v.real()).c_str(),
                  fmt(v.imag()).c_str());
    }
  return 0;
}

// Values at s = 1: L(1, chi_t) for non-principal t; the principal row
// reports the completed value (s-1) L(s, chi_0) at s = 1, which is phi/q.
int cmd_lvalues(u64 q) {
  CharacterGroup g(q);
  LFunctionEngine engine(g);
  const std::vector<cplx>& t1 = engine.t_one_all();
  std::printf("t,re,im\n");
  for (u64 t = 0; t < g.phi(); ++t) {
    cplx v = t == 0 ? cplx(double(g.phi()) / double(q)) : std::exp(t1[t]);
    std::printf("%llu,%s,%s\n", (unsigned long long)t, fmt(v.real()).c_str(),
                fmt(v.imag()).c_str());
  }
  return 0;
}

// --- self-test battery ------------------------------------------------

bool check_unit_criteria() {
  SpfTable table = sieve_spf(3000);
  for (u64 n = 1; n <= 3000; ++n) {
    Factorization f = factorize(n, table);
    u64 ls = lambda_star(f, &table);
    for (u64 q : {4, 6, 8, 12}) {
      bool divisible = ls == kOrderInfinity || ls % q == 0;
      if (divisible != divides_lambda_star_criterion(q, f)) return false;
    }
    u64 lp = lambda_prime(f, &table);
    for (u64 q : {3, 4, 5, 8, 9}) {
      bool at_least = lp == kOrderInfinity || lp >= q;
      if (at_least != primary_floor_criterion(q, f)) return false;
    }
  }
  return true;
}

bool check_orthogonality() {
  for (u64 q : {5, 8, 9, 12, 15, 16, 21, 24}) {
    CharacterGroup g(q);
    for (u64 t = 0; t < g.phi(); ++t)
      for (u64 u = 0; u < g.phi(); ++u) {
        cplx s = 0.0;
        for (u64 a : g.units()) s += g.chi(t, a) * std::conj(g.chi(u, a));
        double want = t == u ? double(g.phi()) : 0.0;
        if (std::abs(s - want) > 1e-9) return false;
      }
  }
  return true;
}

bool check_l_closed_forms() {
  CharacterGroup g4(4), g3(3);
  LFunctionEngine e4(g4), e3(g3);
  double pi = std::numbers::pi;
  return std::abs(e4.l_one_digamma(1) - pi / 4.0) < 1e-10 &&
         std::abs(e3.l_one_digamma(1) - pi / (3.0 * std::sqrt(3.0))) < 1e-10;
}

bool check_branch_consistency() {
  for (u64 q = 3; q <= 24; ++q) {
    CharacterGroup g(q);
    if (g.phi() == 1) continue;
    LFunctionEngine engine(g);
    const std::vector<cplx>& t1 = engine.t_one_all();
    for (u64 t = 1; t < g.phi(); ++t) {
      cplx direct = engine.l_one_digamma(t);
      if (std::abs(std::exp(t1[t]) - direct) > 1e-8 * std::abs(direct))
        return false;
    }
    if (!(engine.product_l_one_nonprincipal() > 0.0)) return false;
  }
  return true;
}

bool check_euler_products() {
  return std::fabs(prime_power_correction(4, {1}) - 0.925261574757049) <
             1e-8 &&
         std::fabs(prime_power_correction(3, {2}) - 1.18914439446694) < 1e-8;
}

bool check_counters() {
  SpfTable table = sieve_spf(20000);
  u64 direct = 0;
  for (u64 n = 1; n <= 20000; ++n) {
    Factorization f = factorize(n, table);
    bool all = true;
    for (const PrimePower& pp : f.entries) all = all && pp.prime % 4 == 1;
    direct += all;
  }
  if (count_restricted(20000, 4, {1}, &table) != direct) return false;
  return histogram_omega_a(20000, 3, 1, &table).total() == 20000;
}

bool check_series_coefficients() {
  cplx mu0 = series_coefficient(0, Application::restricted(4, {1}));
  if (std::abs(mu0 - cplx(k0(4, {1}))) > 1e-8) return false;
  return std::fabs(kappa0(3) - r0(4)) < 1e-12;
}

bool check_divisor_laws() {
  CharacterGroup g(5);
  for (u64 a : g.units()) {
    if (std::abs(c0_of_z(1.0, 5, a) - 1.0) > 1e-10) return false;
    if (std::abs(c0_tilde_of_z(1.0, 5, a) - 1.0) > 1e-10) return false;
  }
  return std::fabs(p0k(2.5, 0, 3, 1) - c0_of_z(0.0, 3, 1).real()) < 1e-10;
}

int cmd_selftest() {
  struct Check {
    const char* name;
    bool (*fn)();
  };
  const Check checks[] = {
      {"unit-group criteria", check_unit_criteria},
      {"character orthogonality", check_orthogonality},
      {"l-value closed forms", check_l_closed_forms},
      {"log-branch consistency", check_branch_consistency},
      {"euler products", check_euler_products},
      {"sieve counters", check_counters},
      {"series coefficients", check_series_coefficients},
      {"divisor-law normalization", check_divisor_laws},
  };
  int failed = 0;
  for (const Check& c : checks) {
    bool ok = c.fn();
    failed += !ok;
    std::printf("%-26s %s\n", c.name, ok ? "pass" : "FAIL");
  }
  std::printf("%d/%d suites passed\n", int(std::size(checks)) - failed,
              int(std::size(checks)));
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact counts and asymptotic predictions for multiplicative "
      "constraints on n <= x"};
  app.require_subcommand(1);

  Options o;
  auto add_quantity_flags = [&](CLI::App* sub, bool with_x, bool with_N,
                                bool with_cache) {
    sub->add_option("quantity", o.quantity, "what to evaluate")
        ->required()
        ->check(CLI::IsMember(kQuantities));
    sub->add_option("--q", o.q, "modulus or invariant-factor target")
        ->required();
    sub->add_option("--A", o.A,
                    "allowed unit classes mod q (restricted only)")
        ->delimiter(',');
    sub->add_option("--a", o.a, "unit class mod q (sathe-* only)");
    sub->add_option("--k", o.k, "prime-divisor count bin (sathe-* only)")
        ->capture_default_str();
    if (with_x)
      sub->add_option("--x", o.xs,
                      "thresholds, comma separated, scientific notation ok")
          ->required()
          ->delimiter(',');
    if (with_N)
      sub->add_option("--N", o.N, "expansion order (series families)")
          ->capture_default_str();
    if (with_cache)
      sub->add_option("--spf-cache", o.spf_cache,
                      "factor-table cache path (built and saved if absent)");
  };

  CLI::App* count_cmd = app.add_subcommand("count", "exact sieve counts, CSV");
  add_quantity_flags(count_cmd, true, false, true);
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "single prediction, JSON");
  add_quantity_flags(predict_cmd, true, true, false);
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "exact vs predicted across an x list, CSV");
  add_quantity_flags(compare_cmd, true, true, true);

  u64 table_q = 0;
  CLI::App* chars_cmd =
      app.add_subcommand("chars", "character table of the units mod q, CSV");
  chars_cmd->add_option("--q", table_q, "modulus")->required();
  CLI::App* lvalues_cmd =
      app.add_subcommand("lvalues", "L(1, chi) for every character mod q, CSV");
  lvalues_cmd->add_option("--q", table_q, "modulus")->required();
  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "run the module invariant battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(count_cmd)) return cmd_count(o, count_cmd);
    if (app.got_subcommand(predict_cmd)) return cmd_predict(o, predict_cmd);
    if (app.got_subcommand(compare_cmd)) return cmd_compare(o, compare_cmd);
    if (app.got_subcommand(chars_cmd)) return cmd_chars(table_q);
    if (app.got_subcommand(lvalues_cmd)) return cmd_lvalues(table_q);
    if (app.got_subcommand(selftest_cmd)) return cmd_selftest();
  } catch (const PoleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const BranchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ContinuationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ExtractionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
