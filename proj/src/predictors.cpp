#include "lsdlab/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace lsdlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx power_of(double base, cplx e) { return std::exp(e * std::log(base)); }

double certify_real(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real())))
    throw ValidationError(std::string(what) + ": imaginary residue " +
                          std::to_string(v.imag()));
  return v.real();
}

}  // namespace

Application::Application(std::string name, CharacterGroup group,
                         std::vector<u64> classes)
    : name_(std::move(name)),
      group_(std::move(group)),
      classes_(std::move(classes)) {
  alpha_ = exponents_restricted(group_, classes_);
  alpha0_ = alpha_.alpha[0].real();
}

Application Application::restricted(u64 q, const std::vector<u64>& A) {
  if (q < 2) throw DomainError("restricted family: modulus >= 2 required");
  if (A.empty()) throw DomainError("restricted family: empty class set");
  std::vector<u64> cls;
  cls.reserve(A.size());
  for (u64 a : A) {
    u64 r = a % q;
    if (std::gcd(r, q) != 1)
      throw DomainError("restricted family: class " + std::to_string(a) +
                        " is not a unit mod " + std::to_string(q));
    cls.push_back(r);
  }
  std::sort(cls.begin(), cls.end());
  cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  return Application("restricted", CharacterGroup(q), std::move(cls));
}

Application Application::lambda_star_divisible(u64 q) {
  if (q < 4 || q % 2 != 0)
    throw DomainError("lambda*-divisibility family: even modulus >= 4");
  Application app("lambda-star-div", CharacterGroup(q), {1});
  app.half_even_ = true;
  Factorization f = factorize(q);
  u64 P = f.entries.back().prime;
  u32 e = f.entries.back().exponent;
  u64 rest = q;
  for (u32 i = 0; i < e; ++i) rest /= P;
  // the top prime may re-enter with multiplicity > e when q | phi(P^{e+1})
  if (P > 2 && (P - 1) % rest == 0) {
    app.special_prime_ = P;
    app.special_exponent_ = e + 1;
  }
  return app;
}

Application Application::primary_at_least(u64 q) {
  if (q < 2 || !is_prime_power(q))
    throw DomainError("least-invariant family: prime power >= 2 required");
  if (q == 2) {
    // vacuous floor: every n qualifies, the series is zeta itself
    Application app("lambda-prime-min", CharacterGroup(2), {1});
    app.full_even_ = true;
    return app;
  }
  u64 Q = modulus_Q(q);
  Application app("lambda-prime-min", CharacterGroup(Q), residue_set_BQ(q));
  app.half_even_ = true;
  return app;
}

cplx Application::log_extra(cplx s) const {
  cplx v = 0.0;
  if (half_even_) v += std::log(1.0 + power_of(2.0, -s));
  if (full_even_) v -= std::log(1.0 - power_of(2.0, -s));
  if (special_prime_ != 0) {
    double P = double(special_prime_);
    cplx num = power_of(P, -double(special_exponent_) * s);
    v += std::log(1.0 + num / (1.0 - power_of(P, -s)));
  }
  return v;
}

double Expansion::evaluate(double x) const {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  if (coefficients.empty()) throw DomainError("prediction: no coefficients");
  double L = std::log(x);
  cplx sum = 0.0;
  double powL = 1.0;
  for (size_t j = 0; j < coefficients.size(); ++j) {
    sum += coefficients[j] * rgamma(alpha0 - double(j)) / powL;
    powL *= L;
  }
  cplx lead = std::exp((alpha0 - 1.0) * std::log(L));
  return x * (lead * sum).real();
}

double k0(u64 q, const std::vector<u64>& A, const TruncationPolicy& policy) {
  Application app = Application::restricted(q, A);
  LFunctionEngine engine(app.group());
  const std::vector<cplx>& t1 = engine.t_one_all();
  const std::vector<cplx>& alpha = app.alpha();
  cplx expo = 0.0;
  for (size_t t = 0; t < alpha.size(); ++t) expo += alpha[t] * t1[t];
  double lead = certify_real(std::exp(expo), "restricted leading coefficient");
  return lead * prime_power_correction(q, app.classes(), policy);
}

double r0(u64 q, const TruncationPolicy& policy) {
  if (q < 4 || q % 2 != 0)
    throw DomainError("lambda*-divisibility family: even modulus >= 4");
  CharacterGroup g(q);
  LFunctionEngine engine(g);
  double phi = double(g.phi());
  double base = phi / double(q) * engine.product_l_one_nonprincipal();
  return g_lambda_star_one(q, policy) * std::pow(base, 1.0 / phi);
}

double kappa0(u64 q, const TruncationPolicy& policy) {
  if (q < 2 || !is_prime_power(q))
    throw DomainError("least-invariant family: prime power >= 2 required");
  if (q == 2) return 1.0;  // vacuous floor: the series is zeta, cofactor 1
  u64 Q = modulus_Q(q);
  CharacterGroup g(Q);
  ExponentVector ev = exponents_restricted(g, residue_set_BQ(q));
  // all L(1, chi) mod Q at once: one digamma vector, one group transform
  std::vector<cplx> f(g.phi());
  for (u32 pos = 0; pos < g.phi(); ++pos)
    f[pos] = digamma(double(g.unit_at(pos)) / double(Q));
  std::vector<cplx> sums = unit_sums(g, f);
  double log_l_part = 0.0;
  double worst_imag = 0.0;
  for (size_t t = 1; t < sums.size(); ++t) {
    worst_imag = std::max(worst_imag, std::abs(ev.alpha[t].imag()));
    cplx l_one = -std::conj(sums[t]) / double(Q);
    log_l_part += ev.alpha[t].real() * std::log(std::abs(l_one));
  }
  if (worst_imag > 1e-8)
    throw ValidationError("least-invariant exponents not real: residue " +
                          std::to_string(worst_imag));
  double b = ev.alpha[0].real();
  double principal = b * std::log(double(g.phi()) / double(Q));
  return g_primary_one(q, policy) * std::exp(principal + log_l_part);
}

namespace {

// All Cauchy moments 0..max_order of Z(s) = s^{-1} F(s) G(s) (s-1)^{alpha0}
// around s = 1: branch-continued in from s = 2, trapezoid on the circle,
// node count doubled until every moment is stable.
std::vector<cplx> contour_moments(const Application& app,
                                  const ContourPolicy& pol) {
  const CharacterGroup& g = app.group();
  if (g.phi() > kMaxContourPhi)
    throw CapacityError("coefficient contour: dual group order " +
                        std::to_string(g.phi()) + " exceeds " +
                        std::to_string(kMaxContourPhi));
  if (!(pol.rho > 0.0 && pol.rho <= 0.2))
    throw DomainError("coefficient contour: radius in (0, 0.2] required");
  CorrectionSums sums(g.modulus(), pol.primes, pol.taylor_rows);
  LFunctionEngine engine(g);
  const std::vector<cplx>& alpha = app.alpha();

  struct Pass {
    std::vector<cplx> moments;
    double scale = 0.0;  // mean node magnitude, the roundoff floor
  };
  auto run = [&](u32 M) {
    std::vector<cplx> path;
    double seg = 1.0 - pol.rho;
    u32 steps = u32(std::ceil(seg / 0.01));
    path.reserve(steps + M + 2);
    for (u32 i = 0; i <= steps; ++i)
      path.push_back(2.0 - seg * double(i) / double(steps));
    size_t first = path.size();
    for (u32 m = 0; m < M; ++m)
      path.push_back(1.0 + std::polar(pol.rho, kTwoPi * double(m) / double(M)));
    path.push_back(1.0 + pol.rho);  // closes the loop
    std::vector<std::vector<cplx>> rows = engine.log_l_path(path);
    for (size_t t = 0; t < alpha.size(); ++t)
      if (std::abs(rows.back()[t] - rows[first][t]) > 1e-6)
        throw ExtractionError(
            "coefficient contour: winding on the circle (character " +
            std::to_string(t) + ")");
    std::vector<std::vector<cplx>> terms(pol.max_order + 1);
    for (auto& v : terms) v.reserve(M);
    double scale = 0.0;
    for (u32 m = 0; m < M; ++m) {
      cplx s = path[first + m];
      const std::vector<cplx>& logs = rows[first + m];
      cplx expo = app.log_extra(s);
      for (size_t t = 0; t < alpha.size(); ++t) expo += alpha[t] * logs[t];
      cplx z = std::exp(expo) * sums.correction_at(s, app.classes()) / s;
      scale += std::abs(z);
      cplx u = std::polar(1.0, -kTwoPi * double(m) / double(M)) / pol.rho;
      cplx w = z;
      for (u32 j = 0; j <= pol.max_order; ++j) {
        terms[j].push_back(w);
        w *= u;
      }
    }
    Pass p;
    p.scale = scale / double(M);
    for (u32 j = 0; j <= pol.max_order; ++j)
      p.moments.push_back(pairwise_sum(terms[j]) / double(M));
    return p;
  };

  Pass prev = run(pol.nodes);
  for (u32 M = pol.nodes * 2; M <= pol.max_nodes; M *= 2) {
    Pass cur = run(M);
    bool settled = true;
    for (u32 j = 0; j <= pol.max_order; ++j) {
      double denom = std::max({std::abs(cur.moments[j]),
                               std::abs(prev.moments[j]), 1e-4 * cur.scale});
      if (std::abs(cur.moments[j] - prev.moments[j]) > pol.rel_tol * denom)
        settled = false;
    }
    if (settled) return cur.moments;
    prev = std::move(cur);
  }
  throw ExtractionError("coefficient contour: no convergence within " +
                        std::to_string(pol.max_nodes) + " nodes");
}

double closed_form_leading(const Application& app, const ContourPolicy& pol) {
  u64 q = app.group().modulus();
  if (app.name() == "restricted") return k0(q, app.classes(), pol.primes);
  if (app.name() == "lambda-star-div") return r0(q, pol.primes);
  return 0.0;  // least-invariant handled by its own entry point
}

Expansion assemble(const Application& app, double c0, u32 N,
                   const ContourPolicy& pol) {
  if (N > pol.max_order)
    throw DomainError("expansion order " + std::to_string(N) + " exceeds " +
                      std::to_string(pol.max_order));
  Expansion e;
  e.alpha0 = app.alpha0();
  e.coefficients.assign(N + 1, 0.0);
  e.coefficients[0] = c0;
  if (N >= 1) {
    std::vector<cplx> mu = contour_moments(app, pol);
    for (u32 j = 1; j <= N; ++j) e.coefficients[j] = mu[j];
  }
  return e;
}

}  // namespace

cplx series_coefficient(u32 j, const Application& app,
                        const ContourPolicy& policy) {
  if (j > policy.max_order)
    throw DomainError("coefficient index " + std::to_string(j) + " exceeds " +
                      std::to_string(policy.max_order));
  return contour_moments(app, policy)[j];
}

Expansion expansion_restricted(u64 q, const std::vector<u64>& A, u32 N,
                               const ContourPolicy& policy) {
  Application app = Application::restricted(q, A);
  return assemble(app, closed_form_leading(app, policy), N, policy);
}

Expansion expansion_lambda_star_divisible(u64 q, u32 N,
                                          const ContourPolicy& policy) {
  Application app = Application::lambda_star_divisible(q);
  return assemble(app, closed_form_leading(app, policy), N, policy);
}

Expansion expansion_primary_at_least(u64 q, u32 N,
                                     const ContourPolicy& policy) {
  double c0 = kappa0(q, policy.primes);
  Application app = Application::primary_at_least(q);
  return assemble(app, c0, N, policy);
}

double li_correction(double x, u64 q) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return (logarithmic_integral(x) + logarithmic_integral(x / 2)) /
         double(euler_phi(q));
}

double predict_restricted(double x, u64 q, const std::vector<u64>& A, u32 N,
                          const ContourPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return expansion_restricted(q, A, N, policy).evaluate(x);
}

double predict_lambda_star_divisible(double x, u64 q, u32 N,
                                     const ContourPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return expansion_lambda_star_divisible(q, N, policy).evaluate(x);
}

double predict_lambda_star_equal(double x, u64 q, u32 N,
                                 const ContourPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return expansion_lambda_star_divisible(q, N, policy).evaluate(x) -
         li_correction(x, q);
}

double predict_primary_at_least(double x, u64 q, u32 N,
                                const ContourPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return expansion_primary_at_least(q, N, policy).evaluate(x);
}

double predict_lambda_prime_equal(double x, u64 q, u32 N,
                                  const ContourPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  return predict_primary_at_least(x, q, N, policy) -
         predict_primary_at_least(x, next_prime_power(q), N, policy);
}

double leading_radial(const Application& app, double delta,
                      const TruncationPolicy& policy) {
  if (!(delta > 0.0 && delta <= 0.05))
    throw DomainError("radial probe: delta in (0, 0.05] required");
  const CharacterGroup& g = app.group();
  CorrectionSums sums(g.modulus(), policy, 6);
  LFunctionEngine engine(g);
  const std::vector<cplx>& alpha = app.alpha();
  cplx mean = 0.0;
  for (double s : {1.0 + delta, 1.0 - delta}) {
    std::vector<cplx> logs = engine.log_l_at(s);
    cplx expo = app.log_extra(s);
    for (size_t t = 0; t < alpha.size(); ++t) expo += alpha[t] * logs[t];
    mean += std::exp(expo) * sums.correction_at(s, app.classes()) / s;
  }
  return certify_real(mean / 2.0, "radial leading coefficient");
}

namespace {

// shared scaffolding for the prime-divisor law coefficients of one (q, a)
struct SatheData {
  CharacterGroup g;
  LFunctionEngine engine;
  ClassProductData cpd;
  cplx t_a = 0.0;  // sum over nonprincipal chi of conj(chi(a)) log L(1, chi)

  SatheData(u64 q, u64 a, const TruncationPolicy& policy)
      : g(q), engine(g), cpd(q, a % q, policy) {
    u64 res = a % q;
    g.unit_position(res);  // rejects non-units
    const std::vector<cplx>& t1 = engine.t_one_all();
    for (u64 t = 1; t < g.phi(); ++t)
      t_a += std::conj(g.chi(t, res)) * t1[t];
  }

  cplx c0(cplx z, bool with_multiplicity, double eps0) const {
    double phi = double(g.phi());
    cplx a0 = 1.0 + (z - 1.0) / phi;
    cplx holomorphic =
        with_multiplicity ? cpd.g_Omega(z, eps0) : cpd.g_omega(z);
    return rgamma(a0) * holomorphic *
           power_of(phi / double(g.modulus()), a0) *
           std::exp((z - 1.0) / phi * t_a);
  }
};

double sathe_contour(const SatheData& d, double Y, u32 k, double radius,
                     bool with_multiplicity, const LocalLawPolicy& pol) {
  double phi = double(d.g.phi());
  struct Pass {
    cplx value;
    double scale = 0.0;
  };
  auto run = [&](u32 M) {
    std::vector<cplx> terms;
    terms.reserve(M);
    double scale = 0.0;
    for (u32 m = 0; m < M; ++m) {
      double theta = kTwoPi * double(m) / double(M);
      cplx z = std::polar(radius, theta);
      cplx t = d.c0(z, with_multiplicity, pol.eps0) * std::exp(z * Y / phi) *
               std::polar(std::pow(radius, -double(k)), -double(k) * theta);
      terms.push_back(t);
      scale += std::abs(t);
    }
    return Pass{pairwise_sum(terms) / double(M), scale / double(M)};
  };
  Pass prev = run(pol.nodes);
  for (u32 M = pol.nodes * 2; M <= pol.max_nodes; M *= 2) {
    Pass cur = run(M);
    double denom = std::max(
        {std::abs(cur.value), std::abs(prev.value), 1e-4 * cur.scale});
    if (std::abs(cur.value - prev.value) <= pol.rel_tol * denom) {
      if (std::abs(cur.value.imag()) >
          1e-8 * std::max(1.0, std::abs(cur.value.real())))
        throw ExtractionError("divisor-law contour: imaginary residue " +
                              std::to_string(cur.value.imag()));
      return cur.value.real();
    }
    prev = cur;
  }
  throw ExtractionError("divisor-law contour: no convergence within " +
                        std::to_string(pol.max_nodes) + " nodes");
}

double tilde_radius(const SatheData& d, const LocalLawPolicy& pol) {
  return std::min(pol.K, (1.0 - pol.eps0) * double(d.cpd.least_prime()));
}

}  // namespace

cplx c0_of_z(cplx z, u64 q, u64 a, const TruncationPolicy& policy) {
  return SatheData(q, a, policy).c0(z, false, kDefaultEps0);
}

cplx c0_tilde_of_z(cplx z, u64 q, u64 a, const TruncationPolicy& policy) {
  return SatheData(q, a, policy).c0(z, true, kDefaultEps0);
}

namespace {

cplx sathe_radial(cplx z, u64 q, u64 a, double delta, bool with_multiplicity,
                  const TruncationPolicy& policy) {
  if (!(delta > 0.0 && delta <= 0.05))
    throw DomainError("radial probe: delta in (0, 0.05] required");
  CharacterGroup g(q);
  u64 res = a % q;
  g.unit_position(res);
  LFunctionEngine engine(g);
  ExponentVector ev = exponents_sathe(g, z, res);
  double phi = double(g.phi());
  cplx mean = 0.0;
  for (double s : {1.0 + delta, 1.0 - delta}) {
    std::vector<cplx> logs = engine.log_l_at(s);
    cplx expo = 0.0;
    for (size_t t = 0; t < ev.alpha.size(); ++t) expo += ev.alpha[t] * logs[t];
    ClassProductData cpd(q, res, policy, s);
    mean += std::exp(expo) *
            (with_multiplicity ? cpd.g_Omega(z) : cpd.g_omega(z));
  }
  return rgamma(1.0 + (z - 1.0) / phi) * mean / 2.0;
}

}  // namespace

cplx c0_radial(cplx z, u64 q, u64 a, double delta,
               const TruncationPolicy& policy) {
  return sathe_radial(z, q, a, delta, false, policy);
}

cplx c0_tilde_radial(cplx z, u64 q, u64 a, double delta,
                     const TruncationPolicy& policy) {
  return sathe_radial(z, q, a, delta, true, policy);
}

double p0k(double Y, u32 k, u64 q, u64 a, const LocalLawPolicy& policy) {
  if (!(Y > 0.0)) throw DomainError("divisor law: Y > 0 required");
  SatheData d(q, a, policy.primes);
  return sathe_contour(d, Y, k, policy.K, false, policy);
}

double q0k(double Y, u32 k, u64 q, u64 a, const LocalLawPolicy& policy) {
  if (!(Y > 0.0)) throw DomainError("divisor law: Y > 0 required");
  SatheData d(q, a, policy.primes);
  return sathe_contour(d, Y, k, tilde_radius(d, policy), true, policy);
}

double p0k_saddle(double Y, u32 k, u64 q, u64 a,
                  const LocalLawPolicy& policy) {
  if (!(Y > 0.0)) throw DomainError("divisor law: Y > 0 required");
  SatheData d(q, a, policy.primes);
  double phi = double(d.g.phi());
  if (double(k) > policy.K * Y / phi)
    throw RangeError("saddle main term: k exceeds K Y / phi");
  double factor = std::exp(double(k) * std::log(Y / phi) - std::lgamma(k + 1.0));
  return factor *
         certify_real(d.c0(double(k) * phi / Y, false, policy.eps0),
                      "saddle main term");
}

double q0k_saddle(double Y, u32 k, u64 q, u64 a,
                  const LocalLawPolicy& policy) {
  if (!(Y > 0.0)) throw DomainError("divisor law: Y > 0 required");
  SatheData d(q, a, policy.primes);
  double phi = double(d.g.phi());
  double p = double(d.cpd.least_prime());
  if (double(k) > tilde_radius(d, policy) * Y / phi)
    throw RangeError("saddle main term: k exceeds R Y / phi");
  double factor = std::exp(double(k) * std::log(Y / phi) - std::lgamma(k + 1.0));
  return factor /
         (1.0 - double(k) * phi / (p * Y)) *
         certify_real(d.c0(double(k) * phi / Y, true, policy.eps0),
                      "saddle main term");
}

RegimeValue q0k_regimes(double Y, u32 k, u64 q, u64 a, double eps0) {
  if (!(Y > 0.0)) throw DomainError("divisor law: Y > 0 required");
  if (!(eps0 > 0.0 && eps0 < 1.0))
    throw DomainError("divisor law: eps0 in (0, 1) required");
  u64 res = a % q;
  if (std::gcd(res, q) != 1)
    throw DomainError("divisor law: residue must be a unit");
  double p = double(least_prime_in_ap(q, res));
  double phi = double(euler_phi(q));
  double pivot = p * Y / phi;
  RegimeValue out;
  if (double(k) <= (1.0 - eps0) * pivot) {
    out.regime = QRegime::kSmall;
    out.value = std::exp(double(k) * std::log(Y / phi) - std::lgamma(k + 1.0)) *
                (1.0 - 1.0 / p);
  } else if (double(k) >= (1.0 + eps0) * pivot) {
    out.regime = QRegime::kLarge;
    out.value = std::exp(pivot - double(k) * std::log(p)) * (1.0 - 1.0 / p);
  } else {
    throw RangeError("divisor law: k inside the excluded band around pY/phi");
  }
  return out;
}

double predict_omega_hist(double x, u64 q, u64 a, u32 k,
                          const LocalLawPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  double L = std::log(x);
  return x * p0k(std::log(L), k, q, a, policy) /
         std::pow(L, 1.0 / double(euler_phi(q)));
}

double predict_Omega_hist(double x, u64 q, u64 a, u32 k,
                          const LocalLawPolicy& policy) {
  if (!(x >= 4.0)) throw DomainError("prediction: x >= 4 required");
  double L = std::log(x);
  return x * q0k(std::log(L), k, q, a, policy) /
         std::pow(L, 1.0 / double(euler_phi(q)));
}

}  // namespace lsdlab
