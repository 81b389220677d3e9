#pragma once
#include <string>
#include <vector>

#include "lsdlab/arith.hpp"
#include "lsdlab/characters.hpp"
#include "lsdlab/eulerfactors.hpp"
#include "lsdlab/lvalues.hpp"

namespace lsdlab {

// Cauchy extraction around s = 1: trapezoid on the circle |s-1| = rho,
// branch-continued in from s = 2, node count doubled until two passes agree.
struct ContourPolicy {
  double rho = 0.05;
  u32 nodes = 512;
  u32 max_nodes = 8192;
  double rel_tol = 1e-8;
  u32 max_order = 3;    // largest coefficient index served
  u32 taylor_rows = 9;  // correction-sum moment rows carried onto the circle
  TruncationPolicy primes{};
};

// z-plane contours for the local-law coefficients
struct LocalLawPolicy {
  double K = kDefaultK;
  double eps0 = kDefaultEps0;
  u32 nodes = 2048;
  u32 max_nodes = 1u << 16;
  double rel_tol = 1e-8;
  TruncationPolicy primes{};
};

// dual-group size cap for coefficient extraction (walks phi L-values per node)
inline constexpr u64 kMaxContourPhi = 2000;

// One counted family reduced to contour data: a working modulus (the
// auxiliary modulus for the least-primary family), the exponent vector over
// its dual group, the residue classes whose primes build the integers, and
// the rational extra Euler factors of the holomorphic cofactor.
class Application {
 public:
  static Application restricted(u64 q, const std::vector<u64>& A);
  static Application lambda_star_divisible(u64 q);
  static Application primary_at_least(u64 q);  // q prime power >= 2

  const std::string& name() const { return name_; }
  const CharacterGroup& group() const { return group_; }
  const std::vector<cplx>& alpha() const { return alpha_.alpha; }
  double alpha0() const { return alpha0_; }
  const std::vector<u64>& classes() const { return classes_; }
  // log of the extra rational Euler factors at s
  cplx log_extra(cplx s) const;

 private:
  Application(std::string name, CharacterGroup group, std::vector<u64> classes);
  std::string name_;
  CharacterGroup group_;
  ExponentVector alpha_;
  double alpha0_ = 0.0;
  std::vector<u64> classes_;
  bool half_even_ = false;    // factor (1 + 2^{-s}): at most one power of two
  bool full_even_ = false;    // factor (1 - 2^{-s})^{-1}: two unconstrained
  u64 special_prime_ = 0;     // top prime P of q when it may re-enter
  u32 special_exponent_ = 0;  // factor 1 + P^{-exponent * s} / (1 - P^{-s})
};

// Truncated main-term series: prediction at x is
//   x (log x)^{alpha0-1} sum_j c_j (log x)^{-j} / Gamma(alpha0 - j),
// the Gamma reciprocal taken entire (terms with alpha0 - j a nonpositive
// integer vanish).
struct Expansion {
  cplx alpha0 = 1.0;
  std::vector<cplx> coefficients;  // c_0 .. c_N
  u32 order() const { return static_cast<u32>(coefficients.size()) - 1; }
  double evaluate(double x) const;  // x >= 4
};

// closed-form leading coefficients
double k0(u64 q, const std::vector<u64>& A, const TruncationPolicy& policy = {});
double r0(u64 q, const TruncationPolicy& policy = {});
double kappa0(u64 q, const TruncationPolicy& policy = {});

// j-th Cauchy coefficient of s^{-1} F(s) G(s) (s-1)^{alpha0} at s = 1
cplx series_coefficient(u32 j, const Application& app,
                        const ContourPolicy& policy = {});

// closed-form c_0 plus contour c_1..c_N
Expansion expansion_restricted(u64 q, const std::vector<u64>& A, u32 N,
                               const ContourPolicy& policy = {});
Expansion expansion_lambda_star_divisible(u64 q, u32 N,
                                          const ContourPolicy& policy = {});
Expansion expansion_primary_at_least(u64 q, u32 N,
                                     const ContourPolicy& policy = {});

// secondary term of the exact-value family: (li(x) + li(x/2)) / phi(q)
double li_correction(double x, u64 q);

// prediction entry points, x >= 4
double predict_restricted(double x, u64 q, const std::vector<u64>& A, u32 N,
                          const ContourPolicy& policy = {});
double predict_lambda_star_divisible(double x, u64 q, u32 N,
                                     const ContourPolicy& policy = {});
double predict_lambda_star_equal(double x, u64 q, u32 N,
                                 const ContourPolicy& policy = {});
double predict_primary_at_least(double x, u64 q, u32 N,
                                const ContourPolicy& policy = {});
double predict_lambda_prime_equal(double x, u64 q, u32 N,
                                  const ContourPolicy& policy = {});

// defining-limit probe for the leading constant: symmetric mean of
// s^{-1} F G (s-1)^{alpha0} at s = 1 +- delta (second-order accurate)
double leading_radial(const Application& app, double delta = 1e-4,
                      const TruncationPolicy& policy = {});

// local laws: value of the generating coefficient C_0(z) and its
// with-multiplicity analogue
cplx c0_of_z(cplx z, u64 q, u64 a, const TruncationPolicy& policy = {});
cplx c0_tilde_of_z(cplx z, u64 q, u64 a, const TruncationPolicy& policy = {});
// radial probes of the defining limits at s = 1 +- delta
cplx c0_radial(cplx z, u64 q, u64 a, double delta = 1e-4,
               const TruncationPolicy& policy = {});
cplx c0_tilde_radial(cplx z, u64 q, u64 a, double delta = 1e-4,
                     const TruncationPolicy& policy = {});

// Taylor coefficients of C_0(z) e^{zY/phi} (resp. the tilde form on the
// smaller circle R = min{K, (1-eps0) p(q,a)})
double p0k(double Y, u32 k, u64 q, u64 a, const LocalLawPolicy& policy = {});
double q0k(double Y, u32 k, u64 q, u64 a, const LocalLawPolicy& policy = {});

// saddle-style main terms: (Y/phi)^k/k! C_0(k phi/Y), valid k <= K Y/phi;
// the tilde form carries (1 - k phi/(pY))^{-1}, valid k <= R Y/phi
double p0k_saddle(double Y, u32 k, u64 q, u64 a,
                  const LocalLawPolicy& policy = {});
double q0k_saddle(double Y, u32 k, u64 q, u64 a,
                  const LocalLawPolicy& policy = {});

enum class QRegime { kSmall, kLarge };
struct RegimeValue {
  double value = 0.0;
  QRegime regime = QRegime::kSmall;
};
// two-sided main terms away from the saddle band: small k gets
// (Y/phi)^k/k! (1-1/p), large k gets e^{pY/phi} p^{-k} (1-1/p); the band
// between (1 -+ eps0) p Y / phi is excluded
RegimeValue q0k_regimes(double Y, u32 k, u64 q, u64 a,
                        double eps0 = kDefaultEps0);

// x p0k(log log x, k) / (log x)^{1/phi} and the tilde analogue, x >= 4
double predict_omega_hist(double x, u64 q, u64 a, u32 k,
                          const LocalLawPolicy& policy = {});
double predict_Omega_hist(double x, u64 q, u64 a, u32 k,
                          const LocalLawPolicy& policy = {});

}  // namespace lsdlab
