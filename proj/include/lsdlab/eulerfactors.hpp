#pragma once
#include <vector>

#include "lsdlab/arith.hpp"

namespace lsdlab {

// contour-radius configuration shared with the predictors
inline constexpr double kDefaultK = 4.0;
inline constexpr double kDefaultEps0 = 0.1;

struct TruncationPolicy {
  u64 prime_cutoff = 10'000'000;
};

// One enumeration pass per (modulus, cutoff): per-residue accumulators for
// the two prime-power sums entering every correction factor,
//   sum_prime_in(A) = sum over p <= P, r >= 2 with p mod q in A of 1/(r p^r),
//   sum_power_in(A) = same with p^r mod q in A.
class CorrectionSums {
 public:
  // moment_count > 1 keeps Taylor rows j < moment_count with the extra weight
  // (r log p)^j / j!, enough to continue either sum off s = 1 (correction_at)
  explicit CorrectionSums(u64 q, const TruncationPolicy& policy = {},
                          u32 moment_count = 1);
  u64 modulus() const { return q_; }
  u32 moment_count() const { return moment_count_; }
  double sum_prime_in(const std::vector<u64>& A) const;
  double sum_power_in(const std::vector<u64>& A) const;
  double power_sum_at(u64 residue) const;  // single-class V_c
  double moment_prime_in(u32 j, const std::vector<u64>& A) const;
  double moment_power_in(u32 j, const std::vector<u64>& A) const;
  // exp(sum#prime-in - sum#power-in) with every p^{-rs} continued off s = 1
  // through the moment rows; restricted to |s - 1| <= 1/4, where nine rows
  // already leave a remainder below 1e-10
  cplx correction_at(cplx s, const std::vector<u64>& A) const;
  // elementary overestimate of either truncated sum's tail
  double tail_bound() const { return tail_; }

 private:
  u64 q_;
  u32 moment_count_;
  double tail_;
  std::vector<std::vector<double>> mom_prime_;  // row j: U_c, weight (r log p)^j/j!
  std::vector<std::vector<double>> mom_power_;  // row j: V_c, weight (r log p)^j/j!
};

double prime_power_correction(const CorrectionSums& sums,
                              const std::vector<u64>& A);
double prime_power_correction(u64 q, const std::vector<u64>& A,
                              const TruncationPolicy& policy = {});

// G(1) for the lambda*-divisibility series: (3/2) times the extra factor
// (1 + P^{-e}/(P-1)) when the top prime power of q admits it, times the
// A = {1} correction mod q.
double g_lambda_star_one(u64 q, const TruncationPolicy& policy = {});
// G_Q(1) for the least-primary-factor series: (3/2)(1/2)^{[2 in B_Q]} times
// the A = B_Q correction mod Q.
double g_primary_one(u64 q, const TruncationPolicy& policy = {});

// Euler products over the progression p = a mod q, assembled once per
// (q, a, cutoff): primes below the convergence split enter factor by factor,
// the rest through power-sum moments, so each z costs O(1).
class ClassProductData {
 public:
  static constexpr u64 kSeriesSplit = 61;
  static constexpr int kMomentCount = 24;
  // s generalizes every prime weight to p^{-s} (products taken at abscissa s
  // instead of 1); kept real and near 1, where the truncation tails still hold
  ClassProductData(u64 q, u64 a, const TruncationPolicy& policy = {},
                   double s = 1.0);

  u64 modulus() const { return q_; }
  u64 residue() const { return a_; }
  u64 least_prime() const { return least_prime_; }
  double abscissa() const { return s_; }
  double moment(int m) const { return w_[m]; }  // sum p^{-ms}, split < p <= P

  // prod over p = a of (1 + (z-1) p^{-s}) e^{(1-z) p^{-s}}; entire in z
  cplx omega_product(cplx z) const;
  // prod over p = a of (1 - z p^{-s})^{-1} (1 - p^{-s}) e^{(1-z) p^{-s}};
  // |z| below the least pole p^s of the class
  cplx Omega_product(cplx z) const;

  // full holomorphic factors of the two local-law generating functions
  cplx g_omega(cplx z) const;
  cplx g_Omega(cplx z, double eps0 = kDefaultEps0) const;

  double tail_bound(double radius) const;

 private:
  u64 q_, a_;
  double s_ = 1.0;
  u64 least_prime_ = 0;
  double least_pole_ = 0.0;        // least p^s over the class
  double power_correction_ = 0.0;  // sum_{p, r>=2, p^r = a (q)} 1/(r p^rs)
  double principal_ratio_ = 1.0;   // prod_{l | q} (1 - 1/l^s)^{-1}
  std::vector<u64> small_;         // p <= split with p = a (q)
  std::vector<double> small_inv_;  // p^{-s} for those primes
  double w_[kMomentCount + 1] = {};
  double cutoff_;
};

cplx g_omega_one(cplx z, u64 q, u64 a, const TruncationPolicy& policy = {});
cplx g_Omega_one(cplx z, u64 q, u64 a, const TruncationPolicy& policy = {});

double restricted_prime_reciprocal(u64 q, u64 a, u64 X);

struct DeviationEstimate {
  double value = 0.0;
  double band = 0.0;  // |value - same estimate at X/10|
};
DeviationEstimate deviation_constant(u64 q, u64 a, u64 X = 100'000'000);

}  // namespace lsdlab
