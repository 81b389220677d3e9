#include "lsdlab/eulerfactors.hpp"

#include "lsdlab/unitgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lsdlab {

CorrectionSums::CorrectionSums(u64 q, const TruncationPolicy& policy,
                               u32 moment_count)
    : q_(q), moment_count_(moment_count) {
  if (q < 1) throw DomainError("correction sums: q >= 1 required");
  if (moment_count < 1 || moment_count > 16)
    throw DomainError("correction sums: moment_count in [1, 16] required");
  u64 P = policy.prime_cutoff;
  mom_prime_.assign(moment_count, std::vector<double>(q, 0.0));
  mom_power_.assign(moment_count, std::vector<double>(q, 0.0));
  for (u64 p : primes_up_to(static_cast<u32>(P))) {
    if (p > P) break;
    u64 pm = p % q;
    u64 prm = pm;
    double pr = double(p);
    double lp = std::log(double(p));
    for (int r = 2; r <= 64; ++r) {
      pr *= double(p);
      prm = prm * pm % q;
      double term = 1.0 / (double(r) * pr);
      if (term < 1e-21) break;
      mom_prime_[0][pm] += term;
      mom_power_[0][prm] += term;
      double weighted = term;
      for (u32 j = 1; j < moment_count_; ++j) {
        weighted *= double(r) * lp / double(j);
        mom_prime_[j][pm] += weighted;
        mom_power_[j][prm] += weighted;
      }
    }
  }
  // sum_{p > P, r >= 2} 1/(r p^r) <= (1/2) (P/(P-1)) sum_{n > P} n^{-2}
  tail_ = 0.5 / double(P - 1);
}

double CorrectionSums::sum_prime_in(const std::vector<u64>& A) const {
  return moment_prime_in(0, A);
}

double CorrectionSums::sum_power_in(const std::vector<u64>& A) const {
  return moment_power_in(0, A);
}

double CorrectionSums::power_sum_at(u64 residue) const {
  return mom_power_[0][residue % q_];
}

double CorrectionSums::moment_prime_in(u32 j,
                                       const std::vector<u64>& A) const {
  if (j >= moment_count_) throw DomainError("correction sums: row not kept");
  double s = 0.0;
  for (u64 a : A) s += mom_prime_[j][a % q_];
  return s;
}

double CorrectionSums::moment_power_in(u32 j,
                                       const std::vector<u64>& A) const {
  if (j >= moment_count_) throw DomainError("correction sums: row not kept");
  double s = 0.0;
  for (u64 a : A) s += mom_power_[j][a % q_];
  return s;
}

cplx CorrectionSums::correction_at(cplx s, const std::vector<u64>& A) const {
  if (std::abs(s - 1.0) > 0.25)
    throw DomainError("correction sums: |s - 1| <= 1/4 required");
  cplx expo = 0.0;
  cplx shift = 1.0;
  for (u32 j = 0; j < moment_count_; ++j) {
    expo += shift * (moment_prime_in(j, A) - moment_power_in(j, A));
    shift *= 1.0 - s;
  }
  return std::exp(expo);
}

double prime_power_correction(const CorrectionSums& sums,
                              const std::vector<u64>& A) {
  return std::exp(sums.sum_prime_in(A) - sums.sum_power_in(A));
}

double prime_power_correction(u64 q, const std::vector<u64>& A,
                              const TruncationPolicy& policy) {
  return prime_power_correction(CorrectionSums(q, policy), A);
}

double g_lambda_star_one(u64 q, const TruncationPolicy& policy) {
  if (q < 4 || q % 2 != 0)
    throw DomainError("g_lambda_star_one: q even >= 4 required");
  u64 P = 1, rest = q;
  u32 ep = 0;
  for (const auto& [p, e] : factorize(q).entries) {
    P = p;
    ep = e;
  }
  for (u32 i = 0; i < ep; ++i) rest /= P;
  double g = 1.5;
  if (P > 2 && (P - 1) % rest == 0) {
    double pe = 1.0;
    for (u32 i = 0; i < ep; ++i) pe *= double(P);
    g *= 1.0 + 1.0 / (pe * double(P - 1));
  }
  return g * prime_power_correction(q, {1}, policy);
}

double g_primary_one(u64 q, const TruncationPolicy& policy) {
  auto B = residue_set_BQ(q);
  u64 Q = modulus_Q(q);
  double g = 1.5;
  if (std::find(B.begin(), B.end(), 2 % Q) != B.end()) g *= 0.5;
  return g * prime_power_correction(Q, B, policy);
}

ClassProductData::ClassProductData(u64 q, u64 a, const TruncationPolicy& policy,
                                   double s)
    : q_(q), s_(s) {
  if (q < 1) throw DomainError("class product: q >= 1 required");
  a_ = a % q;
  if (std::gcd(a_, q_) != 1 && q_ > 1)
    throw DomainError("class product: residue not coprime to modulus");
  if (!(s >= 0.75 && s <= 2.0))
    throw DomainError("class product: abscissa in [3/4, 2] required");
  cutoff_ = double(policy.prime_cutoff);
  u64 P = policy.prime_cutoff;
  bool unit = s == 1.0;  // exact weights on the classical abscissa
  for (const auto& [l, e] : factorize(q).entries)
    principal_ratio_ *= unit ? double(l) / double(l - 1)
                             : 1.0 / (1.0 - std::pow(double(l), -s));
  for (u64 p : primes_up_to(static_cast<u32>(P))) {
    if (p > P) break;
    u64 pm = p % q_;
    bool in_class = (q_ == 1) || pm == a_;
    double base = unit ? double(p) : std::pow(double(p), s);
    if (in_class) {
      if (least_prime_ == 0) {
        least_prime_ = p;
        least_pole_ = base;
      }
      double inv = 1.0 / base;
      if (p <= kSeriesSplit) {
        small_.push_back(p);
        small_inv_.push_back(inv);
      } else {
        double pw = inv;
        for (int m = 2; m <= kMomentCount; ++m) {
          pw *= inv;
          if (pw < 1e-22) break;
          w_[m] += pw;
        }
      }
    }
    // power-correction sum for this class
    u64 prm = pm;
    double pr = base;
    for (int r = 2; r <= 64; ++r) {
      pr *= base;
      prm = prm * pm % q_;
      double term = 1.0 / (double(r) * pr);
      if (term < 1e-21) break;
      if (prm == a_ || q_ == 1) power_correction_ += term;
    }
  }
  if (least_prime_ == 0)
    throw NotFoundError("class product: no prime in the class below cutoff");
}

cplx ClassProductData::omega_product(cplx z) const {
  cplx zm1 = z - 1.0;
  cplx prod = 1.0;
  for (double ip : small_inv_)
    prod *= (1.0 + zm1 * ip) * std::exp(-zm1 * ip);
  // log(1 + w) - w = sum_{m >= 2} (-1)^{m+1} w^m / m at w = (z-1)/p
  cplx tail = 0.0;
  cplx pw = zm1;
  double sign = 1.0;
  for (int m = 2; m <= kMomentCount; ++m) {
    pw *= zm1;
    sign = -sign;
    tail += sign * pw * (w_[m] / double(m));
  }
  return prod * std::exp(tail);
}

cplx ClassProductData::Omega_product(cplx z) const {
  if (std::abs(z) >= least_pole_)
    throw DomainError("Omega product: |z| reaches the least prime pole");
  cplx prod = 1.0;
  for (double ip : small_inv_)
    prod *= (1.0 - ip) * std::exp((1.0 - z) * ip) / (1.0 - z * ip);
  // -log(1 - z/p) + log(1 - 1/p) + (1-z)/p = sum_{m>=2} (z^m - 1)/(m p^m)
  cplx tail = 0.0;
  cplx zp = z;
  for (int m = 2; m <= kMomentCount; ++m) {
    zp *= z;
    tail += (zp - 1.0) * (w_[m] / double(m));
  }
  return prod * std::exp(tail);
}

cplx ClassProductData::g_omega(cplx z) const {
  return std::exp((1.0 - z) * power_correction_) * principal_ratio_ *
         omega_product(z);
}

cplx ClassProductData::g_Omega(cplx z, double eps0) const {
  double radius = std::min(kDefaultK + 2.0, least_pole_ * (1.0 - eps0 / 100.0));
  if (std::abs(z) > radius)
    throw DomainError("g_Omega: |z| outside the stated radius");
  return std::exp((1.0 - z) * power_correction_) * principal_ratio_ *
         Omega_product(z);
}

double ClassProductData::tail_bound(double radius) const {
  // per-prime log defect is <= r^2/p^2 (1 - r/p)^{-1}; summed over p > P
  double P = cutoff_;
  double ratio = radius / P;
  if (ratio >= 1.0) return 1e300;
  return radius * radius / P / (1.0 - ratio);
}

cplx g_omega_one(cplx z, u64 q, u64 a, const TruncationPolicy& policy) {
  return ClassProductData(q, a, policy).g_omega(z);
}

cplx g_Omega_one(cplx z, u64 q, u64 a, const TruncationPolicy& policy) {
  return ClassProductData(q, a, policy).g_Omega(z);
}

double restricted_prime_reciprocal(u64 q, u64 a, u64 X) {
  if (q < 1) throw DomainError("restricted_prime_reciprocal: q >= 1 required");
  a %= std::max<u64>(q, 1);
  if (q > 1 && std::gcd(a, q) != 1)
    throw DomainError("restricted_prime_reciprocal: gcd(a,q) must be 1");
  double s = 0.0;
  for (u64 p : primes_up_to(static_cast<u32>(X))) {
    if (p > X) break;
    if (q == 1 || p % q == a) s += 1.0 / double(p);
  }
  return s;
}

DeviationEstimate deviation_constant(u64 q, u64 a, u64 X) {
  double phi = double(euler_phi(std::max<u64>(q, 1)));
  auto at = [&](u64 x) {
    return restricted_prime_reciprocal(q, a, x) -
           std::log(std::log(double(x))) / phi;
  };
  DeviationEstimate est;
  est.value = at(X);
  est.band = std::abs(est.value - at(X / 10));
  return est;
}

}  // namespace lsdlab
