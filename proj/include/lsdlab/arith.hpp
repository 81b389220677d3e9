#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsdlab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using cplx = std::complex<double>;

// Error taxonomy shared by all modules. The CLI maps DomainError,
// CapacityError, RangeError and NotFoundError to usage failures (exit 2) and
// the numeric-validation family to exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct CapacityError : Error {
  using Error::Error;
};
struct RangeError : Error {
  using Error::Error;
};
struct NotFoundError : Error {
  using Error::Error;
};
struct PoleError : Error {
  using Error::Error;
};
struct BranchError : Error {
  using Error::Error;
};
struct ContinuationError : Error {
  using Error::Error;
};
struct ExtractionError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

struct PrimePower {
  u64 prime = 0;
  u32 exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1,
// empty for n = 1.
struct Factorization {
  std::vector<PrimePower> entries;
  u64 value() const;
};

// Smallest-prime-factor table for 2 <= n <= limit. spf[p] = p for primes.
class SpfTable {
 public:
  static constexpr u64 kDefaultCapacity = 200'000'000;

  explicit SpfTable(u64 limit, u64 capacity = kDefaultCapacity);
  static SpfTable load(const std::string& path);
  void save(const std::string& path) const;

  u64 limit() const { return limit_; }
  u32 operator[](u64 n) const { return spf_[n]; }

 private:
  SpfTable() = default;
  u64 limit_ = 0;
  std::vector<u32> spf_;  // indexed by n, entries 0 and 1 unused
};

SpfTable sieve_spf(u64 limit, u64 capacity = SpfTable::kDefaultCapacity);

Factorization factorize(u64 n);
Factorization factorize(u64 n, const SpfTable& table);

u64 euler_phi(const Factorization& f);
u64 euler_phi(u64 n);

bool is_prime(u64 n);  // deterministic Miller-Rabin below 3.3e24
bool is_prime_power(u64 n);
u64 next_prime_power(u64 q);  // smallest prime power > q, q >= 2

u64 least_prime_in_ap(u64 q, u64 a, u64 search_bound = 1'000'000'000);

// Ascending primes covering at least [2, limit]; the shared cache may extend
// further, so callers iterating a strict range must stop explicitly.
const std::vector<u32>& primes_up_to(u32 limit);

// li(y) = integral over [2, y] of dt/log t. Requested absolute error 1e-9;
// for y large enough that 1e-9 is below one ulp of the result, accuracy is
// limited by double rounding instead.
double logarithmic_integral(double y);

double digamma(double x);           // x > 0, relative error <= 1e-12
cplx complex_gamma(cplx z);         // poles at nonpositive integers
double real_gamma(double x);
cplx rgamma(cplx z);                // entire 1/Gamma, exactly 0 at 0, -1, -2, ...

// Deterministic pairwise reduction, independent of evaluation order games.
cplx pairwise_sum(const std::vector<cplx>& v);

}  // namespace lsdlab
