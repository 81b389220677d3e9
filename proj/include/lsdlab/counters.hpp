#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lsdlab/arith.hpp"

namespace lsdlab {

// Exact sieve counts of the quantities the predictors estimate. A CountJob
// collects any number of counters over the same range n <= x; run_count_job
// streams the range once, factoring each n from a smallest-prime-factor
// table, and folds every registered counter in the same pass. Group
// invariants (least invariant factor, least primary order) are recomputed
// per n from the factorization; nothing of size x is stored besides the
// table itself.

struct Histogram {
  u64 x = 0;
  std::map<u64, u64> bins;  // value k -> #{n <= x attaining k}

  u64 total() const;  // sum over bins; equals x when filled by a count job
};

struct CountResults;

class CountJob {
 public:
  // 1 <= x <= table capacity.
  explicit CountJob(u64 x, u64 capacity = SpfTable::kDefaultCapacity);

  u64 x() const { return x_; }
  std::size_t size() const { return requests_.size(); }

  // Each add_* validates its parameters and returns the slot the result
  // will occupy in CountResults.

  // n whose prime factors all lie in the given unit classes mod q; n = 1
  // counts unconditionally, so an empty class set yields 1.
  std::size_t add_restricted(u64 q, const std::vector<u64>& residues);

  // n with q dividing the least invariant factor of U_n (q even >= 4);
  // U_1 and U_2 are trivial and count as divisible by everything.
  std::size_t add_lambda_star_divisible(u64 q);
  // n whose least invariant factor equals q exactly (q = 2 or even >= 4).
  std::size_t add_lambda_star_equal(u64 q);

  // n whose least primary order is >= q / equal to q (q a prime power);
  // the equal form counts q <= order < next prime power after q.
  std::size_t add_lambda_prime_at_least(u64 q);
  std::size_t add_lambda_prime_equal(u64 q);

  // Distribution of the number of prime divisors of n in the class
  // a mod q, distinct (omega) or with multiplicity (Omega); gcd(a,q)=1.
  std::size_t add_omega_histogram(u64 q, u64 a);
  std::size_t add_Omega_histogram(u64 q, u64 a);

 private:
  friend CountResults run_count_job(const CountJob&, const SpfTable*);

  enum class Kind : u8 {
    kRestricted,
    kLambdaStarDivisible,
    kLambdaStarEqual,
    kLambdaPrimeAtLeast,
    kLambdaPrimeEqual,
    kOmegaHistogram,
    kBigOmegaHistogram,
  };
  struct Request {
    Kind kind;
    u64 q = 0;
    u64 q_next = 0;          // kLambdaPrimeEqual: next prime power after q
    u64 a = 0;               // histogram class
    std::vector<u8> member;  // kRestricted: unit-class indicator, size q
  };

  std::size_t push(Request r);

  u64 x_ = 0;
  u64 capacity_ = SpfTable::kDefaultCapacity;
  bool need_group_ = false;  // any lambda*/lambda' counter registered
  std::vector<Request> requests_;
};

CountResults run_count_job(const CountJob& job, const SpfTable* table = nullptr);

struct CountResults {
  u64 x = 0;

  u64 count(std::size_t slot) const;                  // scalar slots only
  const Histogram& histogram(std::size_t slot) const;  // histogram slots only

  struct Slot {
    bool is_histogram = false;
    u64 count = 0;
    Histogram hist;
  };
  std::vector<Slot> slots;
};

// Single-counter conveniences; each runs its own one-counter job.
u64 count_restricted(u64 x, u64 q, const std::vector<u64>& residues,
                     const SpfTable* table = nullptr);
u64 count_lambda_star_divisible(u64 x, u64 q, const SpfTable* table = nullptr);
u64 count_lambda_star_equal(u64 x, u64 q, const SpfTable* table = nullptr);
u64 count_lambda_prime_at_least(u64 x, u64 q, const SpfTable* table = nullptr);
u64 count_lambda_prime_equal(u64 x, u64 q, const SpfTable* table = nullptr);
Histogram histogram_omega_a(u64 x, u64 q, u64 a, const SpfTable* table = nullptr);
Histogram histogram_Omega_a(u64 x, u64 q, u64 a, const SpfTable* table = nullptr);

}  // namespace lsdlab
