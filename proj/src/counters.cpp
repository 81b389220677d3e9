#include "lsdlab/counters.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "lsdlab/unitgroup.hpp"

namespace lsdlab {

u64 Histogram::total() const {
  u64 t = 0;
  for (const auto& [k, c] : bins) t += c;
  return t;
}

CountJob::CountJob(u64 x, u64 capacity) : x_(x), capacity_(capacity) {
  if (x < 1) throw DomainError("count job: x >= 1 required");
  if (x > capacity)
    throw CapacityError("count job: x " + std::to_string(x) +
                        " exceeds sieve capacity " + std::to_string(capacity));
}

std::size_t CountJob::push(Request r) {
  requests_.push_back(std::move(r));
  return requests_.size() - 1;
}

std::size_t CountJob::add_restricted(u64 q, const std::vector<u64>& residues) {
  if (q < 1) throw DomainError("restricted count: q >= 1 required");
  if (q > capacity_)
    throw CapacityError("restricted count: q exceeds capacity");
  Request r;
  r.kind = Kind::kRestricted;
  r.q = q;
  r.member.assign(q, 0);
  for (u64 res : residues) {
    u64 m = res % q;
    if (std::gcd(m, q) != 1)
      throw DomainError("restricted count: class " + std::to_string(res) +
                        " is not a unit mod " + std::to_string(q));
    r.member[m] = 1;
  }
  return push(std::move(r));
}

std::size_t CountJob::add_lambda_star_divisible(u64 q) {
  if (q < 4 || q % 2 != 0)
    throw DomainError("lambda* divisible count: q even >= 4 required");
  Request r;
  r.kind = Kind::kLambdaStarDivisible;
  r.q = q;
  need_group_ = true;
  return push(std::move(r));
}

std::size_t CountJob::add_lambda_star_equal(u64 q) {
  if (q < 2 || q % 2 != 0)
    throw DomainError("lambda* equal count: q even >= 2 required");
  Request r;
  r.kind = Kind::kLambdaStarEqual;
  r.q = q;
  need_group_ = true;
  return push(std::move(r));
}

std::size_t CountJob::add_lambda_prime_at_least(u64 q) {
  if (!is_prime_power(q))
    throw DomainError("lambda' count: q must be a prime power");
  Request r;
  r.kind = Kind::kLambdaPrimeAtLeast;
  r.q = q;
  need_group_ = true;
  return push(std::move(r));
}

std::size_t CountJob::add_lambda_prime_equal(u64 q) {
  if (!is_prime_power(q))
    throw DomainError("lambda' count: q must be a prime power");
  Request r;
  r.kind = Kind::kLambdaPrimeEqual;
  r.q = q;
  r.q_next = next_prime_power(q);
  need_group_ = true;
  return push(std::move(r));
}

std::size_t CountJob::add_omega_histogram(u64 q, u64 a) {
  if (q < 1) throw DomainError("omega histogram: q >= 1 required");
  u64 m = a % q;
  if (std::gcd(m, q) != 1)
    throw DomainError("omega histogram: class not a unit mod q");
  Request r;
  r.kind = Kind::kOmegaHistogram;
  r.q = q;
  r.a = m;
  return push(std::move(r));
}

std::size_t CountJob::add_Omega_histogram(u64 q, u64 a) {
  if (q < 1) throw DomainError("Omega histogram: q >= 1 required");
  u64 m = a % q;
  if (std::gcd(m, q) != 1)
    throw DomainError("Omega histogram: class not a unit mod q");
  Request r;
  r.kind = Kind::kBigOmegaHistogram;
  r.q = q;
  r.a = m;
  return push(std::move(r));
}

namespace {

// Primary components of U_n grouped by prime, in reusable flat rows; the
// least invariant factor only needs, per prime, the smallest exponent among
// a maximal-length row, so no per-n sorting or allocation is required.
struct GroupScratch {
  std::vector<u64> prime;
  std::vector<std::vector<u32>> exps;
  std::size_t used = 0;

  void reset() { used = 0; }

  std::vector<u32>& row(u64 l) {
    for (std::size_t i = 0; i < used; ++i)
      if (prime[i] == l) return exps[i];
    if (used == prime.size()) {
      prime.push_back(l);
      exps.emplace_back();
    } else {
      prime[used] = l;
      exps[used].clear();
    }
    return exps[used++];
  }
};

struct Invariants {
  u64 least_invariant = kOrderInfinity;  // least invariant factor of U_n
  u64 least_primary = kOrderInfinity;    // least primary component order
};

// Same decomposition as unit_group_primary, but driven entirely by the spf
// table (p - 1 < n <= limit, so every factorization stays inside it).
Invariants group_invariants(const Factorization& f, const SpfTable& t,
                            GroupScratch& s) {
  s.reset();
  Invariants inv;
  auto add = [&](u64 l, u32 e) {
    u64 le = 1;
    for (u32 j = 0; j < e; ++j) le *= l;
    inv.least_primary = std::min(inv.least_primary, le);
    s.row(l).push_back(e);
  };
  for (const auto& [p, e] : f.entries) {
    if (p == 2) {
      if (e == 2) add(2, 1);
      if (e >= 3) {
        add(2, 1);
        add(2, e - 2);
      }
      continue;
    }
    u64 m = p - 1;
    while (m > 1) {
      u64 l = t[m];
      u32 k = 0;
      do {
        m /= l;
        ++k;
      } while (m % l == 0);
      add(l, k);
    }
    if (e >= 2) add(p, e - 1);
  }
  if (s.used == 0) return inv;
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.used; ++i) r = std::max(r, s.exps[i].size());
  u64 d1 = 1;
  for (std::size_t i = 0; i < s.used; ++i) {
    if (s.exps[i].size() != r) continue;
    u32 e = *std::min_element(s.exps[i].begin(), s.exps[i].end());
    for (u32 j = 0; j < e; ++j) d1 *= s.prime[i];
  }
  inv.least_invariant = d1;
  return inv;
}

}  // namespace

CountResults run_count_job(const CountJob& job, const SpfTable* table) {
  const u64 x = job.x_;
  std::optional<SpfTable> local;
  if (table == nullptr || table->limit() < x) {
    local.emplace(std::max<u64>(x, 2), job.capacity_);
    table = &*local;
  }
  const SpfTable& t = *table;

  const std::size_t m = job.requests_.size();
  CountResults out;
  out.x = x;
  out.slots.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto k = job.requests_[i].kind;
    out.slots[i].is_histogram = k == CountJob::Kind::kOmegaHistogram ||
                                k == CountJob::Kind::kBigOmegaHistogram;
    out.slots[i].hist.x = x;
  }

  constexpr u64 kSegment = u64(1) << 19;
  std::vector<u64> part(m, 0);
  std::vector<std::map<u64, u64>> part_bins(m);
  Factorization f;
  f.entries.reserve(16);
  GroupScratch scratch;

  for (u64 lo = 1; lo <= x; lo += kSegment) {
    const u64 hi = std::min(x, lo + kSegment - 1);
    std::fill(part.begin(), part.end(), 0);
    for (auto& b : part_bins) b.clear();

    for (u64 n = lo; n <= hi; ++n) {
      f.entries.clear();
      u64 rem = n;
      while (rem > 1) {
        u64 p = t[rem];
        u32 e = 0;
        do {
          rem /= p;
          ++e;
        } while (rem % p == 0);
        f.entries.push_back({p, e});
      }
      Invariants inv;
      if (job.need_group_) inv = group_invariants(f, t, scratch);

      for (std::size_t i = 0; i < m; ++i) {
        const auto& r = job.requests_[i];
        switch (r.kind) {
          case CountJob::Kind::kRestricted: {
            bool ok = true;
            for (const auto& pp : f.entries)
              if (!r.member[pp.prime % r.q]) {
                ok = false;
                break;
              }
            part[i] += ok;
            break;
          }
          case CountJob::Kind::kLambdaStarDivisible:
            part[i] += inv.least_invariant == kOrderInfinity ||
                       inv.least_invariant % r.q == 0;
            break;
          case CountJob::Kind::kLambdaStarEqual:
            part[i] += inv.least_invariant == r.q;
            break;
          case CountJob::Kind::kLambdaPrimeAtLeast:
            part[i] += inv.least_primary >= r.q;
            break;
          case CountJob::Kind::kLambdaPrimeEqual:
            part[i] += inv.least_primary >= r.q && inv.least_primary < r.q_next;
            break;
          case CountJob::Kind::kOmegaHistogram: {
            u64 k = 0;
            for (const auto& pp : f.entries) k += pp.prime % r.q == r.a;
            ++part_bins[i][k];
            break;
          }
          case CountJob::Kind::kBigOmegaHistogram: {
            u64 k = 0;
            for (const auto& pp : f.entries)
              if (pp.prime % r.q == r.a) k += pp.exponent;
            ++part_bins[i][k];
            break;
          }
        }
      }
    }

    for (std::size_t i = 0; i < m; ++i) {
      out.slots[i].count += part[i];
      for (const auto& [k, c] : part_bins[i]) out.slots[i].hist.bins[k] += c;
    }
  }
  return out;
}

u64 CountResults::count(std::size_t slot) const {
  if (slot >= slots.size() || slots[slot].is_histogram)
    throw DomainError("count results: slot is not a scalar counter");
  return slots[slot].count;
}

const Histogram& CountResults::histogram(std::size_t slot) const {
  if (slot >= slots.size() || !slots[slot].is_histogram)
    throw DomainError("count results: slot is not a histogram");
  return slots[slot].hist;
}

u64 count_restricted(u64 x, u64 q, const std::vector<u64>& residues,
                     const SpfTable* table) {
  CountJob job(x);
  job.add_restricted(q, residues);
  return run_count_job(job, table).count(0);
}

u64 count_lambda_star_divisible(u64 x, u64 q, const SpfTable* table) {
  CountJob job(x);
  job.add_lambda_star_divisible(q);
  return run_count_job(job, table).count(0);
}

u64 count_lambda_star_equal(u64 x, u64 q, const SpfTable* table) {
  CountJob job(x);
  job.add_lambda_star_equal(q);
  return run_count_job(job, table).count(0);
}

u64 count_lambda_prime_at_least(u64 x, u64 q, const SpfTable* table) {
  CountJob job(x);
  job.add_lambda_prime_at_least(q);
  return run_count_job(job, table).count(0);
}

u64 count_lambda_prime_equal(u64 x, u64 q, const SpfTable* table) {
  CountJob job(x);
  job.add_lambda_prime_equal(q);
  return run_count_job(job, table).count(0);
}

Histogram histogram_omega_a(u64 x, u64 q, u64 a, const SpfTable* table) {
  CountJob job(x);
  job.add_omega_histogram(q, a);
  return run_count_job(job, table).histogram(0);
}

Histogram histogram_Omega_a(u64 x, u64 q, u64 a, const SpfTable* table) {
  CountJob job(x);
  job.add_Omega_histogram(q, a);
  return run_count_job(job, table).histogram(0);
}

}  // namespace lsdlab
