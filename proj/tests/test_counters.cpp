#include <doctest.h>

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "lsdlab/arith.hpp"
#include "lsdlab/counters.hpp"
#include "lsdlab/unitgroup.hpp"

using namespace lsdlab;

namespace {

bool restricted_member(u64 n, u64 q, const std::set<u64>& allowed) {
  for (const auto& [p, e] : factorize(n).entries)
    if (!allowed.count(p % q)) return false;
  return true;
}

u64 omega_class(u64 n, u64 q, u64 a) {
  u64 k = 0;
  for (const auto& [p, e] : factorize(n).entries) k += p % q == a;
  return k;
}

u64 Omega_class(u64 n, u64 q, u64 a) {
  u64 k = 0;
  for (const auto& [p, e] : factorize(n).entries)
    if (p % q == a) k += e;
  return k;
}

}  // namespace

TEST_CASE("restricted counts: fixed examples") {
  CHECK(count_restricted(30, 4, {1}) == 6);  // 1, 5, 13, 17, 25, 29
  CHECK(count_restricted(10, 4, {1, 3}) == 5);
  for (u64 x : {u64(1), u64(7), u64(100)})
    CHECK(count_restricted(x, 4, {}) == 1);
  CHECK(count_restricted(1000, 1, {0}) == 1000);
}

TEST_CASE("restricted counts match enumeration across moduli") {
  const u64 x = 3000;
  for (u64 q : {u64(3), u64(4), u64(5), u64(8), u64(12)}) {
    std::vector<u64> units;
    for (u64 a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) units.push_back(a);
    std::vector<std::vector<u64>> choices;
    choices.push_back({units[0]});
    choices.push_back(units);
    choices.emplace_back(units.begin(),
                         units.begin() + (units.size() + 1) / 2);
    for (const auto& A : choices) {
      std::set<u64> allowed(A.begin(), A.end());
      u64 brute = 0;
      for (u64 n = 1; n <= x; ++n) brute += restricted_member(n, q, allowed);
      CHECK(count_restricted(x, q, A) == brute);
    }
  }
}

TEST_CASE("restricted over all units is the coprime-factor count") {
  const u64 x = 100000, q = 12;
  u64 brute = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool ok = true;
    for (const auto& [p, e] : factorize(n).entries)
      if (std::gcd(p, q) != 1) {
        ok = false;
        break;
      }
    brute += ok;
  }
  CHECK(count_restricted(x, q, {1, 5, 7, 11}) == brute);
}

TEST_CASE("lambda* counters against the group-structure reference") {
  const u64 x = 3000;
  SpfTable t(x);
  std::map<u64, u64> dist;
  u64 infinite = 0;
  for (u64 n = 1; n <= x; ++n) {
    u64 v = lambda_star(factorize(n, t), &t);
    if (v == kOrderInfinity)
      ++infinite;
    else
      ++dist[v];
  }
  CHECK(infinite == 2);  // n = 1, 2 only

  CountJob job(x);
  auto div4 = job.add_lambda_star_divisible(4);
  auto div6 = job.add_lambda_star_divisible(6);
  std::vector<std::size_t> eq;
  for (u64 q = 2; q <= 24; q += 2) eq.push_back(job.add_lambda_star_equal(q));
  auto res = run_count_job(job, &t);

  for (std::size_t j = 0; j < eq.size(); ++j) {
    u64 q = 2 * (j + 1);
    u64 expect = dist.count(q) ? dist.at(q) : 0;
    CHECK(res.count(eq[j]) == expect);
  }
  u64 expect4 = infinite, expect6 = infinite;
  for (const auto& [v, c] : dist) {
    if (v % 4 == 0) expect4 += c;
    if (v % 6 == 0) expect6 += c;
  }
  CHECK(res.count(div4) == expect4);
  CHECK(res.count(div6) == expect6);
  CHECK(count_lambda_star_equal(100, 4) <=
        count_lambda_star_divisible(100, 4));
}

TEST_CASE("lambda* divisible partitions into exact values") {
  const u64 x = 3000, q = 4;
  SpfTable t(x);
  CountJob job(x);
  auto div = job.add_lambda_star_divisible(q);
  std::vector<std::size_t> eq;
  for (u64 v = q; v < x; v += q) eq.push_back(job.add_lambda_star_equal(v));
  auto res = run_count_job(job, &t);
  u64 sum = 2;  // the two trivial groups count as divisible by everything
  for (auto slot : eq) sum += res.count(slot);
  CHECK(res.count(div) == sum);
}

TEST_CASE("lambda* divisible: listed members at x = 30") {
  std::set<u64> members;
  for (u64 n = 1; n <= 30; ++n) {
    u64 v = lambda_star(n);
    if (v == kOrderInfinity || v % 4 == 0) members.insert(n);
  }
  for (u64 n : {u64(1), u64(2), u64(5), u64(10), u64(13), u64(25), u64(26),
                u64(29)})
    CHECK(members.count(n) == 1);
  CHECK(count_lambda_star_divisible(30, 4) == members.size());
}

TEST_CASE("lambda* divisible equals the congruence-criterion count") {
  const u64 x = 20000;
  SpfTable t(x);
  std::vector<u64> qs = {4, 6, 8, 10, 12, 16, 20, 24};
  CountJob job(x);
  std::vector<std::size_t> slots;
  for (u64 q : qs) slots.push_back(job.add_lambda_star_divisible(q));
  auto res = run_count_job(job, &t);

  std::vector<u64> crit(qs.size(), 0);
  for (u64 n = 1; n <= x; ++n) {
    auto f = factorize(n, t);
    for (std::size_t j = 0; j < qs.size(); ++j)
      crit[j] += divides_lambda_star_criterion(qs[j], f);
  }
  for (std::size_t j = 0; j < qs.size(); ++j) CHECK(res.count(slots[j]) == crit[j]);
}

TEST_CASE("lambda' floor counts and the prime-power partition") {
  const u64 x = 20000;
  SpfTable t(x);
  std::vector<u64> qs = {3, 4, 5, 7, 8, 9, 16, 25, 27, 32};
  CountJob job(x);
  auto at2 = job.add_lambda_prime_at_least(2);
  std::vector<std::size_t> at;
  for (u64 q : qs) at.push_back(job.add_lambda_prime_at_least(q));
  auto eq2 = job.add_lambda_prime_equal(2);
  auto eq3 = job.add_lambda_prime_equal(3);
  auto eq4 = job.add_lambda_prime_equal(4);
  auto res = run_count_job(job, &t);

  CHECK(res.count(at2) == x);
  CHECK(res.count(eq2) + res.count(at[0]) == x);  // lambda' is 2 or >= 3
  for (std::size_t j = 0; j + 1 < qs.size(); ++j)
    CHECK(res.count(at[j]) >= res.count(at[j + 1]));
  // equal(q) = at_least(q) - at_least(q+): q+ of 3 is 4, of 4 is 5
  CHECK(res.count(eq3) == res.count(at[0]) - res.count(at[1]));
  CHECK(res.count(eq4) == res.count(at[1]) - res.count(at[2]));

  std::vector<u64> crit(qs.size(), 0);
  std::vector<u64> brute(qs.size(), 0);
  for (u64 n = 1; n <= x; ++n) {
    auto f = factorize(n, t);
    u64 lp = lambda_prime(f, &t);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      crit[j] += primary_floor_criterion(qs[j], f);
      brute[j] += lp >= qs[j];
    }
  }
  for (std::size_t j = 0; j < qs.size(); ++j) {
    CHECK(res.count(at[j]) == crit[j]);
    CHECK(res.count(at[j]) == brute[j]);
  }
}

TEST_CASE("prime-divisor histograms") {
  auto h = histogram_omega_a(10, 4, 1);
  std::map<u64, u64> expect = {{0, 8}, {1, 2}};  // only 5 and 10
  CHECK(h.bins == expect);
  CHECK(h.total() == 10);

  CHECK(Omega_class(25, 4, 1) == 2);  // 25 = 5^2 lands in bin 2
  auto hO = histogram_Omega_a(25, 4, 1);
  CHECK(hO.bins.at(2) >= 1);

  const u64 x = 3000;
  for (u64 q : {u64(3), u64(4)}) {
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      std::map<u64, u64> bo, bO;
      for (u64 n = 1; n <= x; ++n) {
        ++bo[omega_class(n, q, a)];
        ++bO[Omega_class(n, q, a)];
      }
      CHECK(histogram_omega_a(x, q, a).bins == bo);
      CHECK(histogram_Omega_a(x, q, a).bins == bO);
    }
  }
}

TEST_CASE("Omega histogram first moment double-counts prime powers") {
  const u64 x = 1000000, q = 4, a = 1;
  SpfTable t(x);
  auto h = histogram_Omega_a(x, q, a, &t);
  CHECK(h.total() == x);
  u64 first = 0;
  for (const auto& [k, c] : h.bins) first += k * c;

  u64 direct = 0;
  for (u64 p : primes_up_to(static_cast<u32>(x))) {
    if (p > x) break;
    if (p % q != a) continue;
    for (u64 pr = p; pr <= x; pr *= p) {
      direct += x / pr;
      if (pr > x / p) break;
    }
  }
  CHECK(first == direct);

  auto ho = histogram_omega_a(x, q, a, &t);
  u64 fo = 0;
  for (const auto& [k, c] : ho.bins) fo += k * c;
  CHECK(fo <= first);
}

TEST_CASE("one job reproduces independent single-counter runs") {
  const u64 x = 5000;
  SpfTable t(x);
  CountJob job(x);
  auto s0 = job.add_restricted(4, {1});
  auto s1 = job.add_lambda_star_divisible(4);
  auto s2 = job.add_lambda_star_equal(4);
  auto s3 = job.add_lambda_prime_at_least(3);
  auto s4 = job.add_lambda_prime_equal(3);
  auto s5 = job.add_omega_histogram(4, 1);
  auto s6 = job.add_Omega_histogram(4, 3);
  auto res = run_count_job(job, &t);
  auto res_fresh = run_count_job(job, nullptr);  // builds its own table

  CHECK(res.count(s0) == count_restricted(x, 4, {1}));
  CHECK(res.count(s1) == count_lambda_star_divisible(x, 4));
  CHECK(res.count(s2) == count_lambda_star_equal(x, 4));
  CHECK(res.count(s3) == count_lambda_prime_at_least(x, 3));
  CHECK(res.count(s4) == count_lambda_prime_equal(x, 3));
  CHECK(res.histogram(s5).bins == histogram_omega_a(x, 4, 1).bins);
  CHECK(res.histogram(s6).bins == histogram_Omega_a(x, 4, 3).bins);
  for (std::size_t i = 0; i < res.slots.size(); ++i) {
    CHECK(res.slots[i].count == res_fresh.slots[i].count);
    CHECK(res.slots[i].hist.bins == res_fresh.slots[i].hist.bins);
  }
}

TEST_CASE("counter validation and slot typing") {
  CHECK_THROWS_AS(CountJob(0), DomainError);
  CHECK_THROWS_AS(CountJob(101, 100), CapacityError);

  CountJob job(10);
  CHECK_THROWS_AS(job.add_restricted(4, {2}), DomainError);
  CHECK_THROWS_AS(job.add_restricted(0, {}), DomainError);
  CHECK_THROWS_AS(job.add_lambda_star_divisible(2), DomainError);
  CHECK_THROWS_AS(job.add_lambda_star_divisible(7), DomainError);
  CHECK_THROWS_AS(job.add_lambda_star_equal(3), DomainError);
  CHECK_THROWS_AS(job.add_lambda_prime_at_least(6), DomainError);
  CHECK_THROWS_AS(job.add_lambda_prime_at_least(1), DomainError);
  CHECK_THROWS_AS(job.add_lambda_prime_equal(12), DomainError);
  CHECK_THROWS_AS(job.add_omega_histogram(4, 2), DomainError);
  CHECK_THROWS_AS(job.add_Omega_histogram(9, 3), DomainError);

  auto scalar = job.add_lambda_star_equal(2);
  auto hist = job.add_omega_histogram(4, 1);
  auto res = run_count_job(job);
  CHECK_THROWS_AS(res.histogram(scalar), DomainError);
  CHECK_THROWS_AS(res.count(hist), DomainError);
  CHECK_THROWS_AS(res.count(99), DomainError);
}
