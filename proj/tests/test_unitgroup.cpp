#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "lsdlab/unitgroup.hpp"

using namespace lsdlab;

namespace {

u64 mulmod_small(u64 a, u64 b, u64 n) { return a * b % n; }

u64 powmod_small(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod_small(r, a, n);
    a = mulmod_small(a, a, n);
    e >>= 1;
  }
  return r;
}

std::vector<u64> units(u64 n) {
  std::vector<u64> u;
  for (u64 a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) u.push_back(a);
  if (n == 1) u.push_back(0);
  return u;
}

// Recover the multiset of prime-power cyclic orders of U_n from torsion
// counts alone: #{x : x^{l^k} = 1} determines, for each prime l, the number
// of components of l-order at least l^k.
std::vector<u64> primary_oracle(u64 n) {
  auto us = units(n);
  u64 phi = us.size();
  std::vector<u64> orders;
  for (const auto& [l, e] : factorize(phi).entries) {
    u64 prev = 1;
    std::vector<u64> at_least;  // at_least[k-1] = #components with order >= l^k
    for (u64 lk = l;; lk *= l) {
      u64 cnt = 0;
      for (u64 x : us)
        if (powmod_small(x, lk, n) == 1 % n) ++cnt;
      u64 ratio = cnt / prev;
      u64 comps = 0;
      while (ratio > 1) ratio /= l, ++comps;
      if (comps == 0) break;
      at_least.push_back(comps);
      prev = cnt;
    }
    for (size_t k = 0; k < at_least.size(); ++k) {
      u64 next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      u64 exactly = at_least[k] - next;
      u64 lk = 1;
      for (size_t i = 0; i <= k; ++i) lk *= l;
      for (u64 i = 0; i < exactly; ++i) orders.push_back(lk);
    }
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

u64 element_order(u64 x, u64 n, u64 phi) {
  u64 ord = phi;
  for (const auto& [p, e] : factorize(phi).entries)
    for (u32 i = 0; i < e && powmod_small(x, ord / p, n) == 1; ++i) ord /= p;
  return ord;
}

u64 carmichael_brute(u64 n) {
  if (n <= 2) return 1;
  auto us = units(n);
  u64 lam = 1;
  for (u64 x : us) lam = std::lcm(lam, element_order(x, n, us.size()));
  return lam;
}

}  // namespace

TEST_CASE("primary decomposition matches torsion-count oracle") {
  for (u64 n = 1; n <= 1200; ++n) {
    auto pd = unit_group_primary(factorize(n));
    CHECK(pd.orders == primary_oracle(n));
    u64 prod = 1;
    for (u64 o : pd.orders) {
      CHECK(is_prime_power(o));
      prod *= o;
    }
    CHECK(prod == euler_phi(n));
  }
  CHECK(unit_group_primary(factorize(15)).orders == std::vector<u64>{2, 4});
  CHECK(unit_group_primary(factorize(7)).orders == std::vector<u64>{2, 3});
  CHECK(unit_group_primary(factorize(2)).orders.empty());
}

TEST_CASE("invariant factors: chain, product, torsion counts") {
  for (u64 n = 3; n <= 400; ++n) {
    auto pd = unit_group_primary(factorize(n));
    auto inv = invariant_factors(pd);
    const auto& d = inv.factors;
    REQUIRE(!d.empty());
    u64 prod = 1;
    for (size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] > 1);
      if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
      prod *= d[i];
    }
    CHECK(prod == euler_phi(n));
    CHECK(d.back() == carmichael_brute(n));
    // k-torsion of prod Z/d_i is prod gcd(k, d_i); counts pin the multiset.
    auto us = units(n);
    for (u64 k = 1; k <= d.back(); ++k) {
      if (d.back() % k != 0) continue;
      u64 cnt = 0;
      for (u64 x : us)
        if (powmod_small(x, k, n) == 1) ++cnt;
      u64 expect = 1;
      for (u64 di : d) expect *= std::gcd(k, di);
      CHECK(cnt == expect);
    }
  }
  CHECK(invariant_factors({{2, 4}}).factors == std::vector<u64>{2, 4});
  CHECK(invariant_factors({{2, 3}}).factors == std::vector<u64>{6});
  CHECK(invariant_factors({{2, 2, 2}}).factors == std::vector<u64>{2, 2, 2});
}

TEST_CASE("lambda_star and lambda_prime basics") {
  CHECK(lambda_star(7) == 6);
  CHECK(lambda_star(24) == 2);
  CHECK(lambda_star(1) == kOrderInfinity);
  CHECK(lambda_star(2) == kOrderInfinity);
  CHECK(lambda_prime(7) == 2);
  CHECK(lambda_prime(9) == 2);
  CHECK(lambda_prime(1) == kOrderInfinity);
  CHECK(lambda_prime(25) == 4);
  auto table = sieve_spf(100000);
  for (u64 n = 3; n <= 100000; ++n)
    CHECK(lambda_star(factorize(n, table), &table) % 2 == 0);
}

TEST_CASE("divisibility criterion equals q | lambda_star") {
  auto table = sieve_spf(20000);
  for (u64 q : {4, 6, 8, 10, 12, 16, 20, 24}) {
    for (u64 n = 1; n <= 20000; ++n) {
      auto f = factorize(n, table);
      u64 ls = lambda_star(f, &table);
      bool divides = ls == kOrderInfinity || ls % q == 0;
      CHECK(divides_lambda_star_criterion(q, f) == divides);
    }
  }
  CHECK(divides_lambda_star_criterion(6, factorize(9)));
  CHECK(divides_lambda_star_criterion(4, factorize(25)));
  CHECK_FALSE(divides_lambda_star_criterion(4, factorize(12)));
  CHECK_THROWS_AS(divides_lambda_star_criterion(5, factorize(3)), DomainError);
  CHECK_THROWS_AS(divides_lambda_star_criterion(2, factorize(3)), DomainError);
}

TEST_CASE("floor criterion equals lambda_prime >= q") {
  auto table = sieve_spf(20000);
  for (u64 q : {3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}) {
    for (u64 n = 1; n <= 20000; ++n) {
      auto f = factorize(n, table);
      CHECK(primary_floor_criterion(q, f) == (lambda_prime(f, &table) >= q));
    }
  }
  CHECK(primary_floor_criterion(3, factorize(2)));
  CHECK(primary_floor_criterion(3, factorize(5)));
  CHECK_FALSE(primary_floor_criterion(3, factorize(7)));
  CHECK_THROWS_AS(primary_floor_criterion(6, factorize(3)), DomainError);
}

TEST_CASE("bq exact rationals") {
  CHECK(bq(3) == Rational(1, 2));
  CHECK(bq(5) == Rational(1, 6));
  CHECK(bq(2) == Rational(1));
  // ascending prime powers; consecutive values non-increasing
  std::vector<u64> pps;
  for (u64 m = 2; m <= 64; ++m)
    if (is_prime_power(m)) pps.push_back(m);
  for (size_t i = 0; i + 1 < pps.size(); ++i)
    CHECK(bq(pps[i + 1]) <= bq(pps[i]));
  CHECK(bq(64) > 0);
  CHECK_THROWS_AS(bq(6), DomainError);
}

TEST_CASE("auxiliary modulus and residue set") {
  CHECK(modulus_Q(3) == 4);
  CHECK(residue_set_BQ(3) == std::vector<u64>{1});
  CHECK(modulus_Q(5) == 72);
  CHECK(residue_set_BQ(5).size() == 4);
  CHECK(modulus_Q(2) == 1);
  CHECK(residue_set_BQ(2) == std::vector<u64>{0});
  CHECK(modulus_Q(7) == 1800);
  CHECK(modulus_Q(8) == 88200);
  CHECK(modulus_Q(11) == 529200);
  CHECK_THROWS_AS(modulus_Q(13), CapacityError);
  for (u64 q : {3, 5, 7, 11}) {
    u64 Q = modulus_Q(q);
    auto B = residue_set_BQ(q);
    CHECK(Rational(B.size()) == bq(q) * Rational(euler_phi(Q)));
    // every residue passes the floor criterion as a prime would
    for (u64 b : B) {
      CHECK(std::gcd(b, Q) == 1);
      if (b > 2 && is_prime(b)) CHECK(primary_floor_criterion(q, factorize(b)));
    }
  }
}
