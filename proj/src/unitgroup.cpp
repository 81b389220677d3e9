#include "lsdlab/unitgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lsdlab {

namespace {

Factorization factorize_with(u64 n, const SpfTable* table) {
  if (table && n <= table->limit()) return factorize(n, *table);
  return factorize(n);
}

void push_prime_power_parts(u64 n, const SpfTable* table,
                            std::vector<u64>& out) {
  for (const auto& [p, e] : factorize_with(n, table).entries) {
    u64 pe = 1;
    for (u32 i = 0; i < e; ++i) pe *= p;
    out.push_back(pe);
  }
}

}  // namespace

PrimaryDecomposition unit_group_primary(const Factorization& f,
                                        const SpfTable* table) {
  PrimaryDecomposition pd;
  for (const auto& [p, e] : f.entries) {
    if (p == 2) {
      if (e == 2) pd.orders.push_back(2);
      if (e >= 3) {
        pd.orders.push_back(2);
        pd.orders.push_back(u64(1) << (e - 2));
      }
      continue;
    }
    push_prime_power_parts(p - 1, table, pd.orders);
    if (e >= 2) {
      u64 pe = 1;
      for (u32 i = 0; i + 1 < e; ++i) pe *= p;
      pd.orders.push_back(pe);
    }
  }
  std::sort(pd.orders.begin(), pd.orders.end());
  return pd;
}

InvariantFactors invariant_factors(const PrimaryDecomposition& pd) {
  // Exponent lists per prime, each sorted descending; r = longest list.
  std::map<u64, std::vector<u32>> exps;
  size_t r = 0;
  for (u64 order : pd.orders) {
    auto f = factorize(order);
    auto& v = exps[f.entries[0].prime];
    v.push_back(f.entries[0].exponent);
    r = std::max(r, v.size());
  }
  InvariantFactors inv;
  inv.factors.assign(r, 1);
  for (auto& [l, v] : exps) {
    std::sort(v.begin(), v.end(), std::greater<>());
    // i-th largest exponent multiplies the i-th largest factor.
    for (size_t i = 0; i < v.size(); ++i) {
      u64 le = 1;
      for (u32 j = 0; j < v[i]; ++j) le *= l;
      inv.factors[r - 1 - i] *= le;
    }
  }
  return inv;
}

u64 lambda_star(const Factorization& f, const SpfTable* table) {
  auto pd = unit_group_primary(f, table);
  if (pd.orders.empty()) return kOrderInfinity;
  return invariant_factors(pd).factors.front();
}

u64 lambda_star(u64 n) { return lambda_star(factorize(n)); }

u64 lambda_prime(const Factorization& f, const SpfTable* table) {
  auto pd = unit_group_primary(f, table);
  if (pd.orders.empty()) return kOrderInfinity;
  return pd.orders.front();
}

u64 lambda_prime(u64 n) { return lambda_prime(factorize(n)); }

bool divides_lambda_star_criterion(u64 q, const Factorization& f) {
  if (q < 4 || q % 2 != 0)
    throw DomainError("divides_lambda_star_criterion: q even >= 4 required");
  u64 P = 1, rest = q;
  u32 ep = 0;
  for (const auto& [p, e] : factorize(q).entries) {
    P = p;
    ep = e;
  }
  for (u32 i = 0; i < ep; ++i) rest /= P;
  bool special_P = P > 2 && (P - 1) % rest == 0;  // q | phi(P^{ep+1})
  for (const auto& [p, e] : f.entries) {
    if (p == 2) {
      if (e > 1) return false;
    } else if (special_P && p == P) {
      if (e < ep + 1) return false;
    } else if (p % q != 1) {
      return false;
    }
  }
  return true;
}

u32 ceil_log_power(u64 l, u64 q) {
  u32 e = 1;
  u64 le = l;
  while (le < q) le *= l, ++e;
  return e;
}

bool primary_floor_criterion(u64 q, const Factorization& f) {
  if (q < 3 || !is_prime_power(q))
    throw DomainError("primary_floor_criterion: prime power q >= 3 required");
  const auto& small = primes_up_to(static_cast<u32>(q - 1));
  for (const auto& [p, e] : f.entries) {
    if (p == 2) {
      if (e > 1) return false;
      continue;
    }
    for (u64 l : small) {
      if (l >= q) break;
      if ((p - 1) % l != 0) continue;
      u64 le = 1;
      for (u32 i = 0; i < ceil_log_power(l, q); ++i) le *= l;
      if ((p - 1) % le != 0) return false;
    }
  }
  return true;
}

Rational bq(u64 q) {
  if (q < 2 || !is_prime_power(q))
    throw DomainError("bq: prime power q >= 2 required");
  Rational b = 1;
  for (u64 l : primes_up_to(static_cast<u32>(q))) {
    if (l >= q) break;
    boost::multiprecision::cpp_int le = 1;
    for (u32 i = 0; i + 1 < ceil_log_power(l, q); ++i) le *= l;
    Rational term(l - 2, l - 1);
    term += Rational(boost::multiprecision::cpp_int(1), le * (l - 1));
    b *= term;
  }
  return b;
}

u64 modulus_Q(u64 q, u64 bound) {
  if (q < 2 || !is_prime_power(q))
    throw DomainError("modulus_Q: prime power q >= 2 required");
  u64 Q = 1;
  for (u64 l : primes_up_to(static_cast<u32>(q))) {
    if (l >= q) break;
    for (u32 i = 0; i < ceil_log_power(l, q); ++i) {
      if (Q > bound / l)
        throw CapacityError("modulus_Q: Q exceeds bound " +
                            std::to_string(bound) + " for q = " +
                            std::to_string(q));
      Q *= l;
    }
  }
  return Q;
}

std::vector<u64> residue_set_BQ(u64 q, u64 bound) {
  u64 Q = modulus_Q(q, bound);
  if (Q == 1) return {0};
  const auto& small = primes_up_to(static_cast<u32>(q - 1));
  std::vector<u64> out;
  for (u64 b = 1; b < Q; ++b) {
    if (std::gcd(b, Q) != 1) continue;
    bool ok = true;
    for (u64 l : small) {
      if (l >= q) break;
      if ((b - 1) % l != 0) continue;
      u64 le = 1;
      for (u32 i = 0; i < ceil_log_power(l, q); ++i) le *= l;
      if ((b - 1) % le != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(b);
  }
  return out;
}

}  // namespace lsdlab
