#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <vector>

#include "lsdlab/arith.hpp"

namespace lsdlab {

using Rational = boost::multiprecision::cpp_rational;

// Sentinel order for the trivial groups U_1, U_2; divisible by every q and
// >= every finite threshold, but never equal to a finite value.
inline constexpr u64 kOrderInfinity = std::numeric_limits<u64>::max();

// Multiset of prime-power cyclic orders with U_n isomorphic to their product.
// Sorted ascending; empty for n in {1, 2}; product of orders = phi(n).
struct PrimaryDecomposition {
  std::vector<u64> orders;
};

// Divisibility chain d_1 | d_2 | ... | d_r, each > 1, product = phi(n).
// d_r is the Carmichael function; d_1 the least invariant factor.
struct InvariantFactors {
  std::vector<u64> factors;
};

// Optional spf table accelerates the factorizations of p - 1 for p | n.
PrimaryDecomposition unit_group_primary(const Factorization& f,
                                        const SpfTable* table = nullptr);
InvariantFactors invariant_factors(const PrimaryDecomposition& pd);

u64 lambda_star(const Factorization& f, const SpfTable* table = nullptr);
u64 lambda_star(u64 n);
u64 lambda_prime(const Factorization& f, const SpfTable* table = nullptr);
u64 lambda_prime(u64 n);

// Congruence characterization of q | lambda_star(n) for even q >= 4: n =
// 2^{e2} m with e2 <= 1 and every prime of m congruent to 1 mod q, except
// that when P = P(q) > 2 and q | phi(P^{e+1}) the prime P may also appear
// with multiplicity 0 or >= e+1, where e = v_P(q).
bool divides_lambda_star_criterion(u64 q, const Factorization& f);

// Congruence characterization of lambda_prime(n) >= q for prime powers
// q >= 3: n = 2^{e2} m with e2 <= 1 and every odd prime p | m satisfying,
// for each prime l < q, either l does not divide p - 1 or p = 1 mod l^{e_l}
// with l^{e_l} the least power of l that is >= q.
bool primary_floor_criterion(u64 q, const Factorization& f);

// smallest e >= 1 with l^e >= q (i.e. ceil(log q / log l) for l < q)
u32 ceil_log_power(u64 l, u64 q);

// Density exponent for the least-primary-factor count: the exact rational
// prod_{l < q} ((l-2)/(l-1) + 1/((l-1) l^{e_l - 1})). Empty product for q=2.
Rational bq(u64 q);

inline constexpr u64 kDefaultQBound = 10'000'000;

// Auxiliary modulus prod_{l < q} l^{e_l} and the residues b mod Q allowed for
// primes p = b mod Q by the floor criterion. Q = 1 for q = 2 (residue {0}).
u64 modulus_Q(u64 q, u64 bound = kDefaultQBound);
std::vector<u64> residue_set_BQ(u64 q, u64 bound = kDefaultQBound);

}  // namespace lsdlab
