#pragma once
#include <vector>

#include "lsdlab/arith.hpp"
#include "lsdlab/unitgroup.hpp"

namespace lsdlab {

// Dual group of U_q realized through a fixed cyclic decomposition
// U_q = <g_1> x ... x <g_r> (primitive roots for odd prime powers, <-1, 5>
// for 2^k with k >= 3, combined by CRT). Characters are indexed linearly in
// the same mixed radix as unit discrete logs; index 0 is principal. Values
// are exact roots of unity: angles are rationals over lcm of the component
// orders, converted to complex only on evaluation.
class CharacterGroup {
 public:
  static constexpr u64 kDefaultPhiBound = 10'000'000;
  explicit CharacterGroup(u64 q, u64 phi_bound = kDefaultPhiBound);

  u64 modulus() const { return q_; }
  u64 phi() const { return phi_; }
  size_t rank() const { return orders_.size(); }
  const std::vector<u64>& component_orders() const { return orders_; }
  const std::vector<u64>& generators() const { return generators_; }
  const std::vector<u64>& units() const { return units_; }

  bool is_unit(u64 a) const;
  u32 unit_position(u64 a) const;  // DomainError when gcd(a,q) > 1
  u64 unit_at(u32 pos) const { return units_[pos]; }

  cplx chi(u64 t, u64 a) const;  // 0 off units
  // exact angle in [0,1) as a fraction of a full turn; a must be a unit
  Rational chi_angle(u64 t, u64 a) const;
  int parity(u64 t) const;  // chi_t(-1), +1 or -1
  u64 conjugate_character(u64 t) const;
  bool is_real_character(u64 t) const {
    return conjugate_character(t) == t;
  }
  u64 principal() const { return 0; }

  // layout shared by the transforms below
  u32 tuple_index_of_unit(u32 pos) const { return tuple_of_unit_[pos]; }
  u32 unit_position_of_tuple(u32 tuple) const;
  void decode(u64 linear, u32* digits) const;

 private:
  u64 q_ = 1;
  u64 phi_ = 1;
  std::vector<u64> generators_;
  std::vector<u64> orders_;
  std::vector<u64> strides_;  // strides_[i] = prod of orders_[j], j > i
  std::vector<u64> units_;    // ascending
  std::vector<u32> unit_pos_;          // residue -> position in units_
  std::vector<u32> tuple_of_unit_;     // unit position -> tuple linear index
  std::vector<u32> residue_of_tuple_;  // tuple linear index -> residue
  std::vector<std::vector<cplx>> roots_;  // roots_[i][j] = e^{2 pi i j / m_i}
  u64 angle_lcm_ = 1;
};

CharacterGroup build_character_group(u64 q,
                                     u64 phi_bound =
                                         CharacterGroup::kDefaultPhiBound);

// Forward transform: out[t] = sum over units a of f(a) * conj(chi_t(a)),
// with f indexed by unit position. O(phi * sum of component orders).
std::vector<cplx> unit_sums(const CharacterGroup& g,
                            const std::vector<cplx>& f);
// Dual direction: out[unit position of a] = sum over t of h(t) * conj(chi_t(a)).
std::vector<cplx> character_sums(const CharacterGroup& g,
                                 const std::vector<cplx>& h);

// alpha indexed by character linear index, with the correlation constant
// 1 + max over units a of |sum_chi alpha_chi chi(a)| cached at build.
struct ExponentVector {
  std::vector<cplx> alpha;
  double lambda = 1.0;
};

double lambda_q(const CharacterGroup& g, const std::vector<cplx>& alpha);

// alpha_chi = phi(q)^{-1} sum_{b in A} conj(chi(b)); A as residues mod q.
ExponentVector exponents_restricted(const CharacterGroup& g,
                                    const std::vector<u64>& A);
// alpha_chi = [chi principal] + (z - 1) conj(chi(a)) / phi(q).
ExponentVector exponents_sathe(const CharacterGroup& g, cplx z, u64 a);

}  // namespace lsdlab
