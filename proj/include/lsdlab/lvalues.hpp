#pragma once
#include <vector>

#include "lsdlab/characters.hpp"

namespace lsdlab {

// Euler-Maclaurin Hurwitz zeta. Real entry point restricted to the domain
// the callers use; the deflated variant zeta(s,a) - 1/(s-1) is entire in s
// and is what every L-value assembly consumes.
double hurwitz_zeta(double s, double a);  // s in (1/2,2], s != 1, a in (0,1]
cplx hurwitz_zeta_deflated(cplx s, double a);
double riemann_zeta(double s);  // s in (1/2, 2], s != 1

struct LogLValue {
  u64 character = 0;
  double s = 0.0;
  cplx value;  // branch-continued log L(s,chi), anchored at s = 2
};

// Shared evaluator for one character group: bulk L values via one deflated
// Hurwitz vector per s plus a group transform, branch-continued logs walked
// in lockstep for all characters, and the memoized values at s = 1.
class LFunctionEngine {
 public:
  explicit LFunctionEngine(const CharacterGroup& g);

  const CharacterGroup& group() const { return g_; }

  // zeta(s, a/q) - 1/(s-1) indexed by unit position
  std::vector<cplx> zeta_deflated_units(cplx s) const;
  // L(s, chi_t) for every t; the principal entry is only meaningful off s=1
  std::vector<cplx> l_all(cplx s) const;
  cplx l_value(cplx s, u64 t) const;  // non-principal only
  cplx l_one_digamma(u64 t) const;    // independent route at s = 1
  // W(s) = L(s, chi0) (s-1), analytic and nonzero near [1,2]; W(1) = phi/q
  cplx principal_completed(cplx s) const;

  // Branch-continued log L(s_j, chi_t) for every path node j and character
  // t, walking from the anchor s=2 through the given nodes in order. The
  // principal slot carries log W instead. Paths must start near s=2.
  std::vector<std::vector<cplx>> log_l_path(const std::vector<cplx>& path) const;
  // single real target, stepping grid <= 0.01 from 2 down to s
  std::vector<cplx> log_l_at(double s) const;
  LogLValue log_l_continuous(u64 t, double s) const;

  // log L(1, chi) for non-principal t, log(phi/q) at the principal slot
  const std::vector<cplx>& t_one_all() const;
  double product_l_one_nonprincipal() const;

 private:
  std::vector<cplx> anchor_values() const;
  const CharacterGroup& g_;
  std::vector<u64> ell_;  // primes dividing q
  mutable std::vector<cplx> t_one_;
};

}  // namespace lsdlab
