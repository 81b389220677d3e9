#include "lsdlab/lvalues.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lsdlab {

namespace {

// B_2, B_4, ..., B_24
constexpr double kBernoulli[12] = {
    1.0 / 6,           -1.0 / 30,        1.0 / 42,
    -1.0 / 30,         5.0 / 66,         -691.0 / 2730,
    7.0 / 6,           -3617.0 / 510,    43867.0 / 798,
    -174611.0 / 330,   854513.0 / 138,   -236364091.0 / 2730,
};
constexpr int kEmTerms = 32;
constexpr int kEmCorrections = 12;

}  // namespace

cplx hurwitz_zeta_deflated(cplx s, double a) {
  if (!(a > 0.0 && a <= 1.0))
    throw DomainError("hurwitz zeta: a in (0,1] required");
  cplx sum = 0.0;
  for (int n = 0; n < kEmTerms; ++n)
    sum += std::exp(-s * std::log(n + a));
  double Ma = kEmTerms + a;
  double lM = std::log(Ma);
  // ((M+a)^{1-s} - 1)/(s-1) = -log(M+a) * (e^u - 1)/u with u = (1-s)log(M+a)
  cplx u = (1.0 - s) * lM;
  cplx em1_over_u;
  if (std::abs(u) < 1e-3)
    em1_over_u = 1.0 + u * (0.5 + u * (1.0 / 6.0 + u / 24.0));
  else
    em1_over_u = (std::exp(u) - 1.0) / u;
  sum -= lM * em1_over_u;
  cplx w = std::exp(-s * lM);  // (M+a)^{-s}
  sum += 0.5 * w;
  cplx poch = s;       // s(s+1)...(s+2k-2)
  double mapow = Ma;   // (M+a)^{2k-1}
  double fact = 2.0;   // (2k)!
  for (int k = 1; k <= kEmCorrections; ++k) {
    sum += kBernoulli[k - 1] / fact * poch * w / mapow;
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    mapow *= Ma * Ma;
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return sum;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 0.5 && s <= 2.0))
    throw DomainError("hurwitz zeta: s in (1/2, 2] required");
  if (std::abs(s - 1.0) < 1e-12)
    throw PoleError("hurwitz zeta: pole at s = 1");
  return hurwitz_zeta_deflated(cplx(s, 0.0), a).real() + 1.0 / (s - 1.0);
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

LFunctionEngine::LFunctionEngine(const CharacterGroup& g) : g_(g) {
  for (const auto& [p, e] : factorize(g.modulus()).entries) ell_.push_back(p);
}

std::vector<cplx> LFunctionEngine::zeta_deflated_units(cplx s) const {
  u64 q = g_.modulus();
  std::vector<cplx> v(g_.phi());
  for (u32 pos = 0; pos < g_.phi(); ++pos) {
    u64 a = g_.unit_at(pos);
    v[pos] = hurwitz_zeta_deflated(s, a == 0 ? 1.0 : double(a) / double(q));
  }
  return v;
}

cplx LFunctionEngine::principal_completed(cplx s) const {
  cplx w = (s - 1.0) * hurwitz_zeta_deflated(s, 1.0) + 1.0;
  for (u64 l : ell_) w *= 1.0 - std::exp(-s * std::log(double(l)));
  return w;
}

std::vector<cplx> LFunctionEngine::l_all(cplx s) const {
  auto us = unit_sums(g_, zeta_deflated_units(s));
  std::vector<cplx> out(g_.phi());
  cplx qs = std::exp(-s * std::log(double(g_.modulus())));
  for (u64 t = 1; t < g_.phi(); ++t)
    out[t] = qs * us[g_.conjugate_character(t)];
  out[0] = std::abs(s - 1.0) < 1e-12
               ? cplx(std::numeric_limits<double>::quiet_NaN(), 0.0)
               : principal_completed(s) / (s - 1.0);
  return out;
}

cplx LFunctionEngine::l_value(cplx s, u64 t) const {
  if (t == g_.principal())
    throw DomainError("l_value: principal character has a pole at s = 1");
  auto v = zeta_deflated_units(s);
  cplx sum = 0.0;
  for (u32 pos = 0; pos < g_.phi(); ++pos)
    sum += g_.chi(t, g_.unit_at(pos)) * v[pos];
  return std::exp(-s * std::log(double(g_.modulus()))) * sum;
}

cplx LFunctionEngine::l_one_digamma(u64 t) const {
  if (t == g_.principal())
    throw DomainError("l_one_digamma: non-principal character required");
  u64 q = g_.modulus();
  cplx sum = 0.0;
  for (u64 a : g_.units())
    sum += g_.chi(t, a) * digamma(double(a) / double(q));
  return -sum / double(q);
}

std::vector<cplx> LFunctionEngine::anchor_values() const {
  std::vector<cplx> vals = l_all(2.0);
  vals[0] = principal_completed(2.0);
  std::vector<cplx> out(g_.phi());
  for (u64 t = 0; t < g_.phi(); ++t) out[t] = std::log(vals[t]);
  return out;
}

std::vector<std::vector<cplx>> LFunctionEngine::log_l_path(
    const std::vector<cplx>& path) const {
  std::vector<cplx> logs = anchor_values();
  cplx cur_s = 2.0;
  std::vector<cplx> cur_vals(g_.phi());
  {
    auto v = l_all(cur_s);
    v[0] = principal_completed(cur_s);
    cur_vals = v;
  }

  // Advance all characters together; a step whose log-increment is large
  // enough to be branch-ambiguous is split at its midpoint.
  auto advance = [&](cplx target, int depth, auto&& self) -> void {
    auto vals = l_all(target);
    vals[0] = principal_completed(target);
    bool refine = false;
    for (u64 t = 0; t < g_.phi(); ++t) {
      double m = std::abs(vals[t]);
      if (!(m > 0.0) || !std::isfinite(m))
        throw ContinuationError("log L walk: vanishing value on path");
      if (std::abs(std::log(vals[t] / cur_vals[t])) > std::numbers::pi / 2)
        refine = true;
    }
    if (refine) {
      if (depth >= 24)
        throw BranchError("log L walk: increment stays ambiguous");
      cplx mid = 0.5 * (cur_s + target);
      self(mid, depth + 1, self);
      self(target, depth + 1, self);
      return;
    }
    for (u64 t = 0; t < g_.phi(); ++t)
      logs[t] += std::log(vals[t] / cur_vals[t]);
    cur_s = target;
    cur_vals = std::move(vals);
  };

  std::vector<std::vector<cplx>> rows;
  rows.reserve(path.size());
  for (cplx node : path) {
    if (std::abs(node - cur_s) > 1e-15) advance(node, 0, advance);
    rows.push_back(logs);
  }
  return rows;
}

std::vector<cplx> LFunctionEngine::log_l_at(double s) const {
  if (!(s > 0.9 && s <= 2.0))
    throw DomainError("log_l_at: s in (0.9, 2] required");
  int n = std::max(1, static_cast<int>(std::ceil((2.0 - s) / 0.01)));
  std::vector<cplx> path;
  for (int k = 1; k <= n; ++k)
    path.push_back(2.0 + (s - 2.0) * double(k) / double(n));
  return log_l_path(path).back();
}

LogLValue LFunctionEngine::log_l_continuous(u64 t, double s) const {
  return {t, s, log_l_at(s)[t]};
}

const std::vector<cplx>& LFunctionEngine::t_one_all() const {
  if (t_one_.empty()) t_one_ = log_l_at(1.0);
  return t_one_;
}

double LFunctionEngine::product_l_one_nonprincipal() const {
  const auto& t1 = t_one_all();
  cplx sum = 0.0;
  for (u64 t = 1; t < g_.phi(); ++t) sum += t1[t];
  if (std::abs(sum.imag()) > 1e-8)
    throw ValidationError("product of L(1,chi) not real");
  return std::exp(sum.real());
}

}  // namespace lsdlab
