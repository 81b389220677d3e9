#include "lsdlab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lsdlab {

namespace {

u64 powmod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

u64 modinv(u64 a, u64 m) {
  long long t = 0, nt = 1, r = static_cast<long long>(m),
            nr = static_cast<long long>(a % m);
  while (nr != 0) {
    long long qq = r / nr;
    t -= qq * nt;
    std::swap(t, nt);
    r -= qq * nr;
    std::swap(r, nr);
  }
  return static_cast<u64>(t < 0 ? t + static_cast<long long>(m) : t);
}

u64 smallest_primitive_root(u64 p) {
  auto f = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [l, e] : f.entries)
      if (powmod64(g, (p - 1) / l, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error("no primitive root found");  // unreachable for prime p
}

// generator of U_{p^k} for odd p: lift of a primitive root mod p
u64 odd_prime_power_generator(u64 p, u32 k) {
  u64 g = smallest_primitive_root(p);
  if (k == 1) return g;
  if (powmod64(g, p - 1, p * p) == 1) g += p;
  return g;
}

}  // namespace

CharacterGroup::CharacterGroup(u64 q, u64 phi_bound) {
  if (q < 1) throw DomainError("character group: q >= 1 required");
  if (q > (u64(1) << 32))
    throw CapacityError("character group: modulus too large");
  q_ = q;
  phi_ = euler_phi(q);
  if (phi_ > phi_bound)
    throw CapacityError("character group: phi(q) = " + std::to_string(phi_) +
                        " exceeds bound " + std::to_string(phi_bound));

  // local generators per prime power, CRT-lifted to mod q
  for (const auto& [p, e] : factorize(q).entries) {
    u64 pk = 1;
    for (u32 i = 0; i < e; ++i) pk *= p;
    u64 rest = q / pk;
    std::vector<std::pair<u64, u64>> local;  // (generator mod pk, order)
    if (p == 2) {
      if (e == 2) local.push_back({3, 2});
      if (e >= 3) {
        local.push_back({pk - 1, 2});
        local.push_back({5, pk / 4});
      }
    } else {
      u64 phi_pk = pk / p * (p - 1);
      local.push_back({odd_prime_power_generator(p, e) % pk, phi_pk});
    }
    for (auto [g, m] : local) {
      u64 lifted = g;
      if (rest > 1) {
        // x = g mod pk, x = 1 mod rest
        u64 inv_rest = modinv(rest % pk, pk);
        lifted = (1 + rest * ((g + pk - 1) % pk * inv_rest % pk)) % q;
      }
      generators_.push_back(lifted);
      orders_.push_back(m);
    }
  }

  strides_.assign(orders_.size(), 1);
  for (size_t i = orders_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * orders_[i];

  angle_lcm_ = 1;
  for (u64 m : orders_) angle_lcm_ = std::lcm(angle_lcm_, m);

  roots_.resize(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) {
    roots_[i].resize(orders_[i]);
    for (u64 j = 0; j < orders_[i]; ++j) {
      double ang = 2.0 * std::numbers::pi * double(j) / double(orders_[i]);
      roots_[i][j] = {std::cos(ang), std::sin(ang)};
    }
  }

  units_.reserve(phi_);
  if (q == 1) {
    units_.push_back(0);
  } else {
    for (u64 a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) units_.push_back(a);
  }
  unit_pos_.assign(q + 1, ~u32(0));
  for (u32 i = 0; i < units_.size(); ++i)
    unit_pos_[units_[i]] = i;

  // odometer over exponent tuples; generator orders make wraps free
  tuple_of_unit_.assign(phi_, 0);
  residue_of_tuple_.assign(phi_, 0);
  u64 v = q == 1 ? 0 : 1;
  std::vector<u64> digits(orders_.size(), 0);
  for (u64 lin = 0;; ++lin) {
    residue_of_tuple_[lin] = static_cast<u32>(v);
    tuple_of_unit_[unit_pos_[v]] = static_cast<u32>(lin);
    if (lin + 1 == phi_) break;
    size_t i = orders_.size();
    while (i-- > 0) {
      v = v * generators_[i] % q;
      if (++digits[i] < orders_[i]) break;
      digits[i] = 0;
    }
  }
}

CharacterGroup build_character_group(u64 q, u64 phi_bound) {
  return CharacterGroup(q, phi_bound);
}

bool CharacterGroup::is_unit(u64 a) const {
  a %= q_;
  return unit_pos_[a] != ~u32(0);
}

u32 CharacterGroup::unit_position(u64 a) const {
  a %= q_;
  u32 pos = unit_pos_[a];
  if (pos == ~u32(0))
    throw DomainError("residue " + std::to_string(a) +
                      " not coprime to modulus " + std::to_string(q_));
  return pos;
}

u32 CharacterGroup::unit_position_of_tuple(u32 tuple) const {
  return unit_pos_[residue_of_tuple_[tuple]];
}

void CharacterGroup::decode(u64 linear, u32* digits) const {
  for (size_t i = 0; i < orders_.size(); ++i) {
    digits[i] = static_cast<u32>(linear / strides_[i]);
    linear %= strides_[i];
  }
}

cplx CharacterGroup::chi(u64 t, u64 a) const {
  a %= q_;
  if (unit_pos_[a] == ~u32(0)) return 0.0;
  u64 x = tuple_of_unit_[unit_pos_[a]];
  cplx value = 1.0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    u64 ti = t / strides_[i] % orders_[i];
    u64 xi = x / strides_[i] % orders_[i];
    value *= roots_[i][ti * xi % orders_[i]];
  }
  return value;
}

Rational CharacterGroup::chi_angle(u64 t, u64 a) const {
  u64 x = tuple_of_unit_[unit_position(a)];
  u64 num = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    u64 ti = t / strides_[i] % orders_[i];
    u64 xi = x / strides_[i] % orders_[i];
    num = (num + ti * xi % orders_[i] * (angle_lcm_ / orders_[i])) % angle_lcm_;
  }
  return Rational(num, angle_lcm_);
}

int CharacterGroup::parity(u64 t) const {
  if (q_ <= 2) return 1;
  return chi_angle(t, q_ - 1) == 0 ? 1 : -1;
}

u64 CharacterGroup::conjugate_character(u64 t) const {
  u64 out = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    u64 ti = t / strides_[i] % orders_[i];
    out += (orders_[i] - ti) % orders_[i] * strides_[i];
  }
  return out;
}

namespace {

// In-place transform with kernel e^{-2 pi i j k / m} along every dimension.
void dft_all_dimensions(const CharacterGroup& g, std::vector<cplx>& buf) {
  const auto& orders = g.component_orders();
  u64 phi = g.phi();
  std::vector<cplx> line, out;
  u64 stride_after = 1;  // product of orders of later dimensions
  for (size_t dim = orders.size(); dim-- > 0;) {
    u64 m = orders[dim];
    std::vector<cplx> omega(m);
    for (u64 j = 0; j < m; ++j) {
      double ang = -2.0 * std::numbers::pi * double(j) / double(m);
      omega[j] = {std::cos(ang), std::sin(ang)};
    }
    line.assign(m, 0.0);
    out.assign(m, 0.0);
    u64 block = stride_after * m;
    for (u64 base = 0; base < phi; base += block)
      for (u64 off = 0; off < stride_after; ++off) {
        for (u64 j = 0; j < m; ++j) line[j] = buf[base + off + j * stride_after];
        for (u64 k = 0; k < m; ++k) {
          cplx acc = 0.0;
          for (u64 j = 0; j < m; ++j) acc += line[j] * omega[j * k % m];
          out[k] = acc;
        }
        for (u64 k = 0; k < m; ++k) buf[base + off + k * stride_after] = out[k];
      }
    stride_after = block;
  }
}

}  // namespace

std::vector<cplx> unit_sums(const CharacterGroup& g,
                            const std::vector<cplx>& f) {
  if (f.size() != g.phi())
    throw DomainError("unit_sums: size mismatch with phi(q)");
  std::vector<cplx> buf(g.phi());
  for (u32 pos = 0; pos < f.size(); ++pos)
    buf[g.tuple_index_of_unit(pos)] = f[pos];
  dft_all_dimensions(g, buf);
  return buf;
}

std::vector<cplx> character_sums(const CharacterGroup& g,
                                 const std::vector<cplx>& h) {
  if (h.size() != g.phi())
    throw DomainError("character_sums: size mismatch with phi(q)");
  std::vector<cplx> buf(h);
  dft_all_dimensions(g, buf);
  std::vector<cplx> out(g.phi());
  for (u32 tuple = 0; tuple < out.size(); ++tuple)
    out[g.unit_position_of_tuple(tuple)] = buf[tuple];
  return out;
}

double lambda_q(const CharacterGroup& g, const std::vector<cplx>& alpha) {
  auto sums = character_sums(g, alpha);
  double best = 0.0;
  for (const cplx& s : sums) best = std::max(best, std::abs(s));
  return 1.0 + best;
}

ExponentVector exponents_restricted(const CharacterGroup& g,
                                    const std::vector<u64>& A) {
  std::vector<cplx> indicator(g.phi(), 0.0);
  for (u64 a : A) indicator[g.unit_position(a)] = 1.0;
  ExponentVector v;
  v.alpha = unit_sums(g, indicator);
  for (cplx& c : v.alpha) c /= double(g.phi());
  v.lambda = lambda_q(g, v.alpha);
  return v;
}

ExponentVector exponents_sathe(const CharacterGroup& g, cplx z, u64 a) {
  u32 pos = g.unit_position(a);  // validates coprimality
  (void)pos;
  ExponentVector v;
  v.alpha.assign(g.phi(), 0.0);
  for (u64 t = 0; t < g.phi(); ++t)
    v.alpha[t] = std::conj(g.chi(t, a)) * (z - 1.0) / double(g.phi());
  v.alpha[g.principal()] += 1.0;
  v.lambda = lambda_q(g, v.alpha);
  return v;
}

}  // namespace lsdlab
