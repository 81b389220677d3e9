#include "lsdlab/arith.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <numeric>

namespace lsdlab {

u64 Factorization::value() const {
  u64 n = 1;
  for (const auto& [p, e] : entries)
    for (u32 i = 0; i < e; ++i) n *= p;
  return n;
}

// ---------------------------------------------------------------- sieving

namespace {

constexpr u64 kSegment = 1u << 22;

// Plain bit sieve used for the shared ascending prime list.
std::vector<u32> sieve_primes(u32 limit) {
  std::vector<u32> primes;
  if (limit < 2) return primes;
  std::vector<u8> composite((limit + 1) / 2 + 1, 0);  // odd numbers only
  primes.push_back(2);
  for (u64 n = 3; n <= limit; n += 2) {
    if (composite[n >> 1]) continue;
    primes.push_back(static_cast<u32>(n));
    for (u64 m = n * n; m <= limit; m += 2 * n) composite[m >> 1] = 1;
  }
  return primes;
}

std::vector<u32> g_prime_cache;
std::mutex g_prime_mutex;

}  // namespace

const std::vector<u32>& primes_up_to(u32 limit) {
  std::lock_guard lock(g_prime_mutex);
  if (g_prime_cache.empty() || g_prime_cache.back() < limit) {
    // Regrow past the request so repeated slightly-larger calls stay cheap.
    u32 target = std::max<u32>(limit, 1u << 16);
    g_prime_cache = sieve_primes(target);
  }
  return g_prime_cache;
}

SpfTable::SpfTable(u64 limit, u64 capacity) {
  if (limit < 2 || limit > capacity)
    throw CapacityError("sieve_spf: limit " + std::to_string(limit) +
                        " outside [2, " + std::to_string(capacity) + "]");
  limit_ = limit;
  spf_.assign(limit + 1, 0);
  u32 root = static_cast<u32>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto& primes = primes_up_to(root);
  // Mark segment by segment, smallest prime first, so the first mark wins.
  for (u64 lo = 2; lo <= limit; lo += kSegment) {
    u64 hi = std::min(limit, lo + kSegment - 1);
    for (u32 p : primes) {
      u64 pp = static_cast<u64>(p) * p;
      if (pp > hi) break;
      u64 start = std::max<u64>(pp, ((lo + p - 1) / p) * p);
      for (u64 m = start; m <= hi; m += p)
        if (spf_[m] == 0) spf_[m] = p;
    }
    for (u64 n = lo; n <= hi; ++n)
      if (spf_[n] == 0) spf_[n] = static_cast<u32>(n);
  }
}

SpfTable sieve_spf(u64 limit, u64 capacity) { return SpfTable(limit, capacity); }

namespace {
constexpr char kCacheMagic[8] = {'L', 'S', 'D', 'L', 'A', 'B', '0', '1'};

void put_u64_le(std::ofstream& out, u64 v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

u64 get_u64_le(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
  return v;
}
}  // namespace

void SpfTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open spf cache for writing: " + path);
  out.write(kCacheMagic, 8);
  put_u64_le(out, limit_);
  // Entries for 2 <= n <= limit, 32-bit little-endian.
  static_assert(std::endian::native == std::endian::little,
                "serialization below assumes a little-endian host");
  out.write(reinterpret_cast<const char*>(spf_.data() + 2),
            static_cast<std::streamsize>((limit_ - 1) * sizeof(u32)));
  if (!out) throw Error("short write to spf cache: " + path);
}

SpfTable SpfTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open spf cache: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kCacheMagic, 8) != 0)
    throw Error("bad spf cache magic in " + path);
  u64 limit = get_u64_le(in);
  if (!in || limit < 2 || limit > kDefaultCapacity)
    throw Error("bad spf cache limit in " + path);
  SpfTable t;
  t.limit_ = limit;
  t.spf_.assign(limit + 1, 0);
  in.read(reinterpret_cast<char*>(t.spf_.data() + 2),
          static_cast<std::streamsize>((limit - 1) * sizeof(u32)));
  if (!in) throw Error("short read from spf cache: " + path);
  return t;
}

// ----------------------------------------------------------- factorization

Factorization factorize(u64 n) {
  Factorization f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    u32 e = 0;
    while (n % p == 0) n /= p, ++e;
    f.entries.push_back({p, e});
  }
  if (n > 1) f.entries.push_back({n, 1});
  return f;
}

Factorization factorize(u64 n, const SpfTable& table) {
  if (n > table.limit())
    throw CapacityError("factorize: n exceeds spf table limit");
  Factorization f;
  while (n > 1) {
    u64 p = table[n];
    u32 e = 0;
    while (n % p == 0) n /= p, ++e;
    f.entries.push_back({p, e});
  }
  return f;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& [p, e] : f.entries) {
    phi *= p - 1;
    for (u32 i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

// -------------------------------------------------------------- primality

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<__uint128_t>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic for n < 3.3e24 with these bases.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime_power(u64 n) {
  if (n < 2) return false;
  u64 p = n;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  while (n % p == 0) n /= p;
  return n == 1;
}

u64 next_prime_power(u64 q) {
  if (q < 2) throw DomainError("next_prime_power: q >= 2 required");
  for (u64 n = q + 1;; ++n)
    if (is_prime_power(n)) return n;
}

u64 least_prime_in_ap(u64 q, u64 a, u64 search_bound) {
  if (q == 0) throw DomainError("least_prime_in_ap: q >= 1 required");
  a %= q;
  if (std::gcd(a, q) != 1)
    throw DomainError("least_prime_in_ap: gcd(a,q) must be 1");
  u64 n = (a == 0 ? q : a);  // q = 1 scans 1, 2, 3, ...
  for (; n <= search_bound; n += q)
    if (is_prime(n)) return n;
  throw NotFoundError("least_prime_in_ap: no prime below search bound");
}

// ------------------------------------------------------------- quadrature

namespace {

double li_f(double t) { return 1.0 / std::log(t); }

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = li_f(lm), frm = li_f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double logarithmic_integral(double y) {
  if (y < 2.0) throw DomainError("logarithmic_integral: y >= 2 required");
  if (y == 2.0) return 0.0;
  // Panels per decade keep the adaptive recursion shallow for huge y.
  // Split at powers of ten so each adaptive call works on a gentle panel.
  double total = 0.0;
  double lo = 2.0;
  while (lo < y) {
    double hi = std::min(y, lo * 10.0);
    double fa = li_f(lo), fm = li_f(0.5 * (lo + hi)), fb = li_f(hi);
    double whole = simpson(lo, hi, fa, fm, fb);
    double tol = std::max(1e-10, std::abs(whole) * 1e-14);
    total += adaptive_simpson(lo, hi, fa, fm, fb, whole, tol, 48);
    lo = hi;
  }
  return total;
}

// -------------------------------------------------------- special functions

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: x > 0 required");
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B_2..B_14.
  double inv = 1.0 / x, inv2 = inv * inv;
  static constexpr double b[] = {
      1.0 / 6,  -1.0 / 30,   1.0 / 42,  -1.0 / 30,
      5.0 / 66, -691.0 / 2730, 7.0 / 6,
  };
  double series = 0.0, power = inv2;
  for (int k = 0; k < 7; ++k) {
    series += b[k] / (2.0 * (k + 1)) * power;
    power *= inv2;
  }
  return result + std::log(x) - 0.5 * inv - series;
}

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set);
// relative error ~1e-13 on Re z >= 1/2.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx gamma_core(cplx z) {
  // Re z >= 1/2 assumed.
  cplx sum = kLanczos[0];
  for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z - 1.0 + double(k));
  cplx t = z + (kLanczosG - 0.5);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z - 0.5) *
         std::exp(-t) * sum;
}

bool near_nonpositive_integer(cplx z, double tol = 1e-13) {
  double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

}  // namespace

cplx complex_gamma(cplx z) {
  if (near_nonpositive_integer(z))
    throw PoleError("complex_gamma: pole at nonpositive integer");
  if (z.real() >= 0.5) return gamma_core(z);
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  cplx s = std::sin(std::numbers::pi * z);
  return std::numbers::pi / (s * gamma_core(1.0 - z));
}

double real_gamma(double x) { return complex_gamma(cplx(x, 0.0)).real(); }

cplx rgamma(cplx z) {
  if (near_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return 1.0 / gamma_core(z);
  cplx s = std::sin(std::numbers::pi * z);
  return gamma_core(1.0 - z) * s / std::numbers::pi;
}

cplx pairwise_sum(const std::vector<cplx>& v) {
  // Fixed reduction tree: sums are reproducible bit for bit.
  std::vector<cplx> buf(v);
  size_t n = buf.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    size_t half = n / 2;
    for (size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n & 1) buf[half] = buf[n - 1];
    n = half + (n & 1);
  }
  return buf[0];
}

}  // namespace lsdlab
