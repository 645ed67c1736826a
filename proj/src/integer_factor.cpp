#include "supercert/integer_factor.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "supercert/errors.hpp"

namespace supercert {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kTrialDivision: return "trial-division";
    case Provenance::kHint: return "hint-verified";
    case Provenance::kRho: return "rho";
    case Provenance::kPrimeTest: return "primality-test";
  }
  return "unknown";
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

unsigned long Factorization::exponent_of(const Int& p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

unsigned long p_valuation(const Int& n, const Int& p) {
  if (n == 0) throw UsageError("p-adic valuation of zero");
  if (p < 2) throw UsageError("p-adic valuation needs a prime p");
  Int m = abs(n);
  return mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
}

// ---------------------------------------------------------------- primality

bool strong_probable_prime(const Int& n, const Int& a) {
  Int nm1 = n - 1;
  Int d = nm1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x = powmod(mod_floor(a, n), d, n);
  if (x == 1 || x == nm1) return true;
  for (unsigned long k = 1; k < s; ++k) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

namespace {

Int half_mod(Int x, const Int& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  return x;
}

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialDivisionBound);
  return primes;
}

}  // namespace

bool strong_lucas_probable_prime(const Int& n) {
  long D = 5;
  for (;;) {
    Int Dz = D;
    int j = mpz_jacobi(Dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(Dz) != n) return false;
    D = D > 0 ? -(D + 2) : -D + 2;
    if (D == 17 && mpz_perfect_square_p(n.get_mpz_t())) return false;
  }
  const Int P = 1;
  const Int Q = mod_floor(Int((1 - D) / 4), n);
  const Int Dm = mod_floor(Int(D), n);
  Int d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  Int U = 1, V = P, Qk = Q;
  const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (std::size_t b = bits - 1; b-- > 0;) {
    U = U * V % n;
    V = mod_floor(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), b)) {
      Int U2 = half_mod(mod_floor(P * U + V, n), n);
      Int V2 = half_mod(mod_floor(Dm * U + P * V, n), n);
      U = U2;
      V = V2;
      Qk = Qk * Q % n;
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long k = 1; k < s; ++k) {
    V = mod_floor(V * V - 2 * Qk, n);
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const std::array<unsigned, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (divisible(n, Int(b))) return false;
  }
  static const Int kDeterministicBound("3317044064679887385961981");
  if (n < kDeterministicBound) {
    for (unsigned b : kBases)
      if (!strong_probable_prime(n, Int(b))) return false;
    return true;
  }
  if (!strong_probable_prime(n, Int(2))) return false;
  if (!strong_lucas_probable_prime(n)) return false;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x5eed);
  const Int span = n - 3;
  for (int round = 0; round < 40; ++round) {
    Int a = rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Brent rho

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic with lazy reduction. With n < R/16, R = 2^(64L), values are
// kept below 3n and never normalised: mul(a, b) < 2n whenever a*b < 16 n^2.
template <int L>
class Montgomery {
 public:
  using V = std::array<u64, L>;

  explicit Montgomery(const Int& n) : n_(to_limbs(n)), three_n_(to_limbs(3 * n)), nz_(n) {
    u64 inv = 1;
    for (int k = 0; k < 6; ++k) inv *= 2 - n_[0] * inv;
    ninv_ = ~inv + 1;
    one_ = to_limbs((Int(1) << (64 * L)) % n);
  }

  static V to_limbs(const Int& x) {
    V v{};
    std::size_t count = 0;
    mpz_export(v.data(), &count, -1, sizeof(u64), 0, 0, x.get_mpz_t());
    return v;
  }
  static Int from_limbs(const V& v) {
    Int x;
    mpz_import(x.get_mpz_t(), L, -1, sizeof(u64), 0, 0, v.data());
    return x;
  }

  V to_mont(const Int& x) const { return to_limbs((x << (64 * L)) % nz_); }
  const V& one() const { return one_; }

  V mul(const V& a, const V& b) const {
    u64 t[L + 2] = {};
#pragma GCC unroll 8
    for (int i = 0; i < L; ++i) {
      u128 c = 0;
#pragma GCC unroll 8
      for (int j = 0; j < L; ++j) {
        c += static_cast<u128>(a[j]) * b[i] + t[j];
        t[j] = static_cast<u64>(c);
        c >>= 64;
      }
      c += t[L];
      t[L] = static_cast<u64>(c);
      t[L + 1] = static_cast<u64>(c >> 64);
      const u64 m = t[0] * ninv_;
      c = static_cast<u128>(m) * n_[0] + t[0];
      c >>= 64;
#pragma GCC unroll 8
      for (int j = 1; j < L; ++j) {
        c += static_cast<u128>(m) * n_[j] + t[j];
        t[j - 1] = static_cast<u64>(c);
        c >>= 64;
      }
      c += t[L];
      t[L - 1] = static_cast<u64>(c);
      t[L] = t[L + 1] + static_cast<u64>(c >> 64);
    }
    V out;
#pragma GCC unroll 8
    for (int j = 0; j < L; ++j) out[j] = t[j];
    return out;
  }

  /// mul(a, a) with the cross products computed once.
  V sqr(const V& a) const {
    u64 t[2 * L + 1] = {};
#pragma GCC unroll 8
    for (int i = 0; i < L; ++i) {
      u128 c = 0;
#pragma GCC unroll 8
      for (int j = i + 1; j < L; ++j) {
        c += static_cast<u128>(a[i]) * a[j] + t[i + j];
        t[i + j] = static_cast<u64>(c);
        c >>= 64;
      }
      t[i + L] = static_cast<u64>(c);
    }
    u64 top = 0;
#pragma GCC unroll 16
    for (int k = 0; k < 2 * L; ++k) {
      const u64 next = t[k] >> 63;
      t[k] = (t[k] << 1) | top;
      top = next;
    }
    u128 c = 0;
#pragma GCC unroll 8
    for (int i = 0; i < L; ++i) {
      const u128 sq = static_cast<u128>(a[i]) * a[i];
      c += static_cast<u128>(t[2 * i]) + static_cast<u64>(sq);
      t[2 * i] = static_cast<u64>(c);
      c >>= 64;
      c += static_cast<u128>(t[2 * i + 1]) + static_cast<u64>(sq >> 64);
      t[2 * i + 1] = static_cast<u64>(c);
      c >>= 64;
    }
    return redc(t);
  }

  /// a + b without reduction (a < 2n, b < n).
  V add(const V& a, const V& b) const {
    V out;
    u64 carry = 0;
#pragma GCC unroll 8
    for (int j = 0; j < L; ++j) {
      u128 s = static_cast<u128>(a[j]) + b[j] + carry;
      out[j] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
    return out;
  }

  /// a + 3n - b, a representative of a - b in [0, 6n) for a, b < 3n.
  V diff(const V& a, const V& b) const {
    V out;
    u64 carry = 0;
    u64 borrow = 0;
#pragma GCC unroll 8
    for (int j = 0; j < L; ++j) {
      u128 s = static_cast<u128>(a[j]) + three_n_[j] + carry;
      carry = static_cast<u64>(s >> 64);
      u128 d = static_cast<u128>(static_cast<u64>(s)) - b[j] - borrow;
      out[j] = static_cast<u64>(d);
      borrow = static_cast<u64>(d >> 64) & 1;
    }
    return out;
  }

  Int gcd_with_n(const V& v) const { return gcd(from_limbs(v), nz_); }

 private:
  /// Montgomery reduction of a 2L-limb value below nR.
  V redc(u64* t) const {
    u64 carry_top = 0;
#pragma GCC unroll 8
    for (int i = 0; i < L; ++i) {
      const u64 m = t[i] * ninv_;
      u128 c = 0;
#pragma GCC unroll 8
      for (int j = 0; j < L; ++j) {
        c += static_cast<u128>(m) * n_[j] + t[i + j];
        t[i + j] = static_cast<u64>(c);
        c >>= 64;
      }
      c += static_cast<u128>(t[i + L]) + carry_top;
      t[i + L] = static_cast<u64>(c);
      carry_top = static_cast<u64>(c >> 64);
    }
    V out;
#pragma GCC unroll 8
    for (int j = 0; j < L; ++j) out[j] = t[L + j];
    return out;
  }

  V n_;
  V three_n_;
  Int nz_;
  u64 ninv_ = 0;
  V one_;
};

constexpr u64 kBatch = 256;

template <int L>
std::optional<Int> brent_fixed(const Int& n, u64& budget, u64 seed) {
  using M = Montgomery<L>;
  using V = typename M::V;
  const M mont(n);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  while (budget > 0) {
    const V c = mont.to_mont(Int(rng.get_z_range(n - 3) + 1));
    const V x0 = mont.to_mont(rng.get_z_range(n));
    auto step = [&](const V& x) { return mont.add(mont.sqr(x), c); };
    V y = x0, x = x0, ys = x0, q = mont.one();
    Int g = 1;
    u64 r = 1;
    while (g == 1) {
      if (budget < r) {
        budget = 0;
        return std::nullopt;
      }
      budget -= r;
      x = y;
      for (u64 k = 0; k < r; ++k) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        const u64 m = std::min(kBatch, r - k);
        if (budget < m) {
          budget = 0;
          return std::nullopt;
        }
        budget -= m;
        ys = y;
        for (u64 j = 0; j < m; ++j) {
          y = step(y);
          q = mont.mul(q, mont.diff(x, y));
        }
        g = mont.gcd_with_n(q);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = mont.gcd_with_n(mont.diff(x, ys));
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

std::optional<Int> brent_generic(const Int& n, u64& budget, u64 seed) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  while (budget > 0) {
    const Int c = rng.get_z_range(n - 3) + 1;
    auto step = [&](const Int& x) { return Int((x * x + c) % n); };
    Int y = rng.get_z_range(n), x, ys, q = 1, g = 1;
    u64 r = 1;
    while (g == 1) {
      if (budget < r) {
        budget = 0;
        return std::nullopt;
      }
      budget -= r;
      x = y;
      for (u64 k = 0; k < r; ++k) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        const u64 m = std::min(kBatch, r - k);
        if (budget < m) {
          budget = 0;
          return std::nullopt;
        }
        budget -= m;
        ys = y;
        for (u64 j = 0; j < m; ++j) {
          y = step(y);
          q = q * abs(Int(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(Int(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Int> rho_split(const Int& n, std::uint64_t& budget, std::uint64_t seed) {
  if (n < 4) return std::nullopt;
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  // Lazy reduction needs n < 2^(64L - 4).
  switch ((mpz_sizeinbase(n.get_mpz_t(), 2) + 4 + 63) / 64) {
    case 1: return brent_fixed<1>(n, budget, seed);
    case 2: return brent_fixed<2>(n, budget, seed);
    case 3: return brent_fixed<3>(n, budget, seed);
    case 4: return brent_fixed<4>(n, budget, seed);
    case 5: return brent_fixed<5>(n, budget, seed);
    case 6: return brent_fixed<6>(n, budget, seed);
    case 7: return brent_fixed<7>(n, budget, seed);
    case 8: return brent_fixed<8>(n, budget, seed);
    default: return brent_generic(n, budget, seed);
  }
}

// ---------------------------------------------------------------- factor

namespace {

struct Pending {
  Int value;
  unsigned long multiplicity;
  bool from_rho;
};

/// Writes m = root^e with e maximal; returns e (1 if m is not a perfect power).
unsigned long perfect_power(const Int& m, Int& root) {
  root = m;
  if (!mpz_perfect_power_p(m.get_mpz_t())) return 1;
  const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (unsigned long e = bits; e >= 2; --e) {
    Int rt;
    if (mpz_root(rt.get_mpz_t(), m.get_mpz_t(), e) != 0) {
      Int inner;
      unsigned long more = perfect_power(rt, inner);
      root = inner;
      return e * more;
    }
  }
  return 1;
}

}  // namespace

Factorization factor(const Int& n, std::uint64_t budget, const std::vector<Int>& hints) {
  if (n == 0) throw UsageError("cannot factor zero");
  Factorization out;
  out.n = n;
  std::map<Int, PrimePower> found;
  auto record = [&](const Int& p, unsigned long e, Provenance src) {
    auto [it, fresh] = found.try_emplace(p, PrimePower{p, 0, src});
    it->second.exponent += e;
    if (!fresh && it->second.source == Provenance::kHint) it->second.source = src;
  };

  Int m = abs(n);
  for (std::uint64_t p : trial_primes()) {
    if (m == 1) break;
    const Int pz(static_cast<unsigned long>(p));
    if (pz * pz > m) break;
    if (divisible(m, pz)) {
      unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
      record(pz, e, Provenance::kTrialDivision);
    }
  }
  const Int trial_square = Int(static_cast<unsigned long>(kTrialDivisionBound)) *
                           Int(static_cast<unsigned long>(kTrialDivisionBound));
  if (m > 1 && m < trial_square) {
    record(m, 1, Provenance::kTrialDivision);
    m = 1;
  }

  for (const Int& h0 : hints) {
    const Int h = abs(h0);
    if (h < 2) continue;
    if (!is_prime(h)) throw UsageError("factorisation hint is not prime: " + h.get_str());
    if (m == 1 || !divisible(m, h)) continue;
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), h.get_mpz_t());
    record(h, e, Provenance::kHint);
  }

  std::vector<Pending> queue;
  if (m > 1) queue.push_back({m, 1, false});
  std::uint64_t seed = 1;
  while (!queue.empty()) {
    Pending item = queue.back();
    queue.pop_back();
    if (item.value == 1) continue;
    if (is_prime(item.value)) {
      record(item.value, item.multiplicity, item.from_rho ? Provenance::kRho : Provenance::kPrimeTest);
      continue;
    }
    Int root;
    unsigned long e = perfect_power(item.value, root);
    if (e > 1) {
      queue.push_back({root, item.multiplicity * e, item.from_rho});
      continue;
    }
    auto d = rho_split(item.value, budget, seed++);
    if (!d) {
      out.cofactor *= pow_int(item.value, item.multiplicity);
      continue;
    }
    queue.push_back({*d, item.multiplicity, true});
    queue.push_back({divexact(item.value, *d), item.multiplicity, false});
  }

  for (auto& [p, pp] : found) out.factors.push_back(pp);
  return out;
}

}  // namespace supercert
