#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace supercert {

using Int = mpz_class;

/// Non-negative residue of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Int powmod(const Int& base, const Int& e, const Int& m) {
  Int out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return out;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool divisible(const Int& a, const Int& b) {
  return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

/// Exact quotient; caller guarantees b | a.
inline Int divexact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Inverse of a modulo m; caller guarantees gcd(a, m) = 1.
inline Int invmod(const Int& a, const Int& m) {
  Int out;
  mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return out;
}

inline std::string to_string(const Int& a) { return a.get_str(10); }

/// Parses a base-10 integer with optional sign; throws UsageError on junk.
Int parse_int(std::string_view text);

inline std::size_t decimal_digits(const Int& a) {
  Int b = abs(a);
  return b.get_str(10).size();
}

/// Exponent of p in n; n must be non-zero.
unsigned long int_valuation(const Int& n, const Int& p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1 and m >= 2.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Distinct prime divisors of a machine-sized n by trial division.
std::vector<std::uint64_t> small_prime_divisors(std::uint64_t n);

bool is_small_prime(std::uint64_t n);

/// All primes <= bound (sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace supercert
