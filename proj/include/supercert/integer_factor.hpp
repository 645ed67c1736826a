#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supercert/bigint.hpp"

namespace supercert {

/// How a prime factor was obtained.
enum class Provenance {
  kTrialDivision,
  kHint,         ///< divided out by a caller-supplied prime
  kRho,          ///< split off by Brent rho
  kPrimeTest,    ///< a leftover cofactor that passed the primality test
};

std::string to_string(Provenance p);

/// Blind factorisation routes (everything except hints).
inline bool is_blind(Provenance p) { return p != Provenance::kHint; }

struct PrimePower {
  Int prime;
  unsigned long exponent = 0;
  Provenance source = Provenance::kTrialDivision;
};

/// |n| = cofactor * prod prime^exponent. Factors are sorted by prime.
struct Factorization {
  Int n;
  std::vector<PrimePower> factors;
  Int cofactor = 1;  ///< 1, or a composite left unresolved within budget

  bool complete() const { return cofactor == 1; }
  std::vector<Int> primes() const;
  /// Exponent of p, 0 if absent.
  unsigned long exponent_of(const Int& p) const;
};

inline constexpr std::uint64_t kDefaultRhoBudget = 5'000'000'000ULL;
inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000;

/// Deterministic Miller-Rabin below 3.3e24; above, 40 random-base rounds plus a strong Lucas test.
bool is_prime(const Int& n);

/// One strong probable-prime round to base a (n odd, n > 3).
bool strong_probable_prime(const Int& n, const Int& a);
/// Strong Lucas probable-prime test with Selfridge's parameters (n odd, not a square).
bool strong_lucas_probable_prime(const Int& n);

/// Trial division, hint division, then Brent rho within `budget` rho iterations.
Factorization factor(const Int& n, std::uint64_t budget = kDefaultRhoBudget,
                     const std::vector<Int>& hints = {});

/// Exponent of the prime p in n. Throws UsageError for n = 0.
unsigned long p_valuation(const Int& n, const Int& p);

/// A non-trivial divisor of the odd composite n, or nullopt when the budget runs out.
/// The budget is decremented by the iterations used.
std::optional<Int> rho_split(const Int& n, std::uint64_t& budget, std::uint64_t seed = 1);

}  // namespace supercert
