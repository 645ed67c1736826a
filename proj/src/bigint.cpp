#include "supercert/bigint.hpp"

#include "supercert/errors.hpp"

namespace supercert {

Int parse_int(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s = s.substr(start);
  if (s.empty()) throw UsageError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw UsageError("malformed integer literal '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw UsageError("malformed integer literal '" + s + "'");
  }
  if (s[0] == '+') s = s.substr(1);
  return Int(s, 10);
}

unsigned long int_valuation(const Int& n, const Int& p) {
  if (n == 0) throw UsageError("valuation of zero is undefined");
  if (p < 2) throw UsageError("valuation base must be a prime");
  Int m = abs(n);
  unsigned long v = 0;
  while (divisible(m, p)) {
    m = divexact(m, p);
    ++v;
  }
  return v;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1U) result = mulmod_u64(result, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1U;
  }
  return result;
}

std::vector<std::uint64_t> small_prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw UsageError("order modulus must be >= 2");
  a %= m;
  if (gcd_u64(a, m) != 1) throw UsageError("order of a non-unit is undefined");
  // Carmichael-free approach: order divides phi(m); factor phi(m) and strip.
  std::uint64_t phi = m;
  for (std::uint64_t p : small_prime_divisors(m)) phi = phi / p * (p - 1);
  std::uint64_t order = phi;
  for (std::uint64_t q : small_prime_divisors(phi)) {
    while (order % q == 0 && powmod_u64(a, order / q, m) == 1) order /= q;
  }
  return order;
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace supercert
