#include "supercert/endo_character.hpp"

#include <algorithm>
#include <numeric>

#include "supercert/errors.hpp"

namespace supercert {

long m_exponent(unsigned r, long d, long j) {
  if (j < 1 || j >= static_cast<long>(r)) throw UsageError("j must lie in [1, r - 1]");
  const long num = (static_cast<long>(r) - j) * d;
  const long q = num / static_cast<long>(r);
  return num % static_cast<long>(r) == 0 ? q - 1 : q;
}

std::vector<long> m_exponents(unsigned r, long d) {
  std::vector<long> out;
  for (long j = 1; j < static_cast<long>(r); ++j) out.push_back(m_exponent(r, d, j));
  return out;
}

namespace {

unsigned order_mod_r(const Int& ell, unsigned r) {
  const long e = mod_floor(ell, Int(r)).get_si();
  if (e == 0) throw UsageError("ell must differ from r");
  long x = e;
  unsigned k = 1;
  while (x != 1) {
    x = x * e % static_cast<long>(r);
    ++k;
  }
  return k;
}

void require_2r_divides(unsigned r, long d) {
  if (d <= 0 || d % (2 * static_cast<long>(r)) != 0) throw UsageError("2r must divide d");
}

}  // namespace

std::vector<InertiaTerm> inertia_terms(unsigned r, long d, const Int& ell, long j0) {
  if (j0 < 1 || j0 >= static_cast<long>(r)) throw UsageError("j0 must lie in [1, r - 1]");
  const unsigned i = order_mod_r(ell, r);
  const long e = mod_floor(ell, Int(r)).get_si();
  std::vector<InertiaTerm> out;
  long j = j0;
  for (unsigned k = 0; k < i; ++k) {
    out.push_back({k, j, m_exponent(r, d, j)});
    j = j * e % static_cast<long>(r);
  }
  return out;
}

Int inertia_exponent(unsigned r, long d, const Int& ell, long j0) {
  const auto terms = inertia_terms(r, d, ell, j0);
  const Int modulus = pow_int(ell, terms.size()) - 1;
  Int acc = 0;
  for (const auto& t : terms) acc += pow_int(ell, t.power) * t.m;
  return mod_floor(acc, modulus);
}

DetSubgroup det_subgroup_r3(const Int& ell, long g) {
  if (ell <= 3) throw UsageError("ell must be a prime greater than 3");
  DetSubgroup out;
  const bool split = mod_floor(ell, Int(3)) == 1;
  out.context = split ? DetContext::kSplit : DetContext::kNonsplit;
  out.group_order = split ? Int(ell - 1) : Int(ell + 1);
  const Int u = (g + 2) / 3;
  out.generator_exponent = gcd(u, divexact(out.group_order, Int(6)));
  return out;
}

bool gl_surjectivity_gcd(unsigned r, long d) {
  require_2r_divides(r, d);
  const long lo = m_exponent(r, d, (static_cast<long>(r) - 1) / 2);
  const long hi = m_exponent(r, d, (static_cast<long>(r) + 1) / 2);
  return std::gcd(lo, hi) == 1;
}

bool Congruence::contains(const Int& ell) const {
  return std::binary_search(residues.begin(), residues.end(), mod_floor(ell, modulus));
}

std::string Congruence::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < residues.size(); ++k) out += (k ? ", " : "") + supercert::to_string(residues[k]);
  return out + " (mod " + supercert::to_string(modulus) + ")";
}

bool du_condition(unsigned r, long d, const Int& ell, long delta) {
  const Int s = ell + 1;
  if (delta <= 0 || !divisible(s, Int(delta))) return false;
  const Int quotient = divexact(s, Int(delta));
  return gcd(Int(d / static_cast<long>(r)), quotient) == 1 && gcd(Int(delta), quotient) == 1;
}

bool du_condition_any_delta(unsigned r, long d, const Int& ell) {
  const long two_r = 2 * static_cast<long>(r);
  for (long delta = 1; delta <= two_r; ++delta)
    if (two_r % delta == 0 && du_condition(r, d, ell, delta)) return true;
  return false;
}

namespace {

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

long ipow(long b, unsigned e) {
  long out = 1;
  while (e--) out *= b;
  return out;
}

/// Residues x mod p^(k+1) with v_p(x + 1) = k exactly.
Congruence exact_valuation_class(long p, unsigned k) {
  const long mod = ipow(p, k + 1), step = ipow(p, k);
  Congruence c{Int(mod), {}};
  for (long x = 0; x < mod; ++x) {
    const long s = (x + 1) % mod;
    if (s % step == 0 && s != 0) c.residues.push_back(Int(x));
  }
  return c;
}

Congruence crt_combine(const std::vector<Congruence>& parts) {
  Congruence acc{Int(1), {Int(0)}};
  for (const auto& c : parts) {
    Congruence next{acc.modulus * c.modulus, {}};
    const Int inv_a = invmod(acc.modulus, c.modulus);
    for (const auto& a : acc.residues)
      for (const auto& b : c.residues) {
        // x = a (mod M), x = b (mod m)
        const Int t = mod_floor((b - a) * inv_a, c.modulus);
        next.residues.push_back(a + acc.modulus * t);
      }
    std::sort(next.residues.begin(), next.residues.end());
    acc = std::move(next);
  }
  return acc;
}

std::string clause(const Congruence& c, long p) {
  const std::string mod = to_string(c.modulus);
  if (c.residues.size() == 1) return "ell = " + to_string(c.residues[0]) + " (mod " + mod + ")";
  const Int modulus = c.modulus;
  if (modulus == p) return "ell != " + std::to_string(p - 1) + " (mod " + mod + ")";
  const Int lower = divexact(modulus, Int(p));
  return "ell = " + to_string(lower - 1) + " (mod " + to_string(lower) + "), ell != " + to_string(modulus - 1) +
         " (mod " + mod + ")";
}

}  // namespace

DuClasses du_congruence_classes(unsigned r, long d) {
  require_2r_divides(r, d);
  DuClasses out;
  out.r = r;
  out.d = d;
  const long two_r = 2 * static_cast<long>(r);
  std::vector<long> primes = prime_divisors(two_r * (d / static_cast<long>(r)));
  for (long p : primes) {
    const unsigned k = two_r % p == 0 ? 1 : 0;
    out.components.push_back(exact_valuation_class(p, k));
  }
  out.combined = crt_combine(out.components);
  return out;
}

std::string DuClasses::describe() const {
  std::vector<Congruence> base, rest;
  std::vector<long> rest_primes;
  for (const auto& c : components) {
    const long m = c.modulus.get_si();
    if (m == 4 || m == static_cast<long>(r) * static_cast<long>(r)) {
      base.push_back(c);
    } else {
      rest.push_back(c);
      rest_primes.push_back(m);
    }
  }
  std::string out;
  const Congruence b = crt_combine(base);
  if (b.residues.size() <= 4) {
    out = b.to_string();
  } else {
    for (const auto& c : base) {
      const long m = c.modulus.get_si();
      out += (out.empty() ? "" : "; ") + clause(c, m == 4 ? 2 : static_cast<long>(r));
    }
  }
  for (std::size_t k = 0; k < rest.size(); ++k) out += "; " + clause(rest[k], rest_primes[k]);
  return out;
}

std::string to_string(ImageFamily family) {
  switch (family) {
    case ImageFamily::kGL: return "GL";
    case ImageFamily::kGU: return "GU";
    case ImageFamily::kDU: return "DU";
    case ImageFamily::kGLdet: return "GLdet";
    case ImageFamily::kGUdet: return "GUdet";
  }
  return "?";
}

std::vector<ImageDescriptor> image_descriptors(unsigned r, long d) {
  require_2r_divides(r, d);
  const long n = d - 2;
  const long rr = static_cast<long>(r);
  const Congruence split{Int(rr), {Int(1)}};
  const Congruence minus_one{Int(rr), {Int(rr - 1)}};
  std::vector<ImageDescriptor> out;

  ImageDescriptor gl;
  gl.family = ImageFamily::kGL;
  gl.representation = "rho_lambda";
  gl.n = n;
  gl.field = "ell";
  gl.conditions = {split};
  gl.conditions_text = split.to_string();
  out.push_back(gl);

  const DuClasses du = du_congruence_classes(r, d);
  ImageDescriptor dU;
  dU.family = ImageFamily::kDU;
  dU.representation = "rho_lambda";
  dU.n = n;
  dU.field = "ell";
  dU.conditions = du.components;
  dU.conditions_text = du.describe();
  out.push_back(dU);

  if (r == 3) {
    const long g = d - 2;
    const long u = (g + 2) / 3;
    ImageDescriptor a;
    a.family = ImageFamily::kGLdet;
    a.representation = "rho_ell";
    a.n = n;
    a.field = "ell";
    a.det_exponents = std::make_pair(u, 6L);
    a.extension = "semidirect <chi_ell>";
    a.conditions = {split};
    a.conditions_text = split.to_string();
    out.push_back(a);
    ImageDescriptor b = a;
    b.family = ImageFamily::kGUdet;
    b.extension = "extension by <chi_ell>";
    b.conditions = {minus_one};
    b.conditions_text = minus_one.to_string();
    out.push_back(b);
  }
  return out;
}

}  // namespace supercert
