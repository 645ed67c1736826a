#include "supercert/cyclotomic.hpp"

#include <cctype>

namespace supercert {

bool is_supported_order(unsigned r) {
  return r >= 3 && r <= kMaxCyclotomicOrder && is_small_prime(r);
}

void require_supported_order(unsigned r) {
  if (r > kMaxCyclotomicOrder) {
    throw UnsupportedError("cyclotomic order " + std::to_string(r) + " exceeds the supported bound " +
                           std::to_string(kMaxCyclotomicOrder));
  }
  if (r < 3 || !is_small_prime(r)) {
    throw UsageError("cyclotomic order must be an odd prime, got " + std::to_string(r));
  }
}

CycFrac to_fraction(const CycElt& a) {
  CycFrac out(a.r());
  std::vector<Rat> c(a.coeffs().begin(), a.coeffs().end());
  return CycFrac::from_coeffs(a.r(), c);
}

CycElt to_integral(const CycFrac& a) {
  std::vector<Int> c;
  c.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) {
    if (x.get_den() != 1) throw NonIntegralError("element has a non-integral coefficient");
    c.push_back(x.get_num());
  }
  return CycElt::from_coeffs(a.r(), c);
}

CycFrac inverse(const CycElt& a) { return inverse(to_fraction(a)); }

CycFrac inverse(const CycFrac& a) {
  if (a.is_zero()) throw DegenerateInputError("inverse of zero");
  CycFrac cof = norm_cofactor(a);
  Rat n = (a * cof)[0];
  return cof * Rat(1 / n);
}

ExactDivisor::ExactDivisor(const CycElt& b) {
  if (b.is_zero()) throw DegenerateInputError("division by zero");
  cofactor_ = norm_cofactor(b);
  norm_ = (b * cofactor_)[0];
}

std::optional<CycElt> ExactDivisor::try_divide(const CycElt& a) const {
  CycElt num = a * cofactor_;
  std::vector<Int> q(num.coeffs().size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!divisible(num[k], norm_)) return std::nullopt;
    q[k] = divexact(num[k], norm_);
  }
  return CycElt::from_coeffs(a.r(), q);
}

CycElt ExactDivisor::divide(const CycElt& a) const {
  auto q = try_divide(a);
  if (!q) throw DegenerateInputError("inexact division in Z[zeta]");
  return *q;
}

std::optional<CycElt> exact_quotient(const CycElt& a, const CycElt& b) {
  return ExactDivisor(b).try_divide(a);
}

CycElt divide_by_pi(const CycElt& a) {
  const unsigned r = a.r();
  if (!divisible(a.at_one(), Int(r))) throw DegenerateInputError("element not divisible by pi");
  // 1/(1 - zeta) = -(1/r) * sum_{k=1}^{r-1} k zeta^k.
  std::vector<Int> s(r);
  for (unsigned k = 1; k < r; ++k) s[k] = k;
  CycElt prod = a * CycElt::from_coeffs(r, s);
  std::vector<Int> q(r - 1);
  for (unsigned k = 0; k + 1 < r; ++k) q[k] = -divexact(prod[k], Int(r));
  return CycElt::from_coeffs(r, q);
}

long pi_valuation(const CycElt& a) {
  if (a.is_zero()) return kInfiniteValuation;
  const unsigned r = a.r();
  Int content = 0;
  for (const auto& x : a.coeffs()) content = gcd(content, x);
  unsigned long vr = int_valuation(content, Int(r));
  long v = static_cast<long>(vr) * static_cast<long>(r - 1);
  CycElt b = a;
  if (vr > 0) {
    Int scale = pow_int(Int(r), vr);
    std::vector<Int> c(b.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = divexact(b[k], scale);
    b = CycElt::from_coeffs(r, c);
  }
  // The primitive part has valuation < r - 1, so at most r - 2 further steps.
  while (divisible(b.at_one(), Int(r))) {
    b = divide_by_pi(b);
    ++v;
  }
  return v;
}

CycElt pi_power(unsigned r, unsigned long k) {
  CycElt out(r, Int(1));
  CycElt base = CycElt::pi(r);
  while (k != 0) {
    if (k & 1UL) out = out * base;
    base = base * base;
    k >>= 1U;
  }
  return out;
}

std::string to_string(const CycElt& a) {
  std::string s = "[";
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (k != 0) s += ", ";
    s += a[k].get_str(10);
  }
  s += "]";
  return s;
}

CycElt parse_cyc(unsigned r, std::string_view text) {
  std::string s(text);
  std::size_t open = s.find('[');
  std::size_t close = s.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw UsageError("cyclotomic element must be written as [c0, c1, ...]: '" + s + "'");
  }
  std::vector<Int> coeffs;
  std::string body = s.substr(open + 1, close - open - 1);
  std::size_t pos = 0;
  bool any = false;
  for (char ch : body) {
    if (!std::isspace(static_cast<unsigned char>(ch))) any = true;
  }
  if (any) {
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      coeffs.push_back(parse_int(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return CycElt::from_coeffs(r, coeffs);
}

SplitData splitting_data(unsigned r, const Int& ell) {
  require_supported_order(r);
  if (divisible(ell, Int(r))) {
    throw UsageError("splitting data is defined for primes other than r; the place above r is ramified");
  }
  SplitData out;
  out.r = r;
  out.ell = ell;
  Int red = mod_floor(ell, Int(r));
  out.i = static_cast<unsigned>(multiplicative_order(red.get_ui(), r));
  out.places = (r - 1) / out.i;
  if (out.i % 2 == 1) {
    out.t_pairs = (r - 1) / (2 * out.i);
  } else {
    out.t = (r - 1) / out.i;
  }
  return out;
}

}  // namespace supercert
