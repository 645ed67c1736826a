#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "supercert/bigint.hpp"
#include "supercert/errors.hpp"

namespace supercert {

/// F_p for an arbitrary (possibly huge) prime p; elements are canonical residues.
class PrimeField {
 public:
  using Elem = Int;

  explicit PrimeField(Int p) : p_(std::move(p)) {}

  const Int& characteristic() const { return p_; }
  Int size() const { return p_; }
  unsigned degree() const { return 1; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(const Int& n) const { return mod_floor(n, p_); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= p_) s -= p_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (s < 0) s += p_;
    return s;
  }
  Elem neg(const Elem& a) const { return a == 0 ? a : Elem(p_ - a); }
  Elem mul(const Elem& a, const Elem& b) const { return mod_floor(a * b, p_); }
  Elem inv(const Elem& a) const {
    if (a == 0) throw DegenerateInputError("inverse of zero in a prime field");
    return invmod(a, p_);
  }
  Elem random(gmp_randclass& rng) const { return rng.get_z_range(p_); }

 private:
  Int p_;
};

/// Dense univariate polynomial over a field type F, ascending coefficients, no trailing zeros.
template <typename F>
struct FieldPoly {
  using Elem = typename F::Elem;
  std::vector<Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

template <typename F>
void trim(const F& field, FieldPoly<F>& a) {
  while (!a.c.empty() && field.is_zero(a.c.back())) a.c.pop_back();
}

template <typename F>
FieldPoly<F> make_poly(const F& field, std::vector<typename F::Elem> coeffs) {
  FieldPoly<F> out{std::move(coeffs)};
  trim(field, out);
  return out;
}

template <typename F>
FieldPoly<F> constant_poly(const F& field, const typename F::Elem& a) {
  return make_poly(field, {a});
}

/// x^k
template <typename F>
FieldPoly<F> monomial(const F& field, std::size_t k) {
  std::vector<typename F::Elem> c(k + 1, field.zero());
  c[k] = field.one();
  return FieldPoly<F>{std::move(c)};
}

template <typename F>
bool poly_equal(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    if (!field.equal(a.c[k], b.c[k])) return false;
  }
  return true;
}

template <typename F>
FieldPoly<F> poly_add(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  FieldPoly<F> out;
  out.c.resize(std::max(a.c.size(), b.c.size()), field.zero());
  for (std::size_t k = 0; k < a.c.size(); ++k) out.c[k] = a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) out.c[k] = field.add(out.c[k], b.c[k]);
  trim(field, out);
  return out;
}

template <typename F>
FieldPoly<F> poly_sub(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  FieldPoly<F> out;
  out.c.resize(std::max(a.c.size(), b.c.size()), field.zero());
  for (std::size_t k = 0; k < a.c.size(); ++k) out.c[k] = a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) out.c[k] = field.sub(out.c[k], b.c[k]);
  trim(field, out);
  return out;
}

template <typename F>
FieldPoly<F> poly_mul(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FieldPoly<F> out;
  out.c.assign(a.c.size() + b.c.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (field.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      out.c[i + j] = field.add(out.c[i + j], field.mul(a.c[i], b.c[j]));
    }
  }
  trim(field, out);
  return out;
}

template <typename F>
FieldPoly<F> poly_scale(const F& field, const FieldPoly<F>& a, const typename F::Elem& s) {
  FieldPoly<F> out = a;
  for (auto& x : out.c) x = field.mul(x, s);
  trim(field, out);
  return out;
}

/// Quotient and remainder; b must be non-zero.
template <typename F>
std::pair<FieldPoly<F>, FieldPoly<F>> poly_divmod(const F& field, const FieldPoly<F>& a,
                                                  const FieldPoly<F>& b) {
  if (b.is_zero()) throw DegenerateInputError("polynomial division by zero");
  FieldPoly<F> rem = a;
  FieldPoly<F> quo;
  const int db = b.degree();
  if (rem.degree() < db) return {quo, rem};
  quo.c.assign(rem.c.size() - b.c.size() + 1, field.zero());
  const auto lead_inv = field.inv(b.c.back());
  for (int k = rem.degree(); k >= db; --k) {
    const auto coef = field.mul(rem.c[k], lead_inv);
    if (field.is_zero(coef)) continue;
    quo.c[k - db] = coef;
    for (int j = 0; j <= db; ++j) {
      rem.c[k - db + j] = field.sub(rem.c[k - db + j], field.mul(coef, b.c[j]));
    }
  }
  trim(field, rem);
  trim(field, quo);
  return {quo, rem};
}

template <typename F>
FieldPoly<F> poly_mod(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  return poly_divmod(field, a, b).second;
}

template <typename F>
FieldPoly<F> make_monic(const F& field, const FieldPoly<F>& a) {
  if (a.is_zero()) return a;
  return poly_scale(field, a, field.inv(a.c.back()));
}

/// Monic gcd (zero if both inputs are zero).
template <typename F>
FieldPoly<F> poly_gcd(const F& field, FieldPoly<F> a, FieldPoly<F> b) {
  while (!b.is_zero()) {
    FieldPoly<F> t = poly_mod(field, a, b);
    a = std::move(b);
    b = std::move(t);
  }
  return make_monic(field, a);
}

/// Extended Euclid: returns (g, s, t) with s a + t b = g monic.
template <typename F>
struct PolyBezout {
  FieldPoly<F> g, s, t;
};

template <typename F>
PolyBezout<F> poly_xgcd(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  FieldPoly<F> r0 = a, r1 = b;
  FieldPoly<F> s0 = constant_poly(field, field.one()), s1;
  FieldPoly<F> t0, t1 = constant_poly(field, field.one());
  while (!r1.is_zero()) {
    auto [q, rem] = poly_divmod(field, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    FieldPoly<F> s2 = poly_sub(field, s0, poly_mul(field, q, s1));
    FieldPoly<F> t2 = poly_sub(field, t0, poly_mul(field, q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const auto inv = field.inv(r0.c.back());
  return {poly_scale(field, r0, inv), poly_scale(field, s0, inv), poly_scale(field, t0, inv)};
}

template <typename F>
FieldPoly<F> poly_derivative(const F& field, const FieldPoly<F>& a) {
  FieldPoly<F> out;
  if (a.c.size() <= 1) return out;
  out.c.resize(a.c.size() - 1, field.zero());
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    out.c[k - 1] = field.mul(field.from_int(Int(static_cast<unsigned long>(k))), a.c[k]);
  }
  trim(field, out);
  return out;
}

template <typename F>
typename F::Elem poly_eval(const F& field, const FieldPoly<F>& a, const typename F::Elem& x) {
  auto acc = field.zero();
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

/// base^e mod m for e >= 0.
template <typename F>
FieldPoly<F> poly_powmod(const F& field, FieldPoly<F> base, Int e, const FieldPoly<F>& m) {
  FieldPoly<F> result = poly_mod(field, constant_poly(field, field.one()), m);
  base = poly_mod(field, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    result = poly_mod(field, poly_mul(field, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), k)) result = poly_mod(field, poly_mul(field, result, base), m);
  }
  return result;
}

/// Splits h, a monic product of distinct irreducible factors all of degree k, into those
/// factors (sorted by coefficient list). Deterministic for a fixed seed.
template <typename F>
std::vector<FieldPoly<F>> equal_degree_factor(const F& field, const FieldPoly<F>& h, unsigned k,
                                              unsigned long seed = 0x5eedULL);

/// Distinct roots of a in F, sorted.
template <typename F>
std::vector<typename F::Elem> poly_roots(const F& field, const FieldPoly<F>& a);

namespace detail {

template <typename F>
bool elem_less(const F& field, const typename F::Elem& a, const typename F::Elem& b);

template <>
inline bool elem_less<PrimeField>(const PrimeField&, const Int& a, const Int& b) {
  return a < b;
}

template <typename F>
bool poly_less(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& b) {
  // Lexicographic on ascending coefficient lists, shorter first on ties.
  const std::size_t n = std::min(a.c.size(), b.c.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (elem_less(field, a.c[k], b.c[k])) return true;
    if (elem_less(field, b.c[k], a.c[k])) return false;
  }
  return a.c.size() < b.c.size();
}

template <typename F>
FieldPoly<F> random_poly(const F& field, std::size_t len, gmp_randclass& rng) {
  std::vector<typename F::Elem> c;
  c.reserve(len);
  for (std::size_t k = 0; k < len; ++k) c.push_back(field.random(rng));
  return make_poly(field, std::move(c));
}

/// Candidate splitting polynomial for equal-degree factorisation.
template <typename F>
FieldPoly<F> splitter(const F& field, const FieldPoly<F>& a, const FieldPoly<F>& h, unsigned k) {
  const Int q = field.size();
  Int qk = pow_int(q, k);
  if (field.characteristic() != 2) {
    Int e = (qk - 1) / 2;
    return poly_sub(field, poly_powmod(field, a, e, h), constant_poly(field, field.one()));
  }
  // Characteristic two: absolute trace a + a^2 + ... + a^(2^(m-1)), q^k = 2^m.
  const std::size_t m = mpz_sizeinbase(qk.get_mpz_t(), 2) - 1;
  FieldPoly<F> term = poly_mod(field, a, h);
  FieldPoly<F> acc = term;
  for (std::size_t j = 1; j < m; ++j) {
    term = poly_mod(field, poly_mul(field, term, term), h);
    acc = poly_add(field, acc, term);
  }
  return acc;
}

}  // namespace detail

template <typename F>
std::vector<FieldPoly<F>> equal_degree_factor(const F& field, const FieldPoly<F>& h, unsigned k,
                                              unsigned long seed) {
  std::vector<FieldPoly<F>> done;
  if (h.degree() <= 0) return done;
  if (k == 0 || h.degree() % static_cast<int>(k) != 0) {
    throw UsageError("equal-degree factorisation: degree is not a multiple of the factor degree");
  }
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  std::vector<FieldPoly<F>> pending{make_monic(field, h)};
  while (!pending.empty()) {
    FieldPoly<F> cur = std::move(pending.back());
    pending.pop_back();
    if (cur.degree() == static_cast<int>(k)) {
      done.push_back(std::move(cur));
      continue;
    }
    for (;;) {
      FieldPoly<F> a = detail::random_poly(field, static_cast<std::size_t>(cur.degree()), rng);
      if (a.degree() < 1) continue;
      FieldPoly<F> g = poly_gcd(field, cur, detail::splitter(field, a, cur, k));
      if (g.degree() > 0 && g.degree() < cur.degree()) {
        pending.push_back(poly_divmod(field, cur, g).first);
        pending.push_back(make_monic(field, g));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end(),
            [&](const auto& a, const auto& b) { return detail::poly_less(field, a, b); });
  return done;
}

template <typename F>
std::vector<typename F::Elem> poly_roots(const F& field, const FieldPoly<F>& a) {
  std::vector<typename F::Elem> roots;
  if (a.degree() < 1) return roots;
  FieldPoly<F> m = make_monic(field, a);
  FieldPoly<F> x = monomial(field, 1);
  FieldPoly<F> xq = poly_powmod(field, x, field.size(), m);
  FieldPoly<F> lin = poly_gcd(field, m, poly_sub(field, xq, x));
  for (const auto& fac : equal_degree_factor(field, lin, 1)) {
    // fac = x + c0, root -c0.
    roots.push_back(field.neg(fac.c[0]));
  }
  std::sort(roots.begin(), roots.end(),
            [&](const auto& u, const auto& v) { return detail::elem_less(field, u, v); });
  return roots;
}

/// True if the monic polynomial a of degree n is irreducible over F (Rabin's test).
template <typename F>
bool is_irreducible(const F& field, const FieldPoly<F>& a) {
  const int n = a.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  FieldPoly<F> m = make_monic(field, a);
  FieldPoly<F> x = monomial(field, 1);
  const Int q = field.size();
  auto frob_power = [&](unsigned k) { return poly_powmod(field, x, pow_int(q, k), m); };
  if (!poly_equal(field, frob_power(static_cast<unsigned>(n)), poly_mod(field, x, m))) return false;
  for (std::uint64_t prime : small_prime_divisors(static_cast<std::uint64_t>(n))) {
    FieldPoly<F> t = poly_sub(field, frob_power(static_cast<unsigned>(n / prime)), x);
    if (poly_gcd(field, m, t).degree() != 0) return false;
  }
  return true;
}

/// F_p[y]/(g) for a monic irreducible g over F_p; elements are coefficient vectors of length deg g.
class ExtField {
 public:
  using Elem = std::vector<Int>;

  ExtField(PrimeField base, FieldPoly<PrimeField> modulus);

  const PrimeField& base() const { return base_; }
  const FieldPoly<PrimeField>& modulus() const { return modulus_; }
  const Int& characteristic() const { return base_.characteristic(); }
  Int size() const { return pow_int(base_.characteristic(), degree()); }
  unsigned degree() const { return static_cast<unsigned>(modulus_.degree()); }

  Elem zero() const { return Elem(degree(), Int(0)); }
  Elem one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
  }
  Elem from_int(const Int& n) const {
    Elem e = zero();
    e[0] = base_.from_int(n);
    return e;
  }
  /// Element represented by the residue of a polynomial over F_p.
  Elem from_poly(const FieldPoly<PrimeField>& a) const;
  FieldPoly<PrimeField> to_poly(const Elem& a) const { return make_poly(base_, a); }
  /// The class of y.
  Elem generator() const;

  bool is_zero(const Elem& a) const {
    for (const auto& x : a) {
      if (x != 0) return false;
    }
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, const Int& e) const;
  Elem random(gmp_randclass& rng) const;

 private:
  PrimeField base_;
  FieldPoly<PrimeField> modulus_;
};

namespace detail {
template <>
inline bool elem_less<ExtField>(const ExtField&, const std::vector<Int>& a, const std::vector<Int>& b) {
  return a < b;
}
}  // namespace detail

/// Lexicographically least monic irreducible polynomial of degree k over F_p
/// (coefficients compared from the constant term upward).
FieldPoly<PrimeField> least_irreducible(const PrimeField& field, unsigned k);

std::string poly_to_string(const FieldPoly<PrimeField>& a);
std::string poly_to_string(const ExtField& field, const FieldPoly<ExtField>& a);

}  // namespace supercert
