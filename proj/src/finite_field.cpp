#include "supercert/finite_field.hpp"

namespace supercert {

ExtField::ExtField(PrimeField base, FieldPoly<PrimeField> modulus)
    : base_(std::move(base)), modulus_(make_monic(base_, modulus)) {
  if (modulus_.degree() < 1) throw UsageError("extension modulus must have positive degree");
}

ExtField::Elem ExtField::from_poly(const FieldPoly<PrimeField>& a) const {
  FieldPoly<PrimeField> red = poly_mod(base_, a, modulus_);
  Elem e = zero();
  for (std::size_t k = 0; k < red.c.size(); ++k) e[k] = red.c[k];
  return e;
}

ExtField::Elem ExtField::generator() const {
  return from_poly(monomial(base_, 1));
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = base_.add(a[k], b[k]);
  return out;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = base_.sub(a[k], b[k]);
  return out;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
  Elem out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = base_.neg(a[k]);
  return out;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  return from_poly(poly_mul(base_, to_poly(a), to_poly(b)));
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw DegenerateInputError("inverse of zero in an extension field");
  auto bz = poly_xgcd(base_, to_poly(a), modulus_);
  if (bz.g.degree() != 0) throw DegenerateInputError("extension modulus is not irreducible");
  return from_poly(bz.s);
}

ExtField::Elem ExtField::pow(const Elem& a, const Int& e) const {
  Elem result = one();
  Elem base = a;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), k)) result = mul(result, base);
  }
  return result;
}

ExtField::Elem ExtField::random(gmp_randclass& rng) const {
  Elem e = zero();
  for (auto& x : e) x = base_.random(rng);
  return e;
}

FieldPoly<PrimeField> least_irreducible(const PrimeField& field, unsigned k) {
  if (k == 0) throw UsageError("irreducible polynomial degree must be positive");
  if (k == 1) return make_poly(field, {Int(0), Int(1)});
  const Int& p = field.characteristic();
  std::vector<Int> c(k + 1, Int(0));
  c[k] = 1;
  // Odometer with c[0] most significant and c[k-1] least significant.
  for (;;) {
    FieldPoly<PrimeField> cand = make_poly(field, c);
    if (c[0] != 0 && is_irreducible(field, cand)) return cand;
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0) {
      c[pos] += 1;
      if (c[pos] < p) break;
      c[pos] = 0;
      --pos;
    }
    if (pos < 0) throw DegenerateInputError("no irreducible polynomial found");
  }
}

std::string poly_to_string(const FieldPoly<PrimeField>& a) {
  std::string s = "[";
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    if (k != 0) s += ", ";
    s += a.c[k].get_str(10);
  }
  return s + "]";
}

std::string poly_to_string(const ExtField& field, const FieldPoly<ExtField>& a) {
  (void)field;
  std::string s = "[";
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    if (k != 0) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < a.c[k].size(); ++j) {
      if (j != 0) s += ", ";
      s += a.c[k][j].get_str(10);
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace supercert
