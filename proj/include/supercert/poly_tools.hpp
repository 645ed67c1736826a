#pragma once

#include <vector>

#include "supercert/cyclotomic.hpp"
#include "supercert/local_places.hpp"

namespace supercert {

/// Polynomial over Z[zeta_r], ascending coefficients, no trailing zeros.
class CycPoly {
 public:
  explicit CycPoly(unsigned r) : r_(r) {}
  CycPoly(unsigned r, std::vector<CycElt> coeffs);

  /// x^k
  static CycPoly monomial(unsigned r, std::size_t k, const CycElt& coeff);

  unsigned r() const { return r_; }
  const std::vector<CycElt>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of x^k (zero beyond the degree).
  CycElt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : CycElt(r_); }
  const CycElt& leading() const { return c_.back(); }
  bool is_monic() const;

  friend CycPoly operator+(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator-(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator*(const CycElt& s, const CycPoly& a);
  friend bool operator==(const CycPoly& a, const CycPoly& b) { return a.r_ == b.r_ && a.c_ == b.c_; }

 private:
  void trim();

  unsigned r_;
  std::vector<CycElt> c_;
};

CycPoly derivative(const CycPoly& f);
CycElt eval(const CycPoly& f, const CycElt& a);
/// f(x - a)
CycPoly compose_shift(const CycPoly& f, const CycElt& a);

/// Determinant over Z[zeta_r] by fraction-free elimination with row swaps.
CycElt bareiss_determinant(std::vector<std::vector<CycElt>> m);

/// Sylvester matrix of (f, g), rows of f first, coefficients in descending order.
std::vector<std::vector<CycElt>> sylvester_matrix(const CycPoly& f, const CycPoly& g);

/// Res(f, g) = det of the Sylvester matrix.
CycElt resultant(const CycPoly& f, const CycPoly& g);

/// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); requires degree >= 2 and a unit leading coefficient.
CycElt discriminant(const CycPoly& f);

/// Coefficientwise reduction into the residue field of a place.
FieldPoly<ExtField> reduce_poly(const CycPoly& f, const Place& place);

/// gcd of the reduction with its derivative (monic); throws DegenerateInputError if the reduction is zero.
FieldPoly<ExtField> repeated_part(const CycPoly& f, const Place& place);

bool squarefree_over_residue(const CycPoly& f, const Place& place);

/// Coefficients mapped into a local ring.
std::vector<LocalRing::Elem> to_local(const CycPoly& f, const LocalRing& R);

/// g(x - a) for g given by local coefficients.
std::vector<LocalRing::Elem> local_shift(const std::vector<LocalRing::Elem>& g, const LocalRing::Elem& a,
                                         const LocalRing& R);

LocalRing::Elem local_eval(const std::vector<LocalRing::Elem>& g, const LocalRing::Elem& a, const LocalRing& R);

std::vector<LocalRing::Elem> local_derivative(const std::vector<LocalRing::Elem>& g, const LocalRing& R);

}  // namespace supercert
