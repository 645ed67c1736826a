#pragma once
// Polynomials shared by several suites.

#include "supercert/poly_tools.hpp"

namespace examples {

using supercert::CycElt;
using supercert::CycPoly;
using supercert::Int;

inline CycElt C(unsigned r, long n) { return CycElt(r, Int(n)); }

/// x^12 + pi x^11 + 7 pi^9 x^3 + 14 pi^10 x^2 + 406 pi^9 over Z[zeta_3].
inline CycPoly degree12() {
  const unsigned r = 3;
  std::vector<CycElt> c(13, CycElt(r));
  c[12] = C(r, 1);
  c[11] = CycElt::pi(r);
  c[3] = C(r, 7) * supercert::pi_power(r, 9);
  c[2] = C(r, 14) * supercert::pi_power(r, 10);
  c[0] = C(r, 406) * supercert::pi_power(r, 9);
  return CycPoly(r, c);
}

/// Product of x^k - c over the given (k, c) pairs times the monic polynomial `tail`.
inline CycPoly product_form(unsigned r, const std::vector<std::pair<int, long>>& factors, const CycPoly& tail) {
  CycPoly out = tail;
  for (auto [k, c] : factors) {
    CycPoly g = CycPoly::monomial(r, static_cast<std::size_t>(k), C(r, 1)) - CycPoly(r, {C(r, c)});
    out = out * g;
  }
  return out;
}

}  // namespace examples
