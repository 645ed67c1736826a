#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "supercert/cyclotomic.hpp"
#include "supercert/finite_field.hpp"

namespace supercert {

/// Initial p-adic working precision for unramified places.
constexpr unsigned kInitialPrecision = 64;

namespace detail {
/// Hensel lifts of a place's factor of Phi_r, keyed by precision. Shared by copies of a Place.
struct LiftCache {
  std::mutex mu;
  std::map<unsigned, std::vector<Int>> lifts;
};
}  // namespace detail

/// A prime of Q(zeta_r): the rational prime p below it together with a monic
/// irreducible factor g of Phi_r mod p. The ramified place (p = r) uses g = x - 1.
struct Place {
  unsigned r = 0;
  Int p;
  unsigned i = 1;      ///< residue degree
  unsigned index = 0;  ///< position in the sorted factor list
  bool ramified = false;
  FieldPoly<PrimeField> g;
  std::shared_ptr<detail::LiftCache> cache = std::make_shared<detail::LiftCache>();

  /// "p:index", e.g. "7:0".
  std::string name() const;
  /// |k_place| = p^i.
  Int residue_size() const;
  /// Monic lift G of g with coefficients mod p^precision, G | Phi_r mod p^precision.
  std::vector<Int> lifted_factor(unsigned precision) const;
};

/// One place per irreducible factor of Phi_r mod p, sorted by ascending coefficient lists;
/// the single ramified place when p = r.
std::vector<Place> places_above(unsigned r, const Int& p);

/// Parses "p:k" and returns that place; throws UsageError for a bad name or index.
Place place_from_name(unsigned r, std::string_view name);

/// The residue field k_place = F_p[y]/(g).
ExtField residue_field(const Place& place);

/// Image of a in the residue field (zeta -> class of y; zeta -> 1 at the ramified place).
ExtField::Elem reduce(const CycElt& a, const Place& place);

/// As above for field elements; throws NonIntegralError if the valuation is negative.
ExtField::Elem reduce(const CycFrac& a, const Place& place);

/// Normalised valuation: v(p) = 1 at unramified places, v(pi) = 1 at the ramified place.
/// Precision doubles until the value is determined; with want_exact = false the result is
/// capped at the initial precision (a lower bound when it equals that cap).
long valuation(const CycElt& a, const Place& place, bool want_exact = true);

/// Valuation of a field element (may be negative).
long valuation(const CycFrac& a, const Place& place);

/// The completion's integers truncated: (Z/p^N)[y]/(G) with G the lifted factor.
/// Elements are coefficient vectors of length i in the basis 1, y, ..., y^(i-1); y is the
/// lifted root of Phi_r corresponding to zeta.
class LocalRing {
 public:
  using Elem = std::vector<Int>;

  LocalRing(const Place& place, unsigned precision);

  const Place& place() const { return place_; }
  unsigned precision() const { return precision_; }
  const Int& modulus() const { return modulus_; }
  unsigned degree() const { return place_.i; }

  Elem zero() const { return Elem(place_.i, Int(0)); }
  Elem one() const { return from_int(Int(1)); }
  Elem from_int(const Int& n) const;
  Elem from_cyc(const CycElt& a) const;
  /// Element sum c_k zeta^k with the same coefficients (a lift of x from the completion).
  CycElt to_cyc(const Elem& x) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  /// Inverse of a unit; throws DegenerateInputError for non-units.
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  /// Minimum p-adic valuation of the coordinates; kInfiniteValuation when every
  /// coordinate vanishes modulo p^N.
  long valuation(const Elem& a) const;

  ExtField residue_field() const { return supercert::residue_field(place_); }
  ExtField::Elem residue(const Elem& a) const;
  Elem lift_residue(const ExtField::Elem& a) const;

 private:
  Elem reduce_poly(std::vector<Int> c) const;

  Place place_;
  unsigned precision_;
  Int modulus_;
  std::vector<Int> G_;
  std::vector<Elem> zeta_powers_;
};

}  // namespace supercert
