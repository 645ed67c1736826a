#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supercert/cyclotomic.hpp"
#include "supercert/local_places.hpp"
#include "supercert/poly_tools.hpp"

namespace supercert {

struct PolygonVertex {
  long x = 0;
  long v = 0;
  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

/// One edge of a Newton polygon, from (x, v) to (x + length, v - drop).
struct PolygonSegment {
  long x = 0;
  long v = 0;
  long length = 0;
  long drop = 0;
};

/// Lower convex hull of the points (j, v(a_j)), a_j != 0.
struct NewtonPolygon {
  std::vector<PolygonVertex> vertices;

  std::vector<PolygonSegment> segments() const;
  std::string to_string() const;
};

/// Hull of (j, valuations[j]) skipping entries equal to kInfiniteValuation.
NewtonPolygon newton_polygon(const std::vector<long>& valuations);
/// Polygon of f at a place (exact valuations).
NewtonPolygon newton_polygon(const CycPoly& f, const Place& place);

enum class ProfileKind { kStandard, kTransvection };

/// v-degree (qs) and height (hs) of f at a place after the shift x -> x - a.
struct VProfile {
  ProfileKind kind = ProfileKind::kStandard;
  CycElt shift;
  std::string shift_origin;  ///< "zero" or "residue-root:<k>"
  std::vector<long> qs;
  std::vector<long> hs;
  long separable_part_degree = 0;
  NewtonPolygon polygon;  ///< polygon of the shifted polynomial

  long degree() const;  ///< x_{t+1} + separable part degree
  /// Partial sums x_1 = 0, x_2 = q_1, ..., x_{t+1}.
  std::vector<long> xs() const;
  bool is_prime_degree(long q) const { return qs.size() == 1 && qs[0] == q; }
};

/// Regularity criteria of the standard kind for a given residue characteristic p:
/// increasing primes q_s distinct from r and p, positive decreasing heights,
/// gcd(D_s, q_s) = 1 and distinct slopes. Returns the first violation, empty if valid.
std::string standard_shape_violation(const std::vector<long>& qs, const std::vector<long>& hs, unsigned r,
                                     const Int& p);

/// Shift search for the v-degree: a = 0 first, then lifts of the residue roots of
/// gcd(f, f'). Returns the first valid profile.
std::optional<VProfile> detect_v_profile(const CycPoly& f, const Place& place);

/// Profile validation on a given (shifted) coefficient valuation vector and its flat
/// residue part. Exposed for tests; `flat_squarefree` reports whether the residue of the
/// flat part is squarefree with non-zero constant term.
std::optional<VProfile> classify_polygon(const NewtonPolygon& polygon, long degree, bool flat_squarefree,
                                         unsigned r, const Int& p);

// ------------------------------------------------------------ inertia

/// (C_q^{D} - 1) (x) (C_r^{delta} - 1): dimension (q-1)(r-1).
struct TensorBlock {
  long s = 0;
  long q = 0;
  long q_exponent = 0;  ///< D_s
  int delta = 0;
  long r_exponent = 0;  ///< q_s h_s + D_s x_s reduced mod r
};

/// (C_r^{delta} - 1)^{multiplicity}: dimension (r-1) each.
struct RBlock {
  long s = 0;
  int delta = 0;
  long multiplicity = 0;
};

/// (C_r^{height} - 1)^{multiplicity} inside the toric part.
struct ToricBlock {
  long s = 0;
  long height = 0;
  long multiplicity = 0;
};

struct InertiaDecomp {
  unsigned r = 0;
  std::vector<long> qs, hs, xs;     ///< xs has t+1 entries
  std::vector<long> Ds;
  std::vector<int> gammas;          ///< gamma_1 .. gamma_{t+1}
  std::vector<int> deltas;          ///< delta_1 .. delta_t
  std::vector<TensorBlock> tensor;
  std::vector<RBlock> extra;
  std::vector<ToricBlock> toric;
  long trivial_multiplicity = 0;    ///< from the separable part, when the curve degree is known
  long genus = 0;

  long ab_dimension() const;
  long toric_dimension() const;
  /// (r-1)(x_{t+1} - 2 + gamma_{t+1})
  long expected_dimension() const;
};

/// One character chi_q^{q_exponent} (x) chi_r^{delta} on a lambda-adic block.
struct LambdaCharacter {
  long s = 0;
  long q = 0;          ///< 1 for the extra r-only characters
  long q_exponent = 0; ///< j D_s mod q
  int delta = 0;
};

/// Decomposition for heights/lengths; throws UsageError for an invalid shape.
InertiaDecomp inertia_decomposition(const std::vector<long>& qs, const std::vector<long>& hs, unsigned r);
/// Same, with the trivial part and genus filled from the profile's total degree.
InertiaDecomp inertia_decomposition(const VProfile& profile, unsigned r);

/// Characters per lambda: for each s, j = 1..q_s-1, then the extra r-only ones.
std::vector<LambdaCharacter> lambda_characters(const InertiaDecomp& decomp);

/// Genus of y^r = f, deg f = d, r prime: (r-1)(d-2)/2 if r | d, else (r-1)(d-1)/2.
long superelliptic_genus(unsigned r, long d);

// ------------------------------------------------------------ transvection, good reduction

struct TransvectionInfo {
  long h = 0;
  bool r_divides_h = false;
  /// Non-trivial eigenvalues of the inertia generator: r - 2 when r does not divide h, else 0.
  long nontrivial_eigenvalues = 0;
  CycElt shift;
};

/// Polygon (0,h)-(r,0)-(d,0) after the shift search, p not dividing rh, flat part squarefree.
bool transvection_shape_check(const CycPoly& f, const Place& place, unsigned r, TransvectionInfo* info = nullptr);

struct GoodReductionReport {
  bool holds = false;          ///< the strong form: a_0 = b pi^{d-r} mod pi^d, b = 1 mod pi^r
  bool weak_form_holds = false;///< a_0 = b pi^{d-r} mod pi^r only
  std::string failure;         ///< first failing condition of the strong form
};

/// Congruences at pi for f monic of degree d = rs. Throws UsageError when r does not divide d.
GoodReductionReport good_reduction_at_r(const CycPoly& f);
bool good_reduction_at_r_check(const CycPoly& f);

/// Shape (i): a_0 - pi^{-r} integral, a_{d-1} a unit, other a_j integral at pi.
bool good_reduction_shape_i_check(const std::vector<CycFrac>& coeffs);

}  // namespace supercert
