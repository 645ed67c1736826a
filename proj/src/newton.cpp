#include "supercert/newton.hpp"

#include <numeric>
#include <sstream>

#include "supercert/errors.hpp"

namespace supercert {

namespace {

constexpr unsigned kShiftPrecision = 64;

bool small_prime(long n) { return n >= 2 && is_small_prime(static_cast<std::uint64_t>(n)); }

// cross product sign of (b - a) x (c - a)
Int cross(const PolygonVertex& a, const PolygonVertex& b, const PolygonVertex& c) {
  return Int(b.x - a.x) * Int(c.v - a.v) - Int(b.v - a.v) * Int(c.x - a.x);
}

}  // namespace

std::vector<PolygonSegment> NewtonPolygon::segments() const {
  std::vector<PolygonSegment> out;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    const auto& a = vertices[k];
    const auto& b = vertices[k + 1];
    out.push_back({a.x, a.v, b.x - a.x, a.v - b.v});
  }
  return out;
}

std::string NewtonPolygon::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (k) os << '-';
    os << '(' << vertices[k].x << ',' << vertices[k].v << ')';
  }
  return os.str();
}

NewtonPolygon newton_polygon(const std::vector<long>& valuations) {
  NewtonPolygon poly;
  auto& hull = poly.vertices;
  for (std::size_t j = 0; j < valuations.size(); ++j) {
    if (valuations[j] == kInfiniteValuation) continue;
    PolygonVertex p{static_cast<long>(j), valuations[j]};
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  return poly;
}

NewtonPolygon newton_polygon(const CycPoly& f, const Place& place) {
  std::vector<long> vals;
  for (const auto& c : f.coeffs()) vals.push_back(valuation(c, place));
  return newton_polygon(vals);
}

long VProfile::degree() const { return xs().back() + separable_part_degree; }

std::vector<long> VProfile::xs() const {
  std::vector<long> out{0};
  for (long q : qs) out.push_back(out.back() + q);
  return out;
}

std::string standard_shape_violation(const std::vector<long>& qs, const std::vector<long>& hs, unsigned r,
                                     const Int& p) {
  if (qs.empty() || qs.size() != hs.size()) return "empty or mismatched v-degree and height";
  for (std::size_t s = 0; s < qs.size(); ++s) {
    const long q = qs[s];
    if (!small_prime(q)) return "segment length " + std::to_string(q) + " is not prime";
    if (q == static_cast<long>(r)) return "segment length equals r";
    if (p != 0 && Int(q) == p) return "segment length equals the residue characteristic";
    if (s > 0 && q <= qs[s - 1]) return "segment lengths are not increasing";
    if (hs[s] <= 0) return "heights must be positive";
    const long next = s + 1 < hs.size() ? hs[s + 1] : 0;
    const long D = hs[s] - next;
    if (D <= 0) return "heights are not strictly decreasing";
    if (std::gcd(D, q) != 1) return "height drop not coprime to segment length";
  }
  for (std::size_t j = 0; j < qs.size(); ++j) {
    for (std::size_t k = j + 1; k < qs.size(); ++k) {
      const long Dj = hs[j] - (j + 1 < hs.size() ? hs[j + 1] : 0);
      const long Dk = hs[k] - (k + 1 < hs.size() ? hs[k + 1] : 0);
      if (Dj * qs[k] == Dk * qs[j]) return "repeated slope";
    }
  }
  return {};
}

std::optional<VProfile> classify_polygon(const NewtonPolygon& polygon, long degree, bool flat_squarefree,
                                         unsigned r, const Int& p) {
  const auto& V = polygon.vertices;
  if (V.empty() || V.front().x != 0 || V.back().x != degree || V.back().v != 0) return std::nullopt;
  std::size_t k = 0;
  while (k < V.size() && V[k].v != 0) ++k;
  if (k == 0 || k == V.size()) return std::nullopt;
  // after the first zero-valuation vertex only the endpoint may remain
  if (k + 1 < V.size() && !(k + 2 == V.size() && V.back().v == 0)) return std::nullopt;

  VProfile prof;
  prof.polygon = polygon;
  for (std::size_t s = 0; s < k; ++s) {
    prof.qs.push_back(V[s + 1].x - V[s].x);
    prof.hs.push_back(V[s].v);
  }
  const long x_end = V[k].x;
  prof.separable_part_degree = degree - x_end;
  if (prof.separable_part_degree > 0 && !flat_squarefree) return std::nullopt;
  if (p == r) return std::nullopt;

  if (prof.qs.size() == 1 && prof.qs[0] == static_cast<long>(r)) {
    if (divisible(Int(prof.hs[0]), p)) return std::nullopt;
    prof.kind = ProfileKind::kTransvection;
    return prof;
  }
  if (!standard_shape_violation(prof.qs, prof.hs, r, p).empty()) return std::nullopt;
  const bool r_divides = x_end % static_cast<long>(r) == 0;
  if (r_divides != (prof.separable_part_degree == 0)) return std::nullopt;
  prof.kind = ProfileKind::kStandard;
  return prof;
}

namespace {

/// Residue of the flat part sum_{j >= start} a_j x^{j - start} is squarefree with non-zero constant.
bool flat_part_squarefree(const ExtField& k, const std::vector<ExtField::Elem>& residues, long start) {
  std::vector<ExtField::Elem> c(residues.begin() + start, residues.end());
  FieldPoly<ExtField> h = make_poly(k, c);
  if (h.degree() <= 0) return true;
  if (k.is_zero(h.c[0])) return false;
  return poly_gcd(k, h, poly_derivative(k, h)).degree() == 0;
}

long first_flat_vertex(const NewtonPolygon& poly) {
  for (const auto& v : poly.vertices)
    if (v.v == 0) return v.x;
  return -1;
}

std::optional<VProfile> try_valuations(const std::vector<long>& vals, const std::vector<ExtField::Elem>& residues,
                                       const ExtField& k, unsigned r, const Place& place) {
  NewtonPolygon poly = newton_polygon(vals);
  const long start = first_flat_vertex(poly);
  if (start < 0) return std::nullopt;
  const bool sq = flat_part_squarefree(k, residues, start);
  return classify_polygon(poly, static_cast<long>(vals.size()) - 1, sq, r, place.p);
}

LocalRing::Elem lift_repeated_root(const std::vector<LocalRing::Elem>& fl, const ExtField::Elem& rho,
                                   const LocalRing& R) {
  ExtField k = R.residue_field();
  auto d1 = local_derivative(fl, R);
  auto d2 = local_derivative(d1, R);
  LocalRing::Elem z = R.lift_residue(rho);
  if (k.is_zero(R.residue(local_eval(d2, z, R)))) return z;
  for (int it = 0; it < 12; ++it) {
    LocalRing::Elem val = local_eval(d1, z, R);
    if (R.valuation(val) == kInfiniteValuation) break;
    z = R.sub(z, R.mul(val, R.inv(local_eval(d2, z, R))));
  }
  return z;
}

}  // namespace

std::optional<VProfile> detect_v_profile(const CycPoly& f, const Place& place) {
  if (place.ramified || f.is_zero() || !f.is_monic()) return std::nullopt;
  const unsigned r = f.r();
  ExtField k = residue_field(place);

  std::vector<long> vals;
  std::vector<ExtField::Elem> res;
  for (const auto& c : f.coeffs()) {
    vals.push_back(valuation(c, place));
    res.push_back(reduce(c, place));
  }
  if (auto prof = try_valuations(vals, res, k, r, place)) {
    prof->shift = CycElt(r);
    prof->shift_origin = "zero";
    return prof;
  }

  FieldPoly<ExtField> rep = repeated_part(f, place);
  if (rep.degree() <= 0) return std::nullopt;
  LocalRing R(place, kShiftPrecision);
  const auto fl = to_local(f, R);
  std::size_t idx = 0;
  for (const auto& rho : poly_roots(k, rep)) {
    LocalRing::Elem a = R.neg(lift_repeated_root(fl, rho, R));
    auto shifted = local_shift(fl, a, R);
    std::vector<long> sv;
    std::vector<ExtField::Elem> sr;
    for (const auto& c : shifted) {
      sv.push_back(R.valuation(c));
      sr.push_back(R.residue(c));
    }
    if (auto prof = try_valuations(sv, sr, k, r, place)) {
      prof->shift = R.to_cyc(a);
      prof->shift_origin = "residue-root:" + std::to_string(idx);
      return prof;
    }
    ++idx;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ inertia

long InertiaDecomp::ab_dimension() const {
  long dim = 0;
  for (const auto& b : tensor) dim += (b.q - 1) * (static_cast<long>(r) - 1);
  for (const auto& b : extra) dim += b.multiplicity * (static_cast<long>(r) - 1);
  return dim;
}

long InertiaDecomp::toric_dimension() const {
  long dim = 0;
  for (const auto& b : toric) dim += b.multiplicity * (static_cast<long>(r) - 1);
  return dim;
}

long InertiaDecomp::expected_dimension() const {
  return (static_cast<long>(r) - 1) * (xs.back() - 2 + gammas.back());
}

long superelliptic_genus(unsigned r, long d) {
  const long rr = static_cast<long>(r);
  return d % rr == 0 ? (rr - 1) * (d - 2) / 2 : (rr - 1) * (d - 1) / 2;
}

InertiaDecomp inertia_decomposition(const std::vector<long>& qs, const std::vector<long>& hs, unsigned r) {
  require_supported_order(r);
  if (auto why = standard_shape_violation(qs, hs, r, Int(0)); !why.empty()) throw UsageError("invalid profile: " + why);
  const long rr = static_cast<long>(r);
  InertiaDecomp out;
  out.r = r;
  out.qs = qs;
  out.hs = hs;
  out.xs = {0};
  for (long q : qs) out.xs.push_back(out.xs.back() + q);
  const std::size_t t = qs.size();
  for (std::size_t s = 0; s < t; ++s) out.Ds.push_back(hs[s] - (s + 1 < t ? hs[s + 1] : 0));
  for (std::size_t s = 0; s <= t; ++s) out.gammas.push_back(out.xs[s] % rr == 0 ? 0 : 1);
  for (std::size_t s = 0; s < t; ++s) {
    const long e = ((qs[s] % rr) * (hs[s] % rr) + (out.Ds[s] % rr) * (out.xs[s] % rr)) % rr;
    const int delta = e != 0 ? 1 : 0;
    out.deltas.push_back(delta);
    const long label = static_cast<long>(s) + 1;
    out.tensor.push_back({label, qs[s], out.Ds[s], delta, e});
    const long mult = out.gammas[s] + out.gammas[s + 1] - 1;
    if (mult > 0) out.extra.push_back({label, delta, mult});
  }
  for (std::size_t s = 1; s < t; ++s) {
    if (out.gammas[s] == 0) out.toric.push_back({static_cast<long>(s) + 1, hs[s], 1});
  }
  return out;
}

InertiaDecomp inertia_decomposition(const VProfile& profile, unsigned r) {
  if (profile.kind != ProfileKind::kStandard) throw UsageError("inertia decomposition needs a standard profile");
  InertiaDecomp out = inertia_decomposition(profile.qs, profile.hs, r);
  out.genus = superelliptic_genus(r, profile.degree());
  out.trivial_multiplicity = 2 * out.genus - out.ab_dimension() - 2 * out.toric_dimension();
  return out;
}

std::vector<LambdaCharacter> lambda_characters(const InertiaDecomp& decomp) {
  std::vector<LambdaCharacter> out;
  for (const auto& b : decomp.tensor) {
    for (long j = 1; j < b.q; ++j) out.push_back({b.s, b.q, (j * b.q_exponent) % b.q, b.delta});
  }
  for (const auto& b : decomp.extra) {
    for (long m = 0; m < b.multiplicity; ++m) out.push_back({b.s, 1, 0, b.delta});
  }
  return out;
}

// ------------------------------------------------------------ transvection, good reduction

bool transvection_shape_check(const CycPoly& f, const Place& place, unsigned r, TransvectionInfo* info) {
  if (f.r() != r) throw UsageError("polynomial and place use different r");
  auto prof = detect_v_profile(f, place);
  if (!prof || prof->kind != ProfileKind::kTransvection) return false;
  if (info) {
    info->h = prof->hs[0];
    info->r_divides_h = prof->hs[0] % static_cast<long>(r) == 0;
    info->nontrivial_eigenvalues = info->r_divides_h ? 0 : static_cast<long>(r) - 2;
    info->shift = prof->shift;
  }
  return true;
}

GoodReductionReport good_reduction_at_r(const CycPoly& f) {
  const unsigned r = f.r();
  const long d = f.degree();
  const long rr = static_cast<long>(r);
  if (d < rr || d % rr != 0) throw UsageError("good reduction check needs r | deg f");
  if (!f.is_monic()) throw UsageError("good reduction check needs a monic polynomial");
  GoodReductionReport rep;
  const long v0 = pi_valuation(f.coeff(0) - pi_power(r, static_cast<unsigned long>(d - rr)));
  std::string others;
  if (pi_valuation(f.coeff(static_cast<std::size_t>(d - 1))) != 1) others = "a_{d-1} is not a unit times pi";
  for (long j = 1; j <= d - 2 && others.empty(); ++j) {
    if (pi_valuation(f.coeff(static_cast<std::size_t>(j))) < d - j)
      others = "a_" + std::to_string(j) + " is not divisible by pi^" + std::to_string(d - j);
  }
  rep.weak_form_holds = others.empty() && v0 >= rr;
  if (v0 < d) {
    rep.failure = "a_0 is not congruent to b pi^(d-r) modulo pi^d with b = 1 mod pi^r";
  } else {
    rep.failure = others;
  }
  rep.holds = rep.failure.empty();
  return rep;
}

bool good_reduction_at_r_check(const CycPoly& f) { return good_reduction_at_r(f).holds; }

bool good_reduction_shape_i_check(const std::vector<CycFrac>& coeffs) {
  if (coeffs.size() < 3) return false;
  const unsigned r = coeffs.front().r();
  const std::size_t d = coeffs.size() - 1;
  if (coeffs.back() != CycFrac(r, Rat(1))) return false;
  const Place pi_place = places_above(r, Int(r)).front();
  CycFrac pi_inv_r = inverse(pi_power(r, r));
  if (valuation(coeffs[0] - pi_inv_r, pi_place) < 0) return false;
  if (valuation(coeffs[d - 1], pi_place) != 0) return false;
  for (std::size_t j = 1; j + 1 < d; ++j)
    if (valuation(coeffs[j], pi_place) < 0) return false;
  return true;
}

}  // namespace supercert
