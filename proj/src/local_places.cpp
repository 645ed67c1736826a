#include "supercert/local_places.hpp"

#include <charconv>

namespace supercert {

namespace {

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(ZPoly a, const Int& m) {
  for (auto& x : a) x = mod_floor(x, m);
  ztrim(a);
  return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return zmod(std::move(out), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return zmod(std::move(out), m);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return zmod(std::move(out), m);
}

/// Division by a monic polynomial over Z/m.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
  a = zmod(std::move(a), m);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {{}, a};
  ZPoly q(a.size() - db, Int(0));
  for (std::size_t k = a.size(); k-- > db;) {
    Int coef = mod_floor(a[k], m);
    if (coef == 0) continue;
    q[k - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= coef * b[j];
  }
  return {zmod(std::move(q), m), zmod(std::move(a), m)};
}

ZPoly cyclotomic_poly(unsigned r) { return ZPoly(r, Int(1)); }

ZPoly to_zpoly(const FieldPoly<PrimeField>& a) { return a.c; }

}  // namespace

std::string Place::name() const { return p.get_str(10) + ":" + std::to_string(index); }

Int Place::residue_size() const { return pow_int(p, i); }

std::vector<Int> Place::lifted_factor(unsigned precision) const {
  if (ramified) throw UsageError("the ramified place has no unramified lift");
  std::lock_guard<std::mutex> lock(cache->mu);
  auto it = cache->lifts.lower_bound(precision);
  if (it != cache->lifts.end()) {
    if (it->first == precision) return it->second;
    return zmod(it->second, pow_int(p, precision));
  }
  // Quadratic Hensel lifting of Phi_r = g h with s g + t h = 1.
  PrimeField fp(p);
  FieldPoly<PrimeField> phi = make_poly(fp, cyclotomic_poly(r));
  FieldPoly<PrimeField> h = poly_divmod(fp, phi, g).first;
  auto bz = poly_xgcd(fp, g, h);
  ZPoly G = to_zpoly(g), H = to_zpoly(h), S = to_zpoly(bz.s), T = to_zpoly(bz.t);
  const ZPoly Phi = cyclotomic_poly(r);
  unsigned reached = 1;
  Int m = p;
  while (reached < precision) {
    const Int m2 = m * m;
    ZPoly e = zsub(Phi, zmul(G, H, m2), m2);
    auto [q, rr] = zdivmod_monic(zmul(S, e, m2), H, m2);
    ZPoly G2 = zadd(zadd(G, zmul(T, e, m2), m2), zmul(q, G, m2), m2);
    ZPoly H2 = zadd(H, rr, m2);
    ZPoly b = zsub(zadd(zmul(S, G2, m2), zmul(T, H2, m2), m2), ZPoly{Int(1)}, m2);
    auto [c, d] = zdivmod_monic(zmul(S, b, m2), H2, m2);
    S = zsub(S, d, m2);
    T = zsub(zsub(T, zmul(T, b, m2), m2), zmul(c, G2, m2), m2);
    G = std::move(G2);
    H = std::move(H2);
    m = m2;
    reached *= 2;
  }
  G = zmod(G, pow_int(p, precision));
  G.resize(i + 1, Int(0));
  G[i] = 1;
  cache->lifts[precision] = G;
  return G;
}

std::vector<Place> places_above(unsigned r, const Int& p) {
  require_supported_order(r);
  if (p < 2) throw UsageError("places are defined above rational primes");
  std::vector<Place> out;
  if (p == r) {
    Place pl;
    pl.r = r;
    pl.p = p;
    pl.i = 1;
    pl.index = 0;
    pl.ramified = true;
    pl.g = make_poly(PrimeField(p), {Int(r - 1), Int(1)});
    out.push_back(std::move(pl));
    return out;
  }
  PrimeField fp(p);
  const unsigned i = static_cast<unsigned>(multiplicative_order(mod_floor(p, Int(r)).get_ui(), r));
  FieldPoly<PrimeField> phi = make_poly(fp, cyclotomic_poly(r));
  std::vector<FieldPoly<PrimeField>> factors;
  if (i == r - 1) {
    factors.push_back(phi);
  } else {
    factors = equal_degree_factor(fp, phi, i);
  }
  for (unsigned k = 0; k < factors.size(); ++k) {
    Place pl;
    pl.r = r;
    pl.p = p;
    pl.i = i;
    pl.index = k;
    pl.ramified = false;
    pl.g = factors[k];
    out.push_back(std::move(pl));
  }
  return out;
}

Place place_from_name(unsigned r, std::string_view name) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) throw UsageError("place name must look like p:k, got '" + std::string(name) + "'");
  Int p = parse_int(name.substr(0, colon));
  Int k = parse_int(name.substr(colon + 1));
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw UsageError("place name '" + std::string(name) + "' does not start with a prime");
  }
  auto places = places_above(r, p);
  if (k < 0 || k >= static_cast<long>(places.size())) {
    throw UsageError("place index out of range in '" + std::string(name) + "'");
  }
  return places[k.get_ui()];
}

ExtField residue_field(const Place& place) { return ExtField(PrimeField(place.p), place.g); }

ExtField::Elem reduce(const CycElt& a, const Place& place) {
  ExtField k = residue_field(place);
  if (place.ramified) return k.from_int(a.at_one());
  std::vector<Int> c;
  for (const auto& x : a.coeffs()) c.push_back(k.base().from_int(x));
  return k.from_poly(make_poly(k.base(), std::move(c)));
}

namespace {

struct SplitFraction {
  CycElt num;
  Int den;
};

SplitFraction clear_denominators(const CycFrac& a) {
  Int den = 1;
  for (const auto& x : a.coeffs()) {
    Int d = x.get_den();
    den = den / gcd(den, d) * d;
  }
  std::vector<Int> c;
  for (const auto& x : a.coeffs()) c.push_back(Rat(x * den).get_num());
  return {CycElt::from_coeffs(a.r(), c), den};
}

}  // namespace

long valuation(const CycFrac& a, const Place& place) {
  if (a.is_zero()) return kInfiniteValuation;
  auto [num, den] = clear_denominators(a);
  long vd = static_cast<long>(int_valuation(den, place.p));
  if (place.ramified) vd *= static_cast<long>(place.r - 1);
  return valuation(num, place) - vd;
}

ExtField::Elem reduce(const CycFrac& a, const Place& place) {
  if (a.is_zero()) return residue_field(place).zero();
  long v = valuation(a, place);
  if (v < 0) throw NonIntegralError("element has negative valuation at place " + place.name());
  auto [num, den] = clear_denominators(a);
  ExtField k = residue_field(place);
  unsigned long e = int_valuation(den, place.p);
  Int pe = pow_int(place.p, e);
  Int unit_den = divexact(den, pe);
  if (place.ramified) {
    CycElt q = exact_quotient(num, CycElt(place.r, pe)).value();
    return k.mul(reduce(q, place), k.inv(k.from_int(unit_den)));
  }
  LocalRing R(place, static_cast<unsigned>(std::max<unsigned long>(kInitialPrecision, e + 2)));
  LocalRing::Elem x = R.from_cyc(num);
  for (auto& c : x) c = divexact(c, pe);
  return k.mul(R.residue(x), k.inv(k.from_int(unit_den)));
}

long valuation(const CycElt& a, const Place& place, bool want_exact) {
  if (a.is_zero()) return kInfiniteValuation;
  if (place.ramified) return pi_valuation(a);
  unsigned prec = kInitialPrecision;
  for (;;) {
    LocalRing R(place, prec);
    long v = R.valuation(R.from_cyc(a));
    if (v != kInfiniteValuation) return v;
    if (!want_exact) return static_cast<long>(prec);
    prec *= 2;
  }
}

LocalRing::LocalRing(const Place& place, unsigned precision)
    : place_(place), precision_(precision), modulus_(pow_int(place.p, precision)) {
  if (place.ramified) throw UsageError("local ring construction needs an unramified place");
  if (precision == 0) throw UsageError("precision must be positive");
  G_ = place.lifted_factor(precision);
  zeta_powers_.reserve(place.r - 1);
  Elem y = zero();
  if (place_.i == 1) {
    y[0] = mod_floor(-G_[0], modulus_);
  } else {
    y[1] = 1;
  }
  Elem cur = one();
  for (unsigned k = 0; k + 1 < place.r; ++k) {
    zeta_powers_.push_back(cur);
    cur = mul(cur, y);
  }
}

LocalRing::Elem LocalRing::reduce_poly(std::vector<Int> c) const {
  const std::size_t i = place_.i;
  for (std::size_t k = c.size(); k-- > i;) {
    Int coef = mod_floor(c[k], modulus_);
    c[k] = 0;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < i; ++j) c[k - i + j] -= coef * G_[j];
  }
  Elem out(i, Int(0));
  for (std::size_t k = 0; k < std::min(i, c.size()); ++k) out[k] = mod_floor(c[k], modulus_);
  return out;
}

LocalRing::Elem LocalRing::from_int(const Int& n) const {
  Elem e = zero();
  e[0] = mod_floor(n, modulus_);
  return e;
}

LocalRing::Elem LocalRing::from_cyc(const CycElt& a) const {
  if (a.r() != place_.r) throw UsageError("element and place have different cyclotomic orders");
  std::vector<Int> acc(place_.i, Int(0));
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (a[k] == 0) continue;
    for (std::size_t j = 0; j < place_.i; ++j) acc[j] += a[k] * zeta_powers_[k][j];
  }
  for (auto& x : acc) x = mod_floor(x, modulus_);
  return acc;
}

CycElt LocalRing::to_cyc(const Elem& x) const {
  // y^k corresponds to zeta^k for k < i <= r - 1.
  return CycElt::from_coeffs(place_.r, x);
}

LocalRing::Elem LocalRing::add(const Elem& a, const Elem& b) const {
  Elem out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = a[k] + b[k];
    if (out[k] >= modulus_) out[k] -= modulus_;
  }
  return out;
}

LocalRing::Elem LocalRing::sub(const Elem& a, const Elem& b) const {
  Elem out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = a[k] - b[k];
    if (out[k] < 0) out[k] += modulus_;
  }
  return out;
}

LocalRing::Elem LocalRing::neg(const Elem& a) const { return sub(zero(), a); }

LocalRing::Elem LocalRing::mul(const Elem& a, const Elem& b) const {
  const std::size_t i = place_.i;
  if (i == 1) return Elem{mod_floor(a[0] * b[0], modulus_)};
  std::vector<Int> c(2 * i - 1, Int(0));
  for (std::size_t x = 0; x < i; ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < i; ++y) c[x + y] += a[x] * b[y];
  }
  return reduce_poly(std::move(c));
}

bool LocalRing::is_zero(const Elem& a) const {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

long LocalRing::valuation(const Elem& a) const {
  long best = kInfiniteValuation;
  for (const auto& x : a) {
    if (x == 0) continue;
    long v = static_cast<long>(int_valuation(x, place_.p));
    best = std::min(best, v);
  }
  return best;
}

ExtField::Elem LocalRing::residue(const Elem& a) const {
  ExtField k = residue_field();
  std::vector<Int> c;
  for (const auto& x : a) c.push_back(k.base().from_int(x));
  return k.from_poly(make_poly(k.base(), std::move(c)));
}

LocalRing::Elem LocalRing::lift_residue(const ExtField::Elem& a) const {
  Elem out = zero();
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k];
  return out;
}

LocalRing::Elem LocalRing::inv(const Elem& a) const {
  ExtField k = residue_field();
  ExtField::Elem ra = residue(a);
  if (k.is_zero(ra)) throw DegenerateInputError("inverse of a non-unit in the local ring");
  Elem x = lift_residue(k.inv(ra));
  const Elem two = from_int(Int(2));
  for (unsigned correct = 1; correct < precision_; correct *= 2) {
    x = mul(x, sub(two, mul(a, x)));
  }
  return x;
}

}  // namespace supercert
