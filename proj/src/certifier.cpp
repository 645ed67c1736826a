#include "supercert/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "supercert/errors.hpp"

namespace supercert {

using nlohmann::json;

std::string to_string(BadPlaceClass c) {
  switch (c) {
    case BadPlaceClass::kPiPlace: return "pi_place";
    case BadPlaceClass::kPrimeVDegree: return "prime_v_degree";
    case BadPlaceClass::kGoldbachVDegree: return "goldbach_v_degree";
    case BadPlaceClass::kSemistableAssumed: return "semistable_assumed";
    case BadPlaceClass::kUnclassified: return "unclassified";
  }
  return "?";
}

std::set<Int> Certificate::bad_residue_characteristics() const {
  std::set<Int> out;
  for (const auto& b : bad_places) out.insert(b.p);
  return out;
}

std::vector<Int> Certificate::hinted_primes() const {
  std::vector<Int> out;
  for (const auto& pp : disc_factors)
    if (pp.source == Provenance::kHint) out.push_back(pp.prime);
  return out;
}

namespace {

/// Runs fn(0..count-1) on up to `threads` workers; results land in caller-owned slots.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < count;) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string kind_name(ProfileKind k) { return k == ProfileKind::kTransvection ? "transvection" : "standard"; }

std::string shape(const std::vector<long>& qs, const std::vector<long>& hs) {
  auto list = [](const std::vector<long>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  };
  return list(qs) + "/" + list(hs);
}

void classify(BadPlaceReport& b, const std::optional<VProfile>& profile, long d) {
  if (!profile) {
    b.classification = BadPlaceClass::kUnclassified;
    b.evidence = "no admissible v-degree after the shift search";
    return;
  }
  b.qs = profile->qs;
  b.hs = profile->hs;
  b.kind = kind_name(profile->kind);
  b.evidence = "v-degree " + shape(b.qs, b.hs) + ", shift " + profile->shift_origin + ", polygon " +
               profile->polygon.to_string();
  if (b.qs.size() == 1) {
    b.classification = BadPlaceClass::kPrimeVDegree;
  } else if (b.qs.size() == 2 && b.qs[0] + b.qs[1] == d) {
    b.classification = BadPlaceClass::kGoldbachVDegree;
  } else {
    b.classification = BadPlaceClass::kUnclassified;
    b.evidence += "; not one of the admissible shapes";
  }
}

std::vector<Int> small_primes_up_to(long bound) {
  std::vector<Int> out;
  for (long p = 2; p <= bound; ++p)
    if (is_small_prime(static_cast<std::uint64_t>(p))) out.emplace_back(p);
  return out;
}

/// Smallest prime ell = -1 mod r admitted by some delta | 2r but not by delta = 2r.
std::optional<long> du_reading_gap(unsigned r, long d) {
  const auto du = du_congruence_classes(r, d);
  for (long ell = 2 * static_cast<long>(r) - 1; ell < 100000; ell += 2 * static_cast<long>(r)) {
    if (!is_small_prime(static_cast<std::uint64_t>(ell))) continue;
    if (du_condition_any_delta(r, d, Int(ell)) && !du.combined.contains(Int(ell))) return ell;
  }
  return std::nullopt;
}

/// Image exponents tabulated for the r = 3 worked examples, by degree.
std::optional<long> reference_det_exponent(long d) {
  static const std::map<long, long> table{{12, 2}, {18, 6}, {24, 8}, {30, 10}};
  auto it = table.find(d);
  return it == table.end() ? std::nullopt : std::optional<long>(it->second);
}

}  // namespace

Certificate certify(unsigned r, const CycPoly& f, const CertifyOptions& options) {
  require_supported_order(r);
  if (f.r() != r) throw UsageError("polynomial is over a different cyclotomic ring");
  if (f.degree() < 1 || !f.is_monic()) throw UsageError("f must be monic");
  const long d = f.degree();
  if (d % (2 * static_cast<long>(r)) != 0)
    throw UsageError("2r must divide d (r = " + std::to_string(r) + ", d = " + std::to_string(d) + ")");
  if (d < 12) throw UsageError("degree must be at least 12, got " + std::to_string(d));

  Certificate c;
  c.r = r;
  c.d = d;
  c.coeffs = f.coeffs();
  c.genus = superelliptic_genus(r, d);
  c.n = d - 2;
  c.ell_threshold = c.n / 2;
  c.good_reduction = good_reduction_at_r(f);
  c.images = image_descriptors(r, d);

  std::vector<std::string> failures;
  if (!c.good_reduction.holds) failures.push_back("congruences at pi: " + c.good_reduction.failure);

  c.discriminant = discriminant(f);
  if (c.discriminant.is_zero()) {
    c.failure = failures.empty() ? "f is not squarefree (zero discriminant)" : failures.front();
    return c;
  }
  c.disc_norm = abs(norm(c.discriminant));
  const Factorization fac = factor(c.disc_norm, options.budget, options.hints);
  if (!fac.complete())
    throw BoundExceededError("discriminant norm keeps the composite cofactor " + to_string(fac.cofactor) +
                             " after the rho budget; supply hints");
  c.disc_factors = fac.factors;

  // bad places: every place above a prime of the norm with positive valuation
  std::vector<Place> candidates;
  for (const auto& pp : fac.factors)
    for (auto& place : places_above(r, pp.prime)) candidates.push_back(std::move(place));
  std::vector<long> vals(candidates.size());
  std::vector<std::optional<VProfile>> profiles(candidates.size());
  parallel_for(candidates.size(), options.threads, [&](std::size_t k) {
    vals[k] = valuation(c.discriminant, candidates[k]);
    if (vals[k] > 0 && !candidates[k].ramified) profiles[k] = detect_v_profile(f, candidates[k]);
  });
  std::map<std::string, Witness> pool;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (vals[k] == 0) continue;
    BadPlaceReport b;
    b.place = candidates[k].name();
    b.p = candidates[k].p;
    b.residue_degree = candidates[k].i;
    b.disc_valuation = vals[k];
    if (candidates[k].ramified) {
      b.classification = BadPlaceClass::kPiPlace;
      b.evidence = "the place above r";
    } else {
      classify(b, profiles[k], d);
      if (profiles[k]) pool.emplace(b.place, Witness{candidates[k], *profiles[k]});
    }
    c.bad_places.push_back(std::move(b));
  }

  // witness pool: small primes and the primes of coefficient norms
  std::set<Int> witness_primes;
  for (const auto& p : small_primes_up_to(options.witness_bound)) witness_primes.insert(p);
  for (const auto& a : f.coeffs()) {
    if (a.is_zero()) continue;
    const auto nf = factor(abs(norm(a)), 0);
    for (const auto& pp : nf.factors) witness_primes.insert(pp.prime);
  }
  witness_primes.erase(Int(r));
  std::vector<Place> wplaces;
  for (const auto& p : witness_primes)
    for (auto& place : places_above(r, p))
      if (!pool.count(place.name())) wplaces.push_back(std::move(place));
  std::vector<std::optional<VProfile>> wprofiles(wplaces.size());
  parallel_for(wplaces.size(), options.threads, [&](std::size_t k) { wprofiles[k] = detect_v_profile(f, wplaces[k]); });
  for (std::size_t k = 0; k < wplaces.size(); ++k)
    if (wprofiles[k]) pool.emplace(wplaces[k].name(), Witness{wplaces[k], *wprofiles[k]});

  std::vector<Witness> witnesses;
  for (auto& [name, w] : pool) witnesses.push_back(w);
  std::sort(witnesses.begin(), witnesses.end(), [](const Witness& a, const Witness& b) {
    return a.place.p != b.place.p ? a.place.p < b.place.p : a.place.index < b.place.index;
  });
  for (const auto& w : witnesses)
    c.witnesses.push_back({w.place.name(), kind_name(w.profile.kind), w.profile.qs, w.profile.hs});

  RouteResult rr = build_route(r, d, witnesses);
  c.route = rr.route;
  c.route_failures = rr.failures;
  if (!c.route) {
    const RouteFailure* h = rr.headline();
    failures.push_back(h ? "hypothesis route " + h->route + ": " + h->hypothesis + ": " + h->reason
                         : "no hypothesis route");
  }
  for (const auto& b : c.bad_places)
    if (b.classification == BadPlaceClass::kUnclassified) {
      failures.push_back("bad place " + b.place + " unclassified: " + b.evidence);
      break;
    }

  c.excluded_primes.insert(Int(r));
  if (c.route)
    for (const auto& p : c.route->excluded_primes()) c.excluded_primes.insert(p);
  for (const auto& b : c.bad_places) c.excluded_primes.insert(b.p);
  for (const auto& p : small_primes_up_to(c.ell_threshold)) c.excluded_primes.insert(p);
  c.grh_flag = c.route && c.route->grh_assumed;

  c.valid = failures.empty();
  if (!c.valid) c.failure = failures.front();

  const std::string n = std::to_string(c.n);
  const auto du = du_congruence_classes(r, d);
  if (c.valid) {
    c.large_image_claim = "for ell > " + std::to_string(c.ell_threshold) +
                          " outside the excluded set, rho_lambda(G) contains SL_" + n + "(ell^i) for i odd and SU_" +
                          n + "(ell^(i/2)) for i even; the mod-ell image is large";
    c.gl_realization = "rho_lambda(G) = GL_" + n + "(ell) for ell = 1 (mod " + std::to_string(r) + ")";
    c.du_realization = "rho_lambda(G) = DU_" + n + "(ell) for " + du.describe();
  }
  if (r == 3) {
    const long u = (c.genus + 2) / 3;
    c.det_exponents = std::make_pair(u, 6L);
    if (c.valid) {
      const std::string e = "^{" + std::to_string(u) + ",6}";
      c.r3_exact_image = "rho_ell(G) = GL_" + n + "(ell)" + e + " x| <chi_ell> for ell = 1 (mod 3); rho_ell(G) = GU_" +
                         n + "(ell)" + e + " . <chi_ell> for ell = 2 (mod 3)";
    }
    if (auto ref = reference_det_exponent(d); ref && *ref != u) {
      c.reference_det_exponents = std::make_pair(*ref, 6L);
      c.discrepancy_notes.push_back("tabulated determinant exponent " + std::to_string(*ref) +
                                    " differs from ceil(g/3) = " + std::to_string(u) + "; the certificate uses " +
                                    std::to_string(u));
    }
  }
  c.discrepancy_notes.push_back(
      "a_0 congruence checked modulo pi^d (b = 1 mod pi^r), stronger than the modulo pi^r form" +
      std::string(c.good_reduction.weak_form_holds && !c.good_reduction.holds ? "; only the weaker form holds" : ""));
  if (auto gap = du_reading_gap(r, d))
    c.discrepancy_notes.push_back("DU classes use delta = 2r; letting delta range over the divisors of 2r also admits ell = " +
                                  std::to_string(*gap));
  c.discrepancy_notes.push_back(
      "every witness residue characteristic is excluded, including those of p, p_1 and p_2");
  if (c.grh_flag) c.discrepancy_notes.push_back("r = 31: primitivity is conditional on GRH");
  return c;
}

// ------------------------------------------------------------ JSON

namespace {

json ints_json(const std::vector<long>& v) { return json(v); }

json int_set(const std::set<Int>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(to_string(x));
  return a;
}

json opt_place(const std::optional<Place>& p) { return p ? json(p->name()) : json(nullptr); }

json route_json(const HypothesisRoute& rt) {
  return json{{"kind", to_string(rt.kind)},
              {"q1", rt.q1},
              {"q2", rt.q2},
              {"q3", rt.q3},
              {"p1", opt_place(rt.p1)},
              {"p2", opt_place(rt.p2)},
              {"q", rt.q},
              {"p", opt_place(rt.p)},
              {"q_r", rt.q_r ? json(*rt.q_r) : json(nullptr)},
              {"p_r", opt_place(rt.p_r)},
              {"prim_q1", rt.prim_q1},
              {"prim_q2", rt.prim_q2},
              {"prim_p1", opt_place(rt.prim_p1)},
              {"p3", opt_place(rt.p3)},
              {"p4", opt_place(rt.p4)},
              {"s_irr", int_set(rt.s_irr)},
              {"s_prim", int_set(rt.s_prim)},
              {"grh_assumed", rt.grh_assumed}};
}

json congruence_json(const Congruence& c) {
  json res = json::array();
  for (const auto& x : c.residues) res.push_back(to_string(x));
  return json{{"modulus", to_string(c.modulus)}, {"residues", res}};
}

json descriptor_json(const ImageDescriptor& d) {
  json conds = json::array();
  for (const auto& c : d.conditions) conds.push_back(congruence_json(c));
  return json{{"family", to_string(d.family)},
              {"representation", d.representation},
              {"n", d.n},
              {"field", d.field},
              {"det_exponents", d.det_exponents ? json{d.det_exponents->first, d.det_exponents->second} : json(nullptr)},
              {"extension", d.extension},
              {"conditions", conds},
              {"conditions_text", d.conditions_text}};
}

json opt_pair(const std::optional<std::pair<long, long>>& p) {
  return p ? json{p->first, p->second} : json(nullptr);
}

// --- parsing helpers; each names the field it rejects

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Int int_of(const json& j, const std::string& what) {
  try {
    if (j.is_string()) return Int(j.get<std::string>());
    if (j.is_number_integer()) return Int(j.get<long>());
  } catch (const std::invalid_argument&) {
  }
  throw UsageError("field '" + what + "' must be an integer or a decimal string");
}

long long_of(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw UsageError("field '" + what + "' must be an integer");
  return j.get<long>();
}

std::string str_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw UsageError("field '" + what + "' must be a string");
  return j.get<std::string>();
}

std::vector<long> longs_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw UsageError("field '" + what + "' must be a list");
  std::vector<long> out;
  for (const auto& x : j) out.push_back(long_of(x, what));
  return out;
}

std::set<Int> int_set_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw UsageError("field '" + what + "' must be a list");
  std::set<Int> out;
  for (const auto& x : j) out.insert(int_of(x, what));
  return out;
}

CycElt cyc_of(unsigned r, const json& j, const std::string& what) {
  if (j.is_string()) {
    try {
      return parse_cyc(r, j.get<std::string>());
    } catch (const std::exception& e) {
      throw UsageError("field '" + what + "': " + e.what());
    }
  }
  if (j.is_array()) {
    std::vector<Int> c;
    for (const auto& x : j) c.push_back(int_of(x, what));
    std::string text = "[";
    for (std::size_t k = 0; k < c.size(); ++k) text += (k ? ", " : "") + to_string(c[k]);
    return parse_cyc(r, text + "]");
  }
  throw UsageError("field '" + what + "' entries must be \"[c0, c1, ...]\" strings or integer lists");
}

std::optional<Place> place_of(unsigned r, const json& j, const std::string& what) {
  if (j.is_null()) return std::nullopt;
  return place_from_name(r, str_of(j, what));
}

std::optional<std::pair<long, long>> pair_of(const json& j, const std::string& what) {
  if (j.is_null()) return std::nullopt;
  const auto v = longs_of(j, what);
  if (v.size() != 2) throw UsageError("field '" + what + "' must have two entries");
  return std::make_pair(v[0], v[1]);
}

Provenance provenance_of(const std::string& s) {
  for (auto p : {Provenance::kTrialDivision, Provenance::kHint, Provenance::kRho, Provenance::kPrimeTest})
    if (to_string(p) == s) return p;
  throw UsageError("field 'provenance' has unknown value '" + s + "'");
}

BadPlaceClass class_of(const std::string& s) {
  for (auto c : {BadPlaceClass::kPiPlace, BadPlaceClass::kPrimeVDegree, BadPlaceClass::kGoldbachVDegree,
                 BadPlaceClass::kSemistableAssumed, BadPlaceClass::kUnclassified})
    if (to_string(c) == s) return c;
  throw UsageError("field 'classification' has unknown value '" + s + "'");
}

ImageFamily family_of(const std::string& s) {
  for (auto f : {ImageFamily::kGL, ImageFamily::kGU, ImageFamily::kDU, ImageFamily::kGLdet, ImageFamily::kGUdet})
    if (to_string(f) == s) return f;
  throw UsageError("field 'family' has unknown value '" + s + "'");
}

RouteKind route_kind_of(const std::string& s) {
  for (auto k : {RouteKind::kA, RouteKind::kBPrimI, RouteKind::kBPrimII})
    if (to_string(k) == s) return k;
  throw UsageError("field 'route.kind' has unknown value '" + s + "'");
}

}  // namespace

json to_json(const Certificate& c) {
  json coeffs = json::array();
  for (const auto& a : c.coeffs) coeffs.push_back(to_string(a));
  json bad = json::array();
  for (const auto& b : c.bad_places)
    bad.push_back({{"place", b.place},
                   {"p", to_string(b.p)},
                   {"residue_degree", b.residue_degree},
                   {"disc_valuation", b.disc_valuation},
                   {"classification", to_string(b.classification)},
                   {"qs", ints_json(b.qs)},
                   {"hs", ints_json(b.hs)},
                   {"kind", b.kind},
                   {"evidence", b.evidence}});
  json facs = json::array();
  for (const auto& pp : c.disc_factors)
    facs.push_back({{"prime", to_string(pp.prime)}, {"exponent", pp.exponent}, {"provenance", to_string(pp.source)}});
  json wit = json::array();
  for (const auto& w : c.witnesses)
    wit.push_back({{"place", w.place}, {"kind", w.kind}, {"qs", ints_json(w.qs)}, {"hs", ints_json(w.hs)}});
  json fails = json::array();
  for (const auto& f : c.route_failures)
    fails.push_back({{"route", f.route}, {"hypothesis", f.hypothesis}, {"reason", f.reason}, {"depth", f.depth}});
  json images = json::array();
  for (const auto& d : c.images) images.push_back(descriptor_json(d));

  return json{
      {"input", {{"r", c.r}, {"d", c.d}, {"coeffs", coeffs}}},
      {"valid", c.valid},
      {"failure", c.failure},
      {"genus", c.genus},
      {"n", c.n},
      {"good_reduction_at_r",
       {{"holds", c.good_reduction.holds},
        {"weak_form_holds", c.good_reduction.weak_form_holds},
        {"failure", c.good_reduction.failure}}},
      {"discriminant", {{"value", to_string(c.discriminant)}, {"norm", to_string(c.disc_norm)}, {"factorization", facs}}},
      {"bad_places", bad},
      {"witnesses", wit},
      {"route", c.route ? route_json(*c.route) : json(nullptr)},
      {"route_failures", fails},
      {"excluded_primes", {{"explicit", int_set(c.excluded_primes)}, {"ell_greater_than", c.ell_threshold}}},
      {"image_by_class", images},
      {"large_image_claim", c.large_image_claim},
      {"gl_realization", c.gl_realization},
      {"du_realization", c.du_realization},
      {"r3_exact_image", c.r3_exact_image},
      {"det_exponents", opt_pair(c.det_exponents)},
      {"reference_det_exponents", opt_pair(c.reference_det_exponents)},
      {"discrepancy_notes", c.discrepancy_notes},
      {"grh_flag", c.grh_flag},
  };
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  const json& in = field(j, "input");
  c.r = static_cast<unsigned>(long_of(field(in, "r"), "input.r"));
  require_supported_order(c.r);
  c.d = long_of(field(in, "d"), "input.d");
  for (const auto& a : field(in, "coeffs")) c.coeffs.push_back(cyc_of(c.r, a, "input.coeffs"));
  c.valid = field(j, "valid").get<bool>();
  c.failure = str_of(field(j, "failure"), "failure");
  c.genus = long_of(field(j, "genus"), "genus");
  c.n = long_of(field(j, "n"), "n");
  const json& gr = field(j, "good_reduction_at_r");
  c.good_reduction.holds = field(gr, "holds").get<bool>();
  c.good_reduction.weak_form_holds = field(gr, "weak_form_holds").get<bool>();
  c.good_reduction.failure = str_of(field(gr, "failure"), "good_reduction_at_r.failure");
  const json& disc = field(j, "discriminant");
  c.discriminant = cyc_of(c.r, field(disc, "value"), "discriminant.value");
  c.disc_norm = int_of(field(disc, "norm"), "discriminant.norm");
  for (const auto& x : field(disc, "factorization"))
    c.disc_factors.push_back({int_of(field(x, "prime"), "prime"),
                              static_cast<unsigned long>(long_of(field(x, "exponent"), "exponent")),
                              provenance_of(str_of(field(x, "provenance"), "provenance"))});
  for (const auto& x : field(j, "bad_places")) {
    BadPlaceReport b;
    b.place = str_of(field(x, "place"), "bad_places.place");
    b.p = int_of(field(x, "p"), "bad_places.p");
    b.residue_degree = static_cast<unsigned>(long_of(field(x, "residue_degree"), "bad_places.residue_degree"));
    b.disc_valuation = long_of(field(x, "disc_valuation"), "bad_places.disc_valuation");
    b.classification = class_of(str_of(field(x, "classification"), "classification"));
    b.qs = longs_of(field(x, "qs"), "bad_places.qs");
    b.hs = longs_of(field(x, "hs"), "bad_places.hs");
    b.kind = str_of(field(x, "kind"), "bad_places.kind");
    b.evidence = str_of(field(x, "evidence"), "bad_places.evidence");
    c.bad_places.push_back(std::move(b));
  }
  for (const auto& x : field(j, "witnesses"))
    c.witnesses.push_back({str_of(field(x, "place"), "witnesses.place"), str_of(field(x, "kind"), "witnesses.kind"),
                           longs_of(field(x, "qs"), "witnesses.qs"), longs_of(field(x, "hs"), "witnesses.hs")});
  if (const json& rt = field(j, "route"); !rt.is_null()) {
    HypothesisRoute h;
    h.kind = route_kind_of(str_of(field(rt, "kind"), "route.kind"));
    h.r = c.r;
    h.d = c.d;
    h.q1 = long_of(field(rt, "q1"), "route.q1");
    h.q2 = long_of(field(rt, "q2"), "route.q2");
    h.q3 = long_of(field(rt, "q3"), "route.q3");
    h.p1 = place_of(c.r, field(rt, "p1"), "route.p1");
    h.p2 = place_of(c.r, field(rt, "p2"), "route.p2");
    h.q = long_of(field(rt, "q"), "route.q");
    h.p = place_of(c.r, field(rt, "p"), "route.p");
    if (!field(rt, "q_r").is_null()) h.q_r = long_of(field(rt, "q_r"), "route.q_r");
    h.p_r = place_of(c.r, field(rt, "p_r"), "route.p_r");
    h.prim_q1 = long_of(field(rt, "prim_q1"), "route.prim_q1");
    h.prim_q2 = long_of(field(rt, "prim_q2"), "route.prim_q2");
    h.prim_p1 = place_of(c.r, field(rt, "prim_p1"), "route.prim_p1");
    h.p3 = place_of(c.r, field(rt, "p3"), "route.p3");
    h.p4 = place_of(c.r, field(rt, "p4"), "route.p4");
    h.s_irr = int_set_of(field(rt, "s_irr"), "route.s_irr");
    h.s_prim = int_set_of(field(rt, "s_prim"), "route.s_prim");
    h.grh_assumed = field(rt, "grh_assumed").get<bool>();
    c.route = std::move(h);
  }
  for (const auto& x : field(j, "route_failures"))
    c.route_failures.push_back({str_of(field(x, "route"), "route_failures.route"),
                                str_of(field(x, "hypothesis"), "route_failures.hypothesis"),
                                str_of(field(x, "reason"), "route_failures.reason"),
                                static_cast<int>(long_of(field(x, "depth"), "route_failures.depth"))});
  const json& ex = field(j, "excluded_primes");
  c.excluded_primes = int_set_of(field(ex, "explicit"), "excluded_primes.explicit");
  c.ell_threshold = long_of(field(ex, "ell_greater_than"), "excluded_primes.ell_greater_than");
  for (const auto& x : field(j, "image_by_class")) {
    ImageDescriptor d;
    d.family = family_of(str_of(field(x, "family"), "family"));
    d.representation = str_of(field(x, "representation"), "image_by_class.representation");
    d.n = long_of(field(x, "n"), "image_by_class.n");
    d.field = str_of(field(x, "field"), "image_by_class.field");
    d.det_exponents = pair_of(field(x, "det_exponents"), "image_by_class.det_exponents");
    d.extension = str_of(field(x, "extension"), "image_by_class.extension");
    for (const auto& cj : field(x, "conditions")) {
      Congruence cg;
      cg.modulus = int_of(field(cj, "modulus"), "conditions.modulus");
      for (const auto& rj : field(cj, "residues")) cg.residues.push_back(int_of(rj, "conditions.residues"));
      d.conditions.push_back(std::move(cg));
    }
    d.conditions_text = str_of(field(x, "conditions_text"), "image_by_class.conditions_text");
    c.images.push_back(std::move(d));
  }
  c.large_image_claim = str_of(field(j, "large_image_claim"), "large_image_claim");
  c.gl_realization = str_of(field(j, "gl_realization"), "gl_realization");
  c.du_realization = str_of(field(j, "du_realization"), "du_realization");
  c.r3_exact_image = str_of(field(j, "r3_exact_image"), "r3_exact_image");
  c.det_exponents = pair_of(field(j, "det_exponents"), "det_exponents");
  c.reference_det_exponents = pair_of(field(j, "reference_det_exponents"), "reference_det_exponents");
  for (const auto& x : field(j, "discrepancy_notes")) c.discrepancy_notes.push_back(str_of(x, "discrepancy_notes"));
  c.grh_flag = field(j, "grh_flag").get<bool>();
  return c;
}

Revalidation revalidate(const Certificate& c, const CertifyOptions& options) {
  CertifyOptions o = options;
  for (const auto& p : c.hinted_primes()) o.hints.push_back(p);
  const Certificate fresh = certify(c.r, c.polynomial(), o);
  auto places = [](const Certificate& x) {
    std::vector<std::string> out;
    for (const auto& b : x.bad_places) out.push_back(b.place + "=" + to_string(b.classification));
    return out;
  };
  if (fresh.valid != c.valid) return {false, "validity differs"};
  if (fresh.failure != c.failure) return {false, "failing condition differs: " + fresh.failure};
  if (fresh.excluded_primes != c.excluded_primes) return {false, "excluded primes differ"};
  if (places(fresh) != places(c)) return {false, "bad places differ"};
  if (fresh.discriminant != c.discriminant) return {false, "discriminant differs"};
  return {true, "consistent"};
}

// ------------------------------------------------------------ input documents

CertifyInput parse_certify_input(const json& j) {
  if (!j.is_object()) throw UsageError("input must be a JSON object");
  CertifyInput in;
  const long r = long_of(field(j, "r"), "r");
  if (r < 3) throw UsageError("field 'r' must be an odd prime");
  in.r = static_cast<unsigned>(r);
  require_supported_order(in.r);
  const json& cs = field(j, "coeffs");
  if (!cs.is_array() || cs.empty()) throw UsageError("field 'coeffs' must be a non-empty list");
  std::vector<CycElt> coeffs;
  for (const auto& a : cs) coeffs.push_back(cyc_of(in.r, a, "coeffs"));
  in.f = CycPoly(in.r, coeffs);
  if (j.contains("hints")) {
    const json& h = j.at("hints");
    if (!h.is_array()) throw UsageError("field 'hints' must be a list of decimal strings");
    for (const auto& x : h) {
      if (!x.is_string()) throw UsageError("field 'hints' entries must be decimal strings");
      in.options.hints.push_back(int_of(x, "hints"));
    }
  }
  if (j.contains("budget")) {
    const long b = long_of(j.at("budget"), "budget");
    if (b < 0) throw UsageError("field 'budget' must be non-negative");
    in.options.budget = static_cast<std::uint64_t>(b);
  }
  if (j.contains("witness_bound")) in.options.witness_bound = long_of(j.at("witness_bound"), "witness_bound");
  return in;
}

json to_json(const CertifyInput& in) {
  json coeffs = json::array();
  for (const auto& a : in.f.coeffs()) coeffs.push_back(to_string(a));
  json hints = json::array();
  for (const auto& h : in.options.hints) hints.push_back(to_string(h));
  return json{{"r", in.r},
              {"coeffs", coeffs},
              {"hints", hints},
              {"budget", in.options.budget},
              {"witness_bound", in.options.witness_bound}};
}

// ------------------------------------------------------------ template search

std::vector<CycPoly> search_template(unsigned r, long d, const std::vector<Int>& pool_in) {
  require_supported_order(r);
  if (d % (2 * static_cast<long>(r)) != 0) throw UsageError("2r must divide d");
  std::vector<Int> pool(pool_in.begin(), pool_in.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  pool.erase(std::remove_if(pool.begin(), pool.end(), [&](const Int& p) { return p == r || !is_prime(p); }),
             pool.end());
  if (pool.size() > 16) throw BoundExceededError("template search pool limited to 16 primes");

  const Int r2 = Int(r) * Int(r);
  const CycElt pi = CycElt::pi(r);
  const CycElt low = pi_power(r, static_cast<unsigned long>(d - static_cast<long>(r)));
  std::vector<CycPoly> out;
  for (const auto& c : pool) {
    std::vector<Int> others;
    for (const auto& p : pool)
      if (p != c) others.push_back(p);
    for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
      Int cp = c;
      std::vector<Int> used{c};
      for (std::size_t k = 0; k < others.size(); ++k)
        if (mask >> k & 1) {
          cp *= others[k];
          used.push_back(others[k]);
        }
      if (mod_floor(cp - 1, r2) != 0) continue;
      std::vector<CycElt> coeffs(static_cast<std::size_t>(d) + 1, CycElt(r));
      coeffs[static_cast<std::size_t>(d)] = CycElt(r, Int(1));
      coeffs[static_cast<std::size_t>(d) - 1] = pi;
      coeffs[r] = CycElt(r, c) * low;
      coeffs[2] = coeffs[2] + CycElt(r, 2 * c) * pi_power(r, static_cast<unsigned long>(d - 2));
      coeffs[0] = CycElt(r, cp) * low;
      CycPoly f(r, coeffs);
      if (!good_reduction_at_r_check(f)) continue;
      std::vector<Witness> ws;
      for (const auto& p : used)
        for (const auto& place : places_above(r, p))
          if (auto prof = detect_v_profile(f, place)) ws.push_back({place, *prof});
      if (!build_route(r, d, ws).route) continue;
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace supercert
