#include <algorithm>

#include "doctest.h"
#include "examples.hpp"
#include "oracles.hpp"
#include "poly_oracles.hpp"
#include "supercert/certifier.hpp"
#include "supercert/errors.hpp"

using namespace supercert;

namespace {

const Int kP21("751887821191463868553");
const Int kP36("188189419441256467739625500157072019");

std::set<Int> ints(std::initializer_list<const char*> xs) {
  std::set<Int> out;
  for (auto x : xs) out.insert(Int(x));
  return out;
}

CertifyOptions hinted(std::vector<Int> hints) {
  CertifyOptions o;
  o.hints = std::move(hints);
  return o;
}

// Bad places re-derived from a discriminant computed by the Euclidean resultant over the
// fraction field and a norm computed as an integer resultant.
std::set<std::string> bad_places_from_scratch(const CycPoly& f, const std::vector<Int>& hints) {
  const unsigned r = f.r();
  const long d = f.degree();
  const CycFrac res = oracle::euclid_resultant(oracle::to_frac(f), oracle::to_frac(derivative(f)));
  CycElt disc = to_integral(res);
  if ((d * (d - 1) / 2) % 2) disc = -disc;
  const Int nm = abs(oracle::norm_by_resultant(disc));
  const auto fac = factor(nm, kDefaultRhoBudget, hints);
  REQUIRE(fac.complete());
  std::set<std::string> out;
  for (const auto& p : fac.primes())
    for (const auto& place : places_above(r, p))
      if (valuation(disc, place) > 0) out.insert(place.name());
  return out;
}

std::set<std::string> names(const Certificate& c) {
  std::set<std::string> out;
  for (const auto& b : c.bad_places) out.insert(b.place);
  return out;
}

}  // namespace

TEST_CASE("degree-12 certificate with hints") {
  const CycPoly f = examples::degree12();
  const Certificate c = certify(3, f, hinted({kP21, kP36}));
  CHECK(c.valid);
  CHECK(c.failure.empty());
  CHECK(c.genus == 10);
  CHECK(c.n == 10);
  CHECK(c.bad_residue_characteristics() ==
        ints({"2", "3", "7", "29", "31", "1549", "751887821191463868553", "188189419441256467739625500157072019"}));
  CHECK(c.excluded_primes == ints({"2", "3", "5", "7", "11", "29", "31", "1549", "751887821191463868553",
                                   "188189419441256467739625500157072019"}));
  CHECK(c.ell_threshold == 5);
  REQUIRE(c.route);
  CHECK(c.route->kind == RouteKind::kBPrimI);
  CHECK(c.route->q == 11);
  CHECK(c.route->p->name() == "7:0");
  CHECK(c.route->p3->name() == "29:0");
  CHECK(c.route->p4->name() == "2:0");
  CHECK(c.route->p4->i == 2);
  CHECK_FALSE(c.grh_flag);

  for (const auto& b : c.bad_places) {
    CHECK(b.classification != BadPlaceClass::kUnclassified);
    CHECK((b.classification == BadPlaceClass::kPiPlace) == (b.p == 3));
  }
  auto at = [&](const std::string& name) {
    auto it = std::find_if(c.bad_places.begin(), c.bad_places.end(), [&](const auto& b) { return b.place == name; });
    REQUIRE(it != c.bad_places.end());
    return *it;
  };
  CHECK(at("7:0").qs == std::vector<long>{11});
  CHECK(at("7:1").qs == std::vector<long>{11});
  CHECK(at("29:0").qs == std::vector<long>{2});
  CHECK(at("2:0").kind == "transvection");
  CHECK(at("2:0").qs == std::vector<long>{3});
  long above_31 = 0;
  for (const auto& b : c.bad_places)
    if (b.p == 31) {
      CHECK(b.disc_valuation == 1);
      CHECK(b.qs == std::vector<long>{2});
      ++above_31;
    }
  CHECK(above_31 == 1);

  REQUIRE(c.images.size() == 4);
  CHECK(c.images[1].conditions_text == "5, 29 (mod 36)");
  CHECK(c.det_exponents == std::make_pair(4L, 6L));
  CHECK(c.reference_det_exponents == std::make_pair(2L, 6L));
  CHECK(c.du_realization.find("5, 29 (mod 36)") != std::string::npos);
  CHECK(c.r3_exact_image.find("^{4,6}") != std::string::npos);
  CHECK(c.discrepancy_notes.size() >= 3);

  for (const auto& pp : c.disc_factors) {
    if (pp.prime == kP21 || pp.prime == kP36) CHECK(pp.source == Provenance::kHint);
    else CHECK(is_blind(pp.source));
  }

  SUBCASE("bad places agree with a fresh discriminant") { CHECK(names(c) == bad_places_from_scratch(f, {kP21, kP36})); }

  SUBCASE("JSON round trip and revalidation") {
    const auto j = to_json(c);
    const Certificate back = certificate_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.valid == c.valid);
    CHECK(back.excluded_primes == c.excluded_primes);
    const auto rv = revalidate(back);
    CHECK_MESSAGE(rv.consistent, rv.message);
    CHECK(j.dump() == to_json(certify(3, f, hinted({kP21, kP36}))).dump());
  }

  SUBCASE("hints change provenance only") {
    const Certificate one = certify(3, f, hinted({kP21}));
    CHECK(one.valid == c.valid);
    CHECK(one.excluded_primes == c.excluded_primes);
    for (const auto& pp : one.disc_factors)
      if (pp.prime == kP36) CHECK(pp.source == Provenance::kPrimeTest);
  }
}

TEST_CASE("certificate failures") {
  const unsigned r = 3;
  SUBCASE("a_0 congruence") {
    std::vector<CycElt> c(13, CycElt(r));
    c[12] = examples::C(r, 1);
    c[1] = examples::C(r, 1);
    c[0] = examples::C(r, 1);
    const Certificate cert = certify(r, CycPoly(r, c));
    CHECK_FALSE(cert.valid);
    CHECK(cert.failure.find("a_0") != std::string::npos);
  }
  SUBCASE("2r must divide d") {
    std::vector<CycElt> c(10, CycElt(r));
    c[9] = examples::C(r, 1);
    c[0] = examples::C(r, 1);
    CHECK_THROWS_WITH_AS(certify(r, CycPoly(r, c)), doctest::Contains("2r"), UsageError);
  }
  SUBCASE("monic and degree") {
    std::vector<CycElt> c(13, CycElt(r));
    c[12] = examples::C(r, 2);
    c[0] = examples::C(r, 1);
    CHECK_THROWS_AS(certify(r, CycPoly(r, c)), UsageError);
    std::vector<CycElt> small(7, CycElt(r));
    small[6] = examples::C(r, 1);
    small[0] = examples::C(r, 1);
    CHECK_THROWS_AS(certify(r, CycPoly(r, small)), UsageError);
  }
  SUBCASE("composite cofactor beyond the budget") {
    CertifyOptions o;
    o.budget = 1000;
    CHECK_THROWS_AS(certify(r, examples::degree12(), o), BoundExceededError);
  }
}

TEST_CASE("input documents") {
  const auto j = nlohmann::json::parse(R"({"r": 3, "coeffs": ["[1]", "[0, 2]", [3, 4], "[1]"], "hints": ["101"],
                                           "budget": 77, "witness_bound": 50})");
  const CertifyInput in = parse_certify_input(j);
  CHECK(in.r == 3);
  CHECK(in.f.degree() == 3);
  CHECK(in.f.coeff(2) == parse_cyc(3, "[3, 4]"));
  CHECK(in.options.hints == std::vector<Int>{Int(101)});
  CHECK(in.options.budget == 77);
  CHECK(in.options.witness_bound == 50);
  CHECK(parse_certify_input(to_json(in)).f == in.f);
  CHECK_THROWS_WITH_AS(parse_certify_input(nlohmann::json::parse(R"({"coeffs": ["[1]"]})")), doctest::Contains("r"),
                       UsageError);
  CHECK_THROWS_WITH_AS(parse_certify_input(nlohmann::json::parse(R"({"r": 3, "coeffs": [true]})")),
                       doctest::Contains("coeffs"), UsageError);
  CHECK_THROWS_WITH_AS(parse_certify_input(nlohmann::json::parse(R"({"r": 3, "coeffs": ["[1]"], "hints": [5]})")),
                       doctest::Contains("hints"), UsageError);
}

TEST_CASE("template search") {
  const auto found = search_template(3, 12, {Int(2), Int(7), Int(29)});
  CHECK(std::find(found.begin(), found.end(), examples::degree12()) != found.end());
  for (const auto& f : found) {
    CHECK(f.degree() == 12);
    CHECK(good_reduction_at_r_check(f));
  }
  CHECK(search_template(3, 12, {}).empty());
  const auto d18 = search_template(3, 18, {Int(2), Int(7), Int(29)});
  REQUIRE_FALSE(d18.empty());
  CHECK(d18.front().coeff(0) == examples::C(3, 406) * pi_power(3, 15));
}
