#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "supercert/arith_conditions.hpp"
#include "supercert/endo_character.hpp"
#include "supercert/integer_factor.hpp"
#include "supercert/newton.hpp"
#include "supercert/poly_tools.hpp"

namespace supercert {

enum class BadPlaceClass { kPiPlace, kPrimeVDegree, kGoldbachVDegree, kSemistableAssumed, kUnclassified };
std::string to_string(BadPlaceClass c);

struct BadPlaceReport {
  std::string place;  ///< "p:k"
  Int p;
  unsigned residue_degree = 1;
  long disc_valuation = 0;
  BadPlaceClass classification = BadPlaceClass::kUnclassified;
  std::vector<long> qs, hs;  ///< the detected profile, empty when none
  std::string kind;          ///< "standard" or "transvection" when a profile exists
  std::string evidence;
};

struct CertifyOptions {
  std::vector<Int> hints;
  std::uint64_t budget = kDefaultRhoBudget;
  /// Witness places are searched above every prime up to this bound and above the
  /// primes dividing coefficient norms.
  long witness_bound = 100;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct WitnessSummary {
  std::string place;
  std::string kind;
  std::vector<long> qs, hs;
};

struct Certificate {
  // input echo
  unsigned r = 0;
  long d = 0;
  std::vector<CycElt> coeffs;

  bool valid = false;
  std::string failure;  ///< first failing condition, empty when valid

  long genus = 0;
  long n = 0;
  GoodReductionReport good_reduction;

  CycElt discriminant{3};
  Int disc_norm;
  std::vector<PrimePower> disc_factors;
  std::vector<BadPlaceReport> bad_places;

  std::vector<WitnessSummary> witnesses;
  std::optional<HypothesisRoute> route;
  std::vector<RouteFailure> route_failures;

  std::set<Int> excluded_primes;  ///< explicit set; also every prime <= floor(n / 2)
  long ell_threshold = 0;         ///< ell > n / 2, stored as floor(n / 2)

  std::vector<ImageDescriptor> images;
  std::string large_image_claim;
  std::string gl_realization;
  std::string du_realization;
  std::string r3_exact_image;  ///< empty unless r = 3
  std::optional<std::pair<long, long>> det_exponents;            ///< ceil(g/3), 6 for r = 3
  std::optional<std::pair<long, long>> reference_det_exponents;  ///< tabulated value when it differs
  std::vector<std::string> discrepancy_notes;
  bool grh_flag = false;

  std::set<Int> bad_residue_characteristics() const;
  CycPoly polynomial() const { return CycPoly(r, coeffs); }
  /// Primes whose factorisation came from a hint.
  std::vector<Int> hinted_primes() const;
};

/// Runs every check on y^r = f. Throws UsageError when f is not monic, 2r does not divide
/// d or d < 12, UnsupportedError for an unsupported r and BoundExceededError when the
/// discriminant norm keeps a composite cofactor after the rho budget.
Certificate certify(unsigned r, const CycPoly& f, const CertifyOptions& options = {});

/// Stable JSON (sorted keys, fixed orderings).
nlohmann::json to_json(const Certificate& c);
/// Inverse of to_json; throws UsageError naming the first malformed field.
Certificate certificate_from_json(const nlohmann::json& j);

struct Revalidation {
  bool consistent = false;
  std::string message;
};

/// Re-runs certify on the echoed input with the recorded hints and compares validity,
/// the excluded set and the bad places.
Revalidation revalidate(const Certificate& c, const CertifyOptions& options = {});

/// Input document: {"r": 3, "coeffs": ["[0]", ..., "[1]"], "hints": ["..."], "budget": N,
/// "witness_bound": B}. Coefficients may also be given as integer lists.
struct CertifyInput {
  unsigned r = 0;
  CycPoly f{3};
  CertifyOptions options;
};
CertifyInput parse_certify_input(const nlohmann::json& j);
nlohmann::json to_json(const CertifyInput& in);

/// x^d + pi x^(d-1) + c pi^(d-r) x^r + 2c pi^(d-2) x^2 + c' pi^(d-r) for c a pool prime and
/// c' = c times a product of distinct pool primes with c' = 1 mod r^2, keeping the ones
/// whose congruences at pi hold and whose witnesses support a hypothesis route.
std::vector<CycPoly> search_template(unsigned r, long d, const std::vector<Int>& pool);

}  // namespace supercert
