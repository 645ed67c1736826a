#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supercert/bigint.hpp"
#include "supercert/local_places.hpp"
#include "supercert/newton.hpp"

namespace supercert {

/// All prime pairs q1 < q2 with q1 + q2 = d.
std::vector<std::pair<long, long>> goldbach_pairs(long d);

/// Least prime q with d/2 < q < d and q = 2 mod 3.
std::optional<long> find_prim1_prime(long d);

/// Whether m has multiplicative order q - 1 modulo the prime q. Throws UsageError if q | m.
bool is_primitive_root(const Int& m, long q);

struct ClassNumber {
  unsigned r = 0;
  Int value;
  const char* source = "";
  bool odd() const { return mpz_odd_p(value.get_mpz_t()) != 0; }
};

/// Class number of Q(zeta_r) from an embedded table (odd primes r <= 97).
/// Throws UnsupportedError outside the table.
ClassNumber class_number(unsigned r);
bool class_number_odd(unsigned r);

// ------------------------------------------------------------ routes

/// A candidate witness: a place together with the profile f has there.
struct Witness {
  Place place;
  VProfile profile;
};

enum class RouteKind { kA, kBPrimI, kBPrimII };
std::string to_string(RouteKind kind);

struct HypothesisRoute {
  RouteKind kind = RouteKind::kBPrimI;
  unsigned r = 0;
  long d = 0;

  // first irreducibility variant: q1 + q2 = d, q3 < d
  long q1 = 0, q2 = 0, q3 = 0;
  std::optional<Place> p1, p2;
  // second irreducibility variant: q = d - 1
  long q = 0;
  std::optional<Place> p;
  // primitivity for r in {23, 31}
  std::optional<long> q_r;
  std::optional<Place> p_r;
  // primitivity through odd class number
  long prim_q1 = 0, prim_q2 = 0;
  std::optional<Place> prim_p1;

  std::optional<Place> p3;  ///< degree-2 witness
  std::optional<Place> p4;  ///< transvection witness

  std::set<Int> s_irr, s_prim;
  bool grh_assumed = false;

  /// r and every q and witness characteristic used by the route.
  std::set<Int> excluded_primes() const;
};

struct RouteFailure {
  std::string route;       ///< "A", "B-PrimI", "B-PrimII" or "setting"
  std::string hypothesis;  ///< first failing sub-condition, e.g. "Prim I"
  std::string reason;
  int depth = 0;           ///< sub-conditions passed before failing
};

struct RouteResult {
  std::optional<HypothesisRoute> route;
  std::vector<RouteFailure> failures;  ///< one per route tried, in order

  /// The attempt that got furthest (earliest on ties); nullptr when a route was found.
  const RouteFailure* headline() const;
};

/// Searches B-PrimI, then B-PrimII, then A. Witnesses are tried by ascending
/// residue characteristic, then place index.
RouteResult build_route(unsigned r, long d, std::vector<Witness> witnesses);

/// Whether r is covered by the first primitivity variant (3 <= r <= 23 or r = 31).
bool prim1_applies(unsigned r);

}  // namespace supercert
