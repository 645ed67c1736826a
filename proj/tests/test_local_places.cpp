#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "supercert/local_places.hpp"

using namespace supercert;

namespace {
CycElt C(unsigned r, long n) { return CycElt(r, Int(n)); }

}  // namespace

TEST_CASE("places above small primes") {
  auto p7 = places_above(3, Int(7));
  REQUIRE(p7.size() == 2);
  CHECK(p7[0].i == 1);
  CHECK(p7[1].i == 1);
  CHECK(p7[0].name() == "7:0");
  // Factors x + 3 and x + 5 of x^2 + x + 1 mod 7, sorted by constant term.
  CHECK(poly_to_string(p7[0].g) == "[3, 1]");
  CHECK(poly_to_string(p7[1].g) == "[5, 1]");
  auto p29 = places_above(3, Int(29));
  REQUIRE(p29.size() == 1);
  CHECK(p29[0].i == 2);
  auto p3 = places_above(3, Int(3));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].ramified);
  for (unsigned r : {3u, 5u, 7u, 11u, 13u}) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 29L, 43L, 1009L}) {
      if (p == static_cast<long>(r)) continue;
      unsigned total = 0;
      for (const auto& pl : places_above(r, Int(p))) {
        total += pl.i;
        CHECK(is_irreducible(PrimeField(Int(p)), pl.g));
      }
      CHECK(total == r - 1);
    }
  }
}

TEST_CASE("lifted factor divides the cyclotomic polynomial") {
  for (unsigned r : {3u, 5u, 7u, 13u}) {
    for (long p : {2L, 5L, 29L, 31L}) {
      if (p == static_cast<long>(r)) continue;
      for (const auto& pl : places_above(r, Int(p))) {
        for (unsigned prec : {1u, 5u, 64u}) {
          auto G = pl.lifted_factor(prec);
          Int m = pow_int(Int(p), prec);
          // Long division of Phi_r by G over Z/m must leave zero remainder.
          std::vector<Int> a(r, Int(1));
          const std::size_t dg = G.size() - 1;
          for (std::size_t k = a.size(); k-- > dg;) {
            Int c = mod_floor(a[k], m);
            for (std::size_t j = 0; j <= dg; ++j) a[k - dg + j] -= c * G[j];
          }
          bool zero = true;
          for (const auto& x : a) zero = zero && mod_floor(x, m) == 0;
          CHECK(zero);
        }
      }
    }
  }

}

TEST_CASE("valuation examples") {
  auto p29 = places_above(3, Int(29))[0];
  CHECK(valuation(C(3, 406), p29) == 1);
  CHECK(valuation(C(3, 14), p29) == 0);
  for (const auto& pl : places_above(3, Int(7))) CHECK(valuation(C(3, 406), pl) == 1);
  CHECK(valuation(CycElt(3), p29) == kInfiniteValuation);
  auto pi = places_above(3, Int(3))[0];
  CHECK(valuation(C(3, 405), pi) == 8);
  // Precision must grow beyond the initial 64 digits.
  CHECK(valuation(CycElt(5, pow_int(Int(11), 150)), places_above(5, Int(11))[2]) == 150);
  CHECK(valuation(CycElt(5, pow_int(Int(11), 150)), places_above(5, Int(11))[2], false) == 64);
}

TEST_CASE("valuation at split places separates conjugate primes") {
  // zeta - 5 has norm 31 and lies above exactly one of the two places over 31.
  CycElt a = CycElt::zeta(3) - C(3, 5);
  auto pls = places_above(3, Int(31));
  REQUIRE(pls.size() == 2);
  CHECK(valuation(a, pls[0]) + valuation(a, pls[1]) == 1);
}

TEST_CASE("valuations are additive and sum to the norm valuation") {
  std::mt19937_64 rng(77);
  for (unsigned r : {3u, 5u, 7u}) {
    for (long p : {2L, 5L, 7L, 11L, 13L, 29L}) {
      if (p == static_cast<long>(r)) continue;
      auto pls = places_above(r, Int(p));
      for (int trial = 0; trial < 15; ++trial) {
        CycElt a = oracle::random_elt(rng, r, 200) * CycElt(r, Int(p));
        CycElt b = oracle::random_elt(rng, r, 200);
        if (a.is_zero() || b.is_zero()) continue;
        long weighted = 0;
        for (const auto& pl : pls) {
          CHECK(valuation(a * b, pl) == valuation(a, pl) + valuation(b, pl));
          weighted += static_cast<long>(pl.i) * valuation(a, pl);
        }
        CHECK(weighted == static_cast<long>(int_valuation(norm(a), Int(p))));
      }
    }
  }
}

TEST_CASE("reduction") {
  auto pls = places_above(3, Int(7));
  const Place& root2 = pls[1];  // x + 5 = x - 2
  ExtField k = residue_field(root2);
  CHECK(reduce(CycElt::zeta(3), root2) == k.from_int(Int(2)));
  CHECK(reduce(CycElt::pi(3), root2) == k.from_int(Int(6)));
  auto ram = places_above(3, Int(3))[0];
  CHECK(residue_field(ram).is_zero(reduce(CycElt::pi(3), ram)));
  CHECK(reduce(CycElt::zeta(3), ram) == residue_field(ram).one());
  std::mt19937_64 rng(8);
  for (unsigned r : {3u, 5u, 7u}) {
    for (long p : {2L, 11L, 29L, static_cast<long>(r)}) {
      for (const auto& pl : places_above(r, Int(p))) {
        ExtField f = residue_field(pl);
        for (int trial = 0; trial < 10; ++trial) {
          CycElt a = oracle::random_elt(rng, r, 60), b = oracle::random_elt(rng, r, 60);
          CHECK(reduce(a * b, pl) == f.mul(reduce(a, pl), reduce(b, pl)));
          CHECK(reduce(a + b, pl) == f.add(reduce(a, pl), reduce(b, pl)));
          CHECK(f.is_zero(reduce(a, pl)) == (valuation(a, pl) >= 1));
        }
      }
    }
  }
}

TEST_CASE("reduction of field elements") {
  auto pl = places_above(3, Int(7))[0];
  CycFrac half = inverse(CycElt(3, Int(2)));
  ExtField k = residue_field(pl);
  CHECK(reduce(half, pl) == k.from_int(Int(4)));
  CHECK_THROWS_AS(reduce(inverse(CycElt(3, Int(7))), pl), NonIntegralError);
  CHECK(valuation(inverse(CycElt(3, Int(49))), pl) == -2);
  auto ram = places_above(3, Int(3))[0];
  CHECK(valuation(to_fraction(CycElt(3, Int(3))) * inverse(CycElt::pi(3)), ram) == 1);
  CHECK_THROWS_AS(reduce(inverse(CycElt::pi(3)), ram), NonIntegralError);
}

TEST_CASE("local ring inverse and names") {
  auto pl = places_above(7, Int(2))[1];
  LocalRing R(pl, 40);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    CycElt a = oracle::random_elt(rng, 7, 1000);
    if (valuation(a, pl) != 0) continue;
    auto x = R.from_cyc(a);
    auto prod = R.mul(x, R.inv(x));
    CHECK(prod == R.one());
  }
  CHECK(place_from_name(3, "7:1").g.c == places_above(3, Int(7))[1].g.c);
  CHECK_THROWS_AS(place_from_name(3, "7:2"), UsageError);
  CHECK_THROWS_AS(place_from_name(3, "8:0"), UsageError);
  CHECK_THROWS_AS(place_from_name(3, "seven"), UsageError);
}
