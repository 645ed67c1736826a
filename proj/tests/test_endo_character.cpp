#include <numeric>
#include <set>

#include "doctest.h"
#include "supercert/endo_character.hpp"
#include "supercert/errors.hpp"
#include "supercert/finite_field.hpp"

using namespace supercert;

namespace {

// Largest m with m r < (r - j) d, by counting down.
long m_brute(long r, long d, long j) {
  long m = (r - j) * d;
  while (m * r >= (r - j) * d) --m;
  return m;
}

std::vector<long> primes_congruent(long residue, long modulus, std::size_t count, long start = 3) {
  std::vector<long> out;
  for (long p = start; out.size() < count; ++p)
    if (p % modulus == residue && is_small_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  return out;
}

// Order of the subgroup generated by the given elements, by closure under multiplication.
template <typename Field>
std::size_t closure_size(const Field& F, const std::vector<typename Field::Elem>& gens) {
  std::set<typename Field::Elem> seen{F.one()};
  std::vector<typename Field::Elem> frontier{F.one()};
  while (!frontier.empty()) {
    std::vector<typename Field::Elem> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = F.mul(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

template <typename Field>
Int elem_order(const Field& F, const typename Field::Elem& x) {
  Int k = 1;
  auto y = x;
  while (y != F.one()) {
    y = F.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("m exponents") {
  CHECK(m_exponent(3, 18, 1) == 11);
  CHECK(m_exponent(3, 18, 2) == 5);
  CHECK(m_exponent(3, 18, 1) - m_exponent(3, 18, 2) == 6);
  CHECK(m_exponents(3, 12) == std::vector<long>{7, 3});
  CHECK_THROWS_AS(m_exponent(3, 12, 3), UsageError);
  for (long r : {3L, 5L, 7L, 11L, 13L}) {
    for (long d = 1; d <= 120; ++d) {
      for (long j = 1; j < r; ++j) CHECK(m_exponent(static_cast<unsigned>(r), d, j) == m_brute(r, d, j));
      if (d % r) continue;
      for (long j = 1; j < r; ++j)
        CHECK(m_exponent(static_cast<unsigned>(r), d, j) + m_exponent(static_cast<unsigned>(r), d, r - j) == d - 2);
    }
  }
}

TEST_CASE("difference of the r = 3 exponents is ceil(g / 3)") {
  for (long d = 6; d <= 600; d += 6) {
    const long g = d - 2;
    CHECK(m_exponent(3, d, 1) - m_exponent(3, d, 2) == (g + 2) / 3);
  }
}

TEST_CASE("inertia exponents above ell") {
  SUBCASE("r = 7, ell = 2 mod 7") {
    const long d = 14;
    auto t = inertia_terms(7, d, Int(23), 1);
    REQUIRE(t.size() == 3);
    CHECK(t[0].j == 1);
    CHECK(t[1].j == 2);
    CHECK(t[2].j == 4);
    CHECK(t[0].m == m_brute(7, d, 1));  // floor_<(6d/7)
    CHECK(t[1].m == m_brute(7, d, 2));  // floor_<(5d/7)
    CHECK(t[2].m == m_brute(7, d, 4));  // floor_<(3d/7)
    auto bar = inertia_terms(7, d, Int(23), 6);
    CHECK(bar[0].j == 6);
    CHECK(bar[1].j == 5);
    CHECK(bar[2].j == 3);
  }
  SUBCASE("r = 7, ell = 4 mod 7") {
    auto t = inertia_terms(7, 14, Int(11), 1);
    REQUIRE(t.size() == 3);
    CHECK(t[1].j == 4);
    CHECK(t[2].j == 2);
    auto bar = inertia_terms(7, 14, Int(11), 6);
    CHECK(bar[1].j == 3);
    CHECK(bar[2].j == 5);
  }
  SUBCASE("level one is the cyclotomic power m_j") {
    for (long ell : primes_congruent(1, 7, 20))
      for (long j = 1; j < 7; ++j) CHECK(inertia_exponent(7, 28, Int(ell), j) == m_exponent(7, 28, j) % (ell - 1));
  }
  SUBCASE("level two reduces to m_j - m_{r-j} modulo ell + 1") {
    for (long r : {3L, 5L, 7L, 11L}) {
      for (long ell : primes_congruent(r - 1, r, 25)) {
        for (long d : {2 * r, 4 * r, 6 * r}) {
          for (long j = 1; j < r; ++j) {
            const Int e = inertia_exponent(static_cast<unsigned>(r), d, Int(ell), j);
            CHECK(e == mod_floor(Int(m_exponent(static_cast<unsigned>(r), d, j) +
                                     ell * m_exponent(static_cast<unsigned>(r), d, r - j)),
                                 Int(ell * ell - 1)));
            const long diff = m_exponent(static_cast<unsigned>(r), d, j) - m_exponent(static_cast<unsigned>(r), d, r - j);
            CHECK(mod_floor(e, Int(ell + 1)) == mod_floor(Int(diff), Int(ell + 1)));
            CHECK(diff == d * (r - 2 * j) / r);
          }
        }
      }
    }
  }
  SUBCASE("r = 3 level two: theta^(m_2 + ell m_1)") {
    CHECK(inertia_exponent(3, 12, Int(5), 2) == (3 + 5 * 7) % 24);
  }
}

TEST_CASE("determinant subgroup for r = 3") {
  CHECK(det_subgroup_r3(Int(7), 16).generator_exponent == 1);
  CHECK(det_subgroup_r3(Int(13), 10).generator_exponent == 2);
  CHECK(det_subgroup_r3(Int(5), 10).context == DetContext::kNonsplit);
  CHECK_THROWS_AS(det_subgroup_r3(Int(2), 10), UsageError);

  for (long g = 4; g <= 40; g += 3) {
    const long u = (g + 2) / 3;
    for (long ell : primes_congruent(1, 3, 12, 5)) {
      // F_ell^*: a a primitive root, b = a^((ell-1)/6)
      PrimeField F{Int(ell)};
      Int a = 2;
      while (elem_order(F, a) != ell - 1) ++a;
      const Int b = powmod(a, Int((ell - 1) / 6), Int(ell));
      const std::size_t size = closure_size(F, {powmod(a, Int(u), Int(ell)), b});
      auto ds = det_subgroup_r3(Int(ell), g);
      CHECK(ds.context == DetContext::kSplit);
      CHECK(ds.order() == Int(static_cast<unsigned long>(size)));
    }
    for (long ell : primes_congruent(2, 3, 6, 5)) {
      // norm-one subgroup of F_{ell^2}^*, generated by alpha^(ell-1)
      PrimeField base{Int(ell)};
      ExtField K(base, least_irreducible(base, 2));
      ExtField::Elem alpha = K.generator();
      for (long c = 0; elem_order(K, alpha) != ell * ell - 1; ++c) alpha = K.add(K.generator(), K.from_int(Int(c + 1)));
      const auto a = K.pow(alpha, Int(ell - 1));
      const auto b = K.pow(a, Int((ell + 1) / 6));
      const std::size_t size = closure_size(K, {K.pow(a, Int(u)), b});
      auto ds = det_subgroup_r3(Int(ell), g);
      CHECK(ds.context == DetContext::kNonsplit);
      CHECK(ds.order() == Int(static_cast<unsigned long>(size)));
    }
  }
}

TEST_CASE("GL surjectivity gcd") {
  CHECK(gl_surjectivity_gcd(3, 12));
  CHECK(m_exponent(3, 12, 1) == 7);
  CHECK(m_exponent(3, 12, 2) == 3);
  CHECK(gl_surjectivity_gcd(5, 20));
  CHECK(gl_surjectivity_gcd(7, 14));
  CHECK_THROWS_AS(gl_surjectivity_gcd(3, 9), UsageError);
  long checked = 0;
  for (long r = 3; r <= 97; r += 2) {
    if (!is_small_prime(static_cast<std::uint64_t>(r))) continue;
    for (long d = 2 * r; d <= 2000; d += 2 * r) {
      CHECK(gl_surjectivity_gcd(static_cast<unsigned>(r), d));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("DU congruence classes") {
  CHECK(du_congruence_classes(3, 12).describe() == "5, 29 (mod 36)");
  CHECK(du_congruence_classes(3, 12).combined.to_string() == "5, 29 (mod 36)");
  CHECK(du_congruence_classes(3, 30).describe() == "5, 29 (mod 36); ell != 4 (mod 5)");
  CHECK(du_congruence_classes(7, 14).describe() == "ell = 1 (mod 4); ell = 6 (mod 7), ell != 48 (mod 49)");
  CHECK(du_congruence_classes(5, 20).describe() == "9, 29, 69, 89 (mod 100)");
  // the same set as "ell = 1 mod 4 and ell = 4, 9, 14, 19 mod 25"
  for (long x = 0; x < 100; ++x) {
    const bool stated = x % 4 == 1 && (x % 25 == 4 || x % 25 == 9 || x % 25 == 14 || x % 25 == 19);
    CHECK(du_congruence_classes(5, 20).combined.contains(Int(x)) == stated);
  }
  CHECK_THROWS_AS(du_congruence_classes(3, 15), UsageError);

  // pointwise against the gcd conditions with delta = 2r
  for (auto [r, d] : std::vector<std::pair<long, long>>{{3, 12}, {3, 18}, {3, 30}, {5, 20}, {7, 14}, {7, 42}, {11, 66}}) {
    const auto du = du_congruence_classes(static_cast<unsigned>(r), d);
    for (long ell : primes_congruent(r - 1, r, 10000 / 7)) {
      const bool direct = du_condition(static_cast<unsigned>(r), d, Int(ell), 2 * r);
      CHECK(du.combined.contains(Int(ell)) == direct);
      bool all = true;
      for (const auto& c : du.components) all = all && c.contains(Int(ell));
      CHECK(all == direct);
      if (direct) CHECK(du_condition_any_delta(static_cast<unsigned>(r), d, Int(ell)));
    }
  }
  // the existential reading also admits ell = 17 for (3, 12) with delta = 2
  CHECK(du_condition(3, 12, Int(17), 2));
  CHECK_FALSE(du_congruence_classes(3, 12).combined.contains(Int(17)));
}

TEST_CASE("image descriptors") {
  auto d12 = image_descriptors(3, 12);
  REQUIRE(d12.size() == 4);
  CHECK(d12[0].family == ImageFamily::kGL);
  CHECK(d12[0].n == 10);
  CHECK(d12[1].family == ImageFamily::kDU);
  CHECK(d12[1].conditions_text == "5, 29 (mod 36)");
  CHECK(d12[2].family == ImageFamily::kGLdet);
  CHECK(d12[2].det_exponents == std::make_pair(4L, 6L));
  CHECK(d12[3].family == ImageFamily::kGUdet);
  CHECK(d12[3].conditions_text == "2 (mod 3)");
  auto d18 = image_descriptors(3, 18);
  CHECK(d18[2].det_exponents == std::make_pair(6L, 6L));
  CHECK(d18[2].n == 16);
  CHECK(image_descriptors(7, 14).size() == 2);
}
