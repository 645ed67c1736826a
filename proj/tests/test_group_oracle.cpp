#include <random>

#include "doctest.h"
#include "supercert/errors.hpp"
#include "supercert/group_oracle.hpp"

using namespace supercert;

namespace {

std::shared_ptr<const GfContext> field(std::uint32_t ell, unsigned i = 1) { return std::make_shared<GfContext>(ell, i); }

GfMatrix from_ints(Eigen::Index n, std::initializer_list<int> xs) {
  GfMatrix m(n, n);
  auto it = xs.begin();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Gf(*it++);
  return m;
}

// Symplectic transvection w -> w + a <w, v> v in the standard form.
GfMatrix transvection(const GfVector& v, Gf a, const GfMatrix& J) {
  return gf_identity(v.size()) + (v * (v.transpose() * J.transpose())) * a;
}

GfMatrix random_gsp(std::mt19937_64& rng, Eigen::Index g, std::uint32_t ell) {
  const GfMatrix J = standard_symplectic_form(g);
  std::uniform_int_distribution<int> coeff(0, static_cast<int>(ell) - 1), unit(1, static_cast<int>(ell) - 1);
  GfMatrix m = gf_identity(2 * g);
  for (int k = 0; k < 8; ++k) {
    GfVector v(2 * g);
    for (Eigen::Index i = 0; i < 2 * g; ++i) v(i) = Gf(coeff(rng));
    m = m * transvection(v, Gf(coeff(rng)), J);
  }
  GfMatrix d = gf_identity(2 * g);
  const Gf mu(unit(rng));
  for (Eigen::Index i = 0; i < g; ++i) d(i, i) = mu;
  return m * d;
}

// Brute-force count of 2x2 matrices over F_ell with X Z = Z X and det X = 1.
std::uint64_t sl2_centralizer_brute(const GfMatrix& z, std::uint32_t ell) {
  std::uint64_t count = 0;
  GfMatrix x(2, 2);
  for (std::uint32_t a = 0; a < ell; ++a)
    for (std::uint32_t b = 0; b < ell; ++b)
      for (std::uint32_t c = 0; c < ell; ++c)
        for (std::uint32_t d = 0; d < ell; ++d) {
          x << Gf::raw(a), Gf::raw(b), Gf::raw(c), Gf::raw(d);
          if (x * z == z * x && x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0) == Gf(1)) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("finite field tables") {
  auto F25 = field(5, 2);
  GfScope scope(F25);
  CHECK(F25->size() == 25);
  const Gf a = Gf::raw(F25->primitive());
  CHECK(gf_pow(a, 24) == Gf(1));
  CHECK(gf_pow(a, 12) == Gf(-1));
  CHECK(gf_pow(a, 8) != Gf(1));
  for (std::uint32_t x = 1; x < 25; ++x) {
    CHECK(Gf::raw(x) / Gf::raw(x) == Gf(1));
    CHECK(gf_frobenius(Gf::raw(x), 2) == Gf::raw(x));
    CHECK(gf_frobenius(Gf::raw(x)) == gf_pow(Gf::raw(x), 5));
  }
  CHECK(Gf(7) == Gf(2));
  CHECK_THROWS_AS(GfContext(4, 1), UsageError);
}

TEST_CASE("scopes nest and restore") {
  GfScope outer(field(7));
  CHECK(Gf(3) * Gf(5) == Gf(1));
  {
    GfScope inner(field(11));
    CHECK(Gf(3) * Gf(4) == Gf(1));
  }
  CHECK(GfScope::current().ell() == 7);
}

TEST_CASE("linear algebra over F_7") {
  GfScope scope(field(7));
  const GfMatrix m = from_ints(3, {1, 2, 3, 0, 1, 4, 5, 6, 0});
  CHECK(determinant(m) == Gf(1));
  CHECK(inverse(m) * m == gf_identity(3));
  const auto c = charpoly(m);
  REQUIRE(c.size() == 4);
  CHECK(c[3] == Gf(1));
  CHECK(c[2] == -Gf(2));            // -trace
  CHECK(c[0] == -determinant(m));   // (-1)^3 det
  const GfMatrix s = from_ints(2, {1, 2, 2, 4});
  CHECK(rank(s) == 1);
  const GfMatrix k = kernel(s);
  REQUIRE(k.cols() == 1);
  CHECK(s * k == gf_zero(2, 1));
  CHECK_THROWS_AS(inverse(s), DegenerateInputError);
}

TEST_CASE("symplectic basis puts a form in standard shape") {
  GfScope scope(field(11));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(0, 10);
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GfMatrix a(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 4; ++c) a(r, c) = Gf(coeff(rng));
    const GfMatrix b = a - GfMatrix(a.transpose());
    if (determinant(b) == Gf()) {
      CHECK_THROWS_AS(symplectic_basis(b), DegenerateInputError);
      continue;
    }
    const GfMatrix p = symplectic_basis(b);
    CHECK(GfMatrix(p.transpose() * b * p) == standard_symplectic_form(2));
    ++built;
  }
  CHECK(built > 20);
}

TEST_CASE("characteristic polynomial functional equation on GSp_4(7)") {
  GfScope scope(field(7));
  std::mt19937_64 rng(20261015);
  const GfMatrix J = standard_symplectic_form(2);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto s = make_similitude(random_gsp(rng, 2, 7), J);
    REQUIRE(charpoly_functional_equation_check(s));
    REQUIRE(determinant(s.matrix) == gf_pow(s.multiplier, 2));
  }
  // a non-similitude is rejected
  CHECK_THROWS_AS(make_similitude(from_ints(4, {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2}), J), UsageError);
}

TEST_CASE("unitary multiplier over F_25") {
  GfScope scope(field(5, 2));
  const GfMatrix H = gf_identity(2);
  const Gf a = Gf::raw(GfScope::current().primitive());
  GfMatrix m = gf_identity(2) * a;
  const auto chi = similitude_multiplier(m, H, true);
  REQUIRE(chi);
  CHECK(*chi == gf_pow(a, 6));  // a^(1 + 5)
  CHECK_FALSE(similitude_multiplier(m, H, false) == std::optional<Gf>(*chi));
}

TEST_CASE("zeta elements") {
  SUBCASE("r = 3, n = 1 over F_7") {
    GfScope scope(field(7));
    const auto z = build_zeta_element(3, 1);
    CHECK(z.multiplier == Gf(1));
    const GfMatrix z3 = z.matrix * z.matrix * z.matrix;
    CHECK(z3 == gf_identity(2));
    CHECK(charpoly(z.matrix) == std::vector<Gf>{Gf(1), Gf(1), Gf(1)});
  }
  SUBCASE("r = 3, n = 2 over F_5") {
    GfScope scope(field(5));
    const auto z = build_zeta_element(3, 2);
    CHECK(z.matrix.rows() == 4);
    CHECK(z.matrix * z.matrix * z.matrix == gf_identity(4));
    CHECK(charpoly(z.matrix) == std::vector<Gf>{Gf(1), Gf(2), Gf(3), Gf(2), Gf(1)});
  }
  SUBCASE("r = 5 and r = 7") {
    GfScope scope(field(11));
    const auto z5 = build_zeta_element(5, 1);
    GfMatrix p = gf_identity(4);
    for (int k = 0; k < 5; ++k) p = p * z5.matrix;
    CHECK(p == gf_identity(4));
    const auto z7 = build_zeta_element(7, 2);
    CHECK(z7.matrix.rows() == 12);
    CHECK_THROWS_AS(build_zeta_element(7, 3), BoundExceededError);
  }
  SUBCASE("argument checks") {
    GfScope scope(field(3));
    CHECK_THROWS_AS(build_zeta_element(3, 1), UsageError);
    GfScope ext(field(5, 2));
    CHECK_THROWS_AS(build_zeta_element(3, 1), UsageError);
  }
}

TEST_CASE("centraliser of zeta_3") {
  SUBCASE("Sp_2(5) against brute force") {
    GfScope scope(field(5));
    const auto z = build_zeta_element(3, 1);
    const auto count = centralizer_order(z, CentralizerGroup::kSp, 1);
    CHECK(count.order == 6);
    CHECK(count.order == sl2_centralizer_brute(z.matrix, 5));
    CHECK(count.order == expected_sp_centralizer_order(3, 1, 5));
    CHECK(count.commutant_dimension == 2);
  }
  SUBCASE("Sp_4(5)") {
    GfScope scope(field(5));
    const auto z = build_zeta_element(3, 2);
    const auto count = centralizer_order(z, CentralizerGroup::kSp);
    CHECK(count.order == 720);
    CHECK(count.order == gu_order(5, 2));
    CHECK(count.commutant_dimension == 8);
    const auto gsp = centralizer_order(z, CentralizerGroup::kGSp);
    CHECK(gsp.order == 720 * 4);
  }
  SUBCASE("Sp_2(7)") {
    GfScope scope(field(7));
    const auto z = build_zeta_element(3, 1);
    const auto count = centralizer_order(z, CentralizerGroup::kSp, 2);
    CHECK(count.order == 6);
    CHECK(count.order == sl2_centralizer_brute(z.matrix, 7));
    CHECK(count.order == gl_order(7, 1));
    CHECK(centralizer_order(z, CentralizerGroup::kGSp).order == 6 * 6);
  }
  SUBCASE("r = 5 over F_11 and F_19") {
    for (std::uint32_t ell : {11u, 19u}) {
      GfScope scope(field(ell));
      const auto z = build_zeta_element(5, 1);
      CHECK(centralizer_order(z, CentralizerGroup::kSp).order == expected_sp_centralizer_order(5, 1, ell));
    }
  }
}

TEST_CASE("closed-form group orders") {
  CHECK(gl_order(5, 1) == 4);
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(3, 2) == 48);
  CHECK(gu_order(5, 1) == 6);
  CHECK(gu_order(2, 2) == 18);
  CHECK(gu_order(5, 2) == 720);
  CHECK(expected_sp_centralizer_order(3, 1, 7) == 6);
  CHECK(expected_sp_centralizer_order(3, 2, 5) == 720);
  CHECK(expected_sp_centralizer_order(5, 1, 11) == 100);
  CHECK(expected_sp_centralizer_order(5, 1, 19) == 400);
}

TEST_CASE("nu") {
  SUBCASE("over F_7") {
    GfScope scope(field(7));
    CHECK(nu(gf_identity(4)) == 0);
    const GfMatrix J = standard_symplectic_form(2);
    GfVector v(4);
    v << Gf(1), Gf(2), Gf(0), Gf(3);
    CHECK(nu(transvection(v, Gf(1), J)) == 1);
    GfMatrix d = gf_identity(4);
    d(0, 0) = Gf(3);  // a primitive sixth root of unity mod 7
    CHECK(nu(d) == 1);
    CHECK_THROWS_AS(nu(from_ints(2, {0, 1, 3, 0})), DegenerateInputError);  // x^2 - 3 is irreducible
  }
  SUBCASE("over F_25") {
    GfScope scope(field(5, 2));
    GfMatrix d = gf_identity(3);
    d(0, 0) = Gf::raw(GfScope::current().power_of_primitive(4));  // order 6
    CHECK(gf_pow(d(0, 0), 6) == Gf(1));
    CHECK(gf_pow(d(0, 0), 3) != Gf(1));
    CHECK(nu(d) == 1);
    GfScope base(field(5));
    CHECK_THROWS_AS(nu(from_ints(2, {0, 1, 2, 0})), DegenerateInputError);
  }
}
