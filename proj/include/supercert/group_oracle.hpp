#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

namespace supercert {

/// Arithmetic tables for F_{ell^i}, q = ell^i <= 2^20. Elements are encoded as integers whose
/// base-ell digits are the coefficients in the basis 1, y, ..., y^(i-1); y is a root of the
/// lexicographically least monic irreducible polynomial of degree i.
class GfContext {
 public:
  GfContext(std::uint32_t ell, unsigned i);

  std::uint32_t ell() const { return ell_; }
  unsigned degree() const { return i_; }
  std::uint32_t size() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }  ///< ascending, monic

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  /// Frobenius x -> x^ell.
  std::uint32_t frobenius(std::uint32_t a) const;
  /// A generator of the multiplicative group.
  std::uint32_t primitive() const { return exp_[1]; }
  std::uint32_t power_of_primitive(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

 private:
  std::uint32_t ell_;
  unsigned i_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_;
};

/// Installs a field for Gf arithmetic on the current thread; restores the previous one on exit.
class GfScope {
 public:
  explicit GfScope(std::shared_ptr<const GfContext> ctx);
  ~GfScope();
  GfScope(const GfScope&) = delete;
  GfScope& operator=(const GfScope&) = delete;

  static const GfContext& current();
  static std::shared_ptr<const GfContext> current_shared();

 private:
  std::shared_ptr<const GfContext> previous_;
};

/// Element of the field installed by the innermost GfScope. Zero needs no field.
struct Gf {
  std::uint32_t v = 0;

  Gf() = default;
  Gf(int n);  // NOLINT: integers embed through the prime field
  static Gf raw(std::uint32_t code) {
    Gf g;
    g.v = code;
    return g;
  }

  friend Gf operator+(Gf a, Gf b) { return raw(GfScope::current().add(a.v, b.v)); }
  friend Gf operator-(Gf a, Gf b) { return raw(GfScope::current().add(a.v, GfScope::current().neg(b.v))); }
  friend Gf operator*(Gf a, Gf b) { return raw(GfScope::current().mul(a.v, b.v)); }
  friend Gf operator/(Gf a, Gf b) { return raw(GfScope::current().mul(a.v, GfScope::current().inv(b.v))); }
  Gf operator-() const { return raw(GfScope::current().neg(v)); }
  Gf& operator+=(Gf b) { return *this = *this + b; }
  Gf& operator-=(Gf b) { return *this = *this - b; }
  Gf& operator*=(Gf b) { return *this = *this * b; }
  Gf& operator/=(Gf b) { return *this = *this / b; }
  friend bool operator==(Gf a, Gf b) { return a.v == b.v; }
  friend bool operator!=(Gf a, Gf b) { return a.v != b.v; }
  friend bool operator<(Gf a, Gf b) { return a.v < b.v; }
  friend std::ostream& operator<<(std::ostream& os, Gf a) { return os << a.v; }
};

Gf gf_pow(Gf a, std::uint64_t e);
Gf gf_frobenius(Gf a, unsigned times = 1);

}  // namespace supercert

namespace Eigen {
template <>
struct NumTraits<supercert::Gf> : GenericNumTraits<supercert::Gf> {
  using Real = supercert::Gf;
  using NonInteger = supercert::Gf;
  using Literal = supercert::Gf;
  using Nested = supercert::Gf;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace supercert {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using GfMatrix = Mat<Gf>;
using GfVector = Eigen::Matrix<Gf, Eigen::Dynamic, 1>;

GfMatrix gf_identity(Eigen::Index n);
GfMatrix gf_zero(Eigen::Index rows, Eigen::Index cols);

/// Standard alternating form [[0, I_g], [-I_g, 0]].
GfMatrix standard_symplectic_form(Eigen::Index g);

/// Row echelon rank.
Eigen::Index rank(GfMatrix m);
/// Determinant by elimination.
Gf determinant(GfMatrix m);
/// Inverse; throws DegenerateInputError when singular.
GfMatrix inverse(const GfMatrix& m);
/// Basis of the right kernel, one column per vector.
GfMatrix kernel(const GfMatrix& m);

/// Characteristic polynomial det(x I - M), ascending, monic (division-free Berkowitz).
std::vector<Gf> charpoly(const GfMatrix& m);

/// Entrywise x -> x^(ell^times).
GfMatrix frobenius(const GfMatrix& m, unsigned times);

/// M^T B sigma(M) = chi B with sigma the identity (symplectic) or the order-2 Frobenius
/// (unitary); returns chi, or nothing when M is not a similitude of B.
std::optional<Gf> similitude_multiplier(const GfMatrix& m, const GfMatrix& form, bool unitary = false);

struct SimilitudeElt {
  GfMatrix matrix;
  GfMatrix form;
  Gf multiplier;
  bool unitary = false;
};

/// Throws UsageError when m is not a similitude of the form.
SimilitudeElt make_similitude(GfMatrix m, GfMatrix form, bool unitary = false);

/// chi^g c_{2g-k} = chi^k c_k for the characteristic polynomial c of a symplectic similitude.
bool charpoly_functional_equation_check(const SimilitudeElt& m);

/// P with P^T B P = standard form, for a non-degenerate alternating B.
GfMatrix symplectic_basis(const GfMatrix& form);

/// Order-r element of Sp_{n(r-1)}(ell) with characteristic polynomial Phi_r^n in the standard
/// form: n copies of multiplication by x on F_ell[x]/(Phi_r) with the form Tr(c a sigma(b)),
/// sigma(x) = x^-1, c = x - x^-1. Requires a prime field scope. Throws BoundExceededError
/// when n(r-1) > 12.
SimilitudeElt build_zeta_element(unsigned r, unsigned n);

enum class CentralizerGroup { kSp, kGSp };

struct CentralizerCount {
  std::uint64_t order = 0;
  unsigned commutant_dimension = 0;
  std::uint64_t candidates = 0;
};

/// Enumerates the commutant {X : X zeta = zeta X}, keeping the X preserving the form exactly (Sp)
/// or up to a non-zero multiplier (GSp). Throws BoundExceededError above 2^28 candidates.
CentralizerCount centralizer_order(const SimilitudeElt& zeta, CentralizerGroup group, unsigned threads = 0);

/// Closed forms for the centraliser of zeta_r in Sp_{n(r-1)}(ell): |GL_n(ell^i)|^(pairs) when the
/// order i of ell mod r is odd, |GU_n(ell^(i/2))|^t when it is even.
std::uint64_t gl_order(std::uint64_t q, unsigned n);
std::uint64_t gu_order(std::uint64_t q, unsigned n);
std::uint64_t expected_sp_centralizer_order(unsigned r, unsigned n, std::uint32_t ell);

/// dim V minus the largest eigenspace dimension. Throws DegenerateInputError when the
/// characteristic polynomial does not split over the current field.
Eigen::Index nu(const GfMatrix& m);

}  // namespace supercert
