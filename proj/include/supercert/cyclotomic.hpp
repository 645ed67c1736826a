#pragma once

#include <climits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supercert/bigint.hpp"
#include "supercert/errors.hpp"

namespace supercert {

using Rat = mpq_class;

/// Sentinel returned by valuation routines for the zero element.
constexpr long kInfiniteValuation = LONG_MAX;

/// Largest cyclotomic order accepted anywhere in the library.
constexpr unsigned kMaxCyclotomicOrder = 97;

bool is_supported_order(unsigned r);

/// Throws UsageError for r < 3 or r not prime, UnsupportedError for r > 97.
void require_supported_order(unsigned r);

/// Element of Z[zeta_r] (Scalar = Int) or Q(zeta_r) (Scalar = Rat) in the
/// power basis 1, zeta, ..., zeta^(r-2).
template <typename Scalar>
class Cyclotomic {
 public:
  Cyclotomic() = default;

  explicit Cyclotomic(unsigned r) : r_(r), c_(r >= 3 ? r - 1 : 0) {
    if (r < 3) throw UsageError("cyclotomic order must be an odd prime >= 3");
  }

  Cyclotomic(unsigned r, const Scalar& n) : Cyclotomic(r) { c_[0] = n; }

  /// Reduces an arbitrary-length coefficient list of zeta^0, zeta^1, ... modulo Phi_r.
  static Cyclotomic from_coeffs(unsigned r, const std::vector<Scalar>& coeffs) {
    std::vector<Scalar> full(r);
    for (std::size_t k = 0; k < coeffs.size(); ++k) full[k % r] += coeffs[k];
    return from_full(r, std::move(full));
  }

  static Cyclotomic zeta(unsigned r, unsigned k = 1) {
    std::vector<Scalar> full(r);
    full[k % r] = 1;
    return from_full(r, std::move(full));
  }

  /// The uniformiser 1 - zeta at the ramified place.
  static Cyclotomic pi(unsigned r) { return Cyclotomic(r, Scalar(1)) - zeta(r); }

  unsigned r() const { return r_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& operator[](std::size_t k) const { return c_[k]; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }

  /// True when the element is a rational number (all non-constant coefficients vanish).
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k) {
      if (c_[k] != 0) return false;
    }
    return true;
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& b) {
    check_same(b);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    return *this;
  }

  Cyclotomic& operator-=(const Cyclotomic& b) {
    check_same(b);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
    return *this;
  }

  Cyclotomic& operator*=(const Cyclotomic& b) {
    *this = *this * b;
    return *this;
  }

  Cyclotomic& operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Scalar& s) { return a *= s; }
  friend Cyclotomic operator*(const Scalar& s, Cyclotomic a) { return a *= s; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check_same(b);
    const unsigned r = a.r_;
    std::vector<Scalar> full(r);
    const std::size_t m = a.c_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t k = i + j;
        if (k >= r) k -= r;
        full[k] += a.c_[i] * b.c_[j];
      }
    }
    return from_full(r, std::move(full));
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.r_ == b.r_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Image under zeta -> zeta^j.
  Cyclotomic conjugate(unsigned j) const {
    if (j % r_ == 0) throw UsageError("conjugation exponent must be prime to r");
    std::vector<Scalar> full(r_);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      full[(k * static_cast<std::size_t>(j)) % r_] += c_[k];
    }
    return from_full(r_, std::move(full));
  }

  /// Value at zeta = 1 (the image in the residue field of the ramified place).
  Scalar at_one() const {
    Scalar s = 0;
    for (const auto& x : c_) s += x;
    return s;
  }

 private:
  static Cyclotomic from_full(unsigned r, std::vector<Scalar> full) {
    Cyclotomic out(r);
    const Scalar top = full[r - 1];
    for (unsigned k = 0; k + 1 < r; ++k) out.c_[k] = full[k] - top;
    return out;
  }

  void check_same(const Cyclotomic& b) const {
    if (r_ != b.r_) {
      throw UsageError("cyclotomic orders differ: " + std::to_string(r_) + " vs " +
                       std::to_string(b.r_));
    }
  }

  unsigned r_ = 0;
  std::vector<Scalar> c_;
};

using CycElt = Cyclotomic<Int>;
using CycFrac = Cyclotomic<Rat>;

template <typename Scalar>
Cyclotomic<Scalar> conjugate(const Cyclotomic<Scalar>& a, unsigned j) {
  return a.conjugate(j);
}

/// Product of the conjugates a^(sigma_j), j = 2..r-1 (so that a * cofactor = norm).
template <typename Scalar>
Cyclotomic<Scalar> norm_cofactor(const Cyclotomic<Scalar>& a) {
  Cyclotomic<Scalar> out(a.r(), Scalar(1));
  for (unsigned j = 2; j < a.r(); ++j) out = out * a.conjugate(j);
  return out;
}

/// Field norm to Q; an integer for integral input.
template <typename Scalar>
Scalar norm(const Cyclotomic<Scalar>& a) {
  if (a.is_zero()) return Scalar(0);
  return (a * norm_cofactor(a))[0];
}

CycFrac to_fraction(const CycElt& a);

/// Integral element equal to a; throws NonIntegralError if some coefficient is not an integer.
CycElt to_integral(const CycFrac& a);

/// Multiplicative inverse in Q(zeta_r); a must be non-zero.
CycFrac inverse(const CycElt& a);
CycFrac inverse(const CycFrac& a);

/// a / b when the quotient lies in Z[zeta_r], otherwise nullopt. b must be non-zero.
std::optional<CycElt> exact_quotient(const CycElt& a, const CycElt& b);

/// a / b, precomputed for repeated division by the same b.
class ExactDivisor {
 public:
  explicit ExactDivisor(const CycElt& b);
  /// Quotient; throws DegenerateInputError if the division is not exact.
  CycElt divide(const CycElt& a) const;
  std::optional<CycElt> try_divide(const CycElt& a) const;

 private:
  CycElt cofactor_;
  Int norm_;
};

/// Largest k with pi^k | a, pi = 1 - zeta; kInfiniteValuation for zero.
long pi_valuation(const CycElt& a);

/// a / pi; a must be divisible by pi.
CycElt divide_by_pi(const CycElt& a);

CycElt pi_power(unsigned r, unsigned long k);

/// Serialises as "[c0, c1, ..., c_{r-2}]".
std::string to_string(const CycElt& a);

/// Parses "[c0, ..., c_k]" (any length) and reduces modulo Phi_r.
CycElt parse_cyc(unsigned r, std::string_view text);

struct SplitData {
  unsigned r = 0;
  Int ell;
  unsigned i = 0;       ///< multiplicative order of ell mod r
  unsigned places = 0;  ///< (r-1)/i places above ell
  /// Pairs of places swapped by complex conjugation, (r-1)/(2i), when i is odd; 0 otherwise.
  unsigned t_pairs = 0;
  /// (r-1)/i when i is even; 0 otherwise.
  unsigned t = 0;
};

SplitData splitting_data(unsigned r, const Int& ell);

}  // namespace supercert
