#pragma once
// Discriminant of a polynomial over Z[zeta_3] through the complex embedding
// zeta -> exp(2 pi i / 3): roots by a double-precision eigen solve, Newton polish at
// 100 digits, then prod_{i<j} (a_i - a_j)^2 rounded back to A + B zeta.

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>
#include <optional>
#include <vector>

#include "supercert/cyclotomic.hpp"

namespace oracle {

using BigComplex = boost::multiprecision::cpp_complex_100;
using BigReal = boost::multiprecision::cpp_bin_float_100;

struct ComplexDisc {
  supercert::CycElt value;
  double rounding_error = 0;  ///< max distance of A, B from the nearest integers
};

inline BigComplex embed(const supercert::CycElt& a) {
  const BigReal half = BigReal(1) / 2;
  const BigReal s3 = boost::multiprecision::sqrt(BigReal(3)) / 2;
  const BigComplex w(-half, s3);
  BigComplex acc(0);
  BigComplex pw(1);
  for (const auto& c : a.coeffs()) {
    acc += BigComplex(BigReal(c.get_str(10))) * pw;
    pw *= w;
  }
  return acc;
}

/// Only for monic f over Z[zeta_3] with distinct roots; nullopt if Newton does not converge.
inline std::optional<ComplexDisc> complex_discriminant(const std::vector<supercert::CycElt>& f) {
  const int d = static_cast<int>(f.size()) - 1;
  std::vector<BigComplex> a;
  for (const auto& c : f) a.push_back(embed(c));
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) {
    comp(k, d - 1) = -std::complex<double>(static_cast<double>(a[k].real()), static_cast<double>(a[k].imag()));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<BigComplex> roots;
  for (int k = 0; k < d; ++k) {
    std::complex<double> z0 = es.eigenvalues()[k];
    BigComplex z(BigReal(z0.real()), BigReal(z0.imag()));
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      BigComplex p = a[d], dp = 0;
      for (int j = d - 1; j >= 0; --j) {
        dp = dp * z + p;
        p = p * z + a[j];
      }
      if (abs(dp) == 0) break;
      BigComplex step = p / dp;
      z -= step;
      if (abs(step) < BigReal("1e-90")) {
        converged = true;
        break;
      }
    }
    if (!converged) return std::nullopt;
    roots.push_back(z);
  }
  BigComplex disc(1);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) disc *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
  // disc = A + B w with w = -1/2 + i sqrt(3)/2.
  const BigReal s3 = boost::multiprecision::sqrt(BigReal(3)) / 2;
  BigReal B = disc.imag() / s3;
  BigReal A = disc.real() + B / 2;
  BigReal Ar = boost::multiprecision::round(A), Br = boost::multiprecision::round(B);
  ComplexDisc out;
  out.rounding_error = static_cast<double>(std::max(abs(A - Ar), abs(B - Br)));
  out.value = supercert::CycElt::from_coeffs(
      3, {supercert::Int(Ar.str(0, std::ios_base::fixed).substr(0, Ar.str(0, std::ios_base::fixed).find('.'))),
          supercert::Int(Br.str(0, std::ios_base::fixed).substr(0, Br.str(0, std::ios_base::fixed).find('.')))});
  return out;
}

}  // namespace oracle
