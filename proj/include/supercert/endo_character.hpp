#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercert/bigint.hpp"

namespace supercert {

/// Greatest integer strictly below (r - j) d / r, for 1 <= j <= r - 1.
long m_exponent(unsigned r, long d, long j);
/// m_1, ..., m_{r-1}.
std::vector<long> m_exponents(unsigned r, long d);

/// One factor theta^(ell^power * m_j) of the reduced endomorphism character on inertia above ell.
struct InertiaTerm {
  unsigned power = 0;
  long j = 0;
  long m = 0;
};

/// Terms for the embeddings psi_j, j = j0 ell^k mod r, that send the source place to lambda;
/// j0 is any one of them.
std::vector<InertiaTerm> inertia_terms(unsigned r, long d, const Int& ell, long j0);
/// sum_k ell^k m_{j0 ell^k} reduced mod ell^i - 1.
Int inertia_exponent(unsigned r, long d, const Int& ell, long j0);

enum class DetContext { kSplit, kNonsplit };

/// <a^u, b> with b of order 6 inside a cyclic group of order ell - 1 (split) or ell + 1
/// (norm-one subgroup, nonsplit), normalised to the single generator a^{s*}.
struct DetSubgroup {
  DetContext context = DetContext::kSplit;
  Int generator_exponent;  ///< s*, a divisor of the group order
  Int group_order;
  Int order() const { return divexact(group_order, generator_exponent); }
};

/// r = 3 only: u = ceil(g / 3). Throws UsageError for ell in {2, 3}.
DetSubgroup det_subgroup_r3(const Int& ell, long g);

/// gcd(m_{(r-1)/2}, m_{(r+1)/2}) == 1. Throws UsageError unless 2r | d.
bool gl_surjectivity_gcd(unsigned r, long d);

/// Residue classes of ell modulo `modulus`.
struct Congruence {
  Int modulus;
  std::vector<Int> residues;  ///< sorted, in [0, modulus)
  bool contains(const Int& ell) const;
  /// "5, 29 (mod 36)"
  std::string to_string() const;
};

/// Admissible classes of ell: one congruence per prime power (all must hold) and their
/// combination modulo the product.
struct DuClasses {
  unsigned r = 0;
  long d = 0;
  std::vector<Congruence> components;
  Congruence combined;
  /// Combined list when short, else one clause per component.
  std::string describe() const;
};

/// Direct evaluation for one delta: delta | ell + 1, gcd(d/r, (ell+1)/delta) = gcd(delta, (ell+1)/delta) = 1.
bool du_condition(unsigned r, long d, const Int& ell, long delta);
/// Some positive delta | 2r works.
bool du_condition_any_delta(unsigned r, long d, const Int& ell);

/// Odd ell = -1 mod r satisfying the condition with delta = 2r. Throws UsageError unless 2r | d.
DuClasses du_congruence_classes(unsigned r, long d);

enum class ImageFamily { kGL, kGU, kDU, kGLdet, kGUdet };
std::string to_string(ImageFamily family);

struct ImageDescriptor {
  ImageFamily family = ImageFamily::kGL;
  std::string representation;  ///< "rho_lambda" or "rho_ell"
  long n = 0;
  std::string field;           ///< "ell" or "ell^2"
  std::optional<std::pair<long, long>> det_exponents;
  std::string extension;       ///< e.g. "semidirect <chi_ell>", empty when none
  std::vector<Congruence> conditions;  ///< all must hold
  std::string conditions_text;
};

/// Exact images for 2r | d: GL for ell = 1 mod r, DU on the DU classes and, for r = 3,
/// the determinant-restricted families for rho_ell.
std::vector<ImageDescriptor> image_descriptors(unsigned r, long d);

}  // namespace supercert
