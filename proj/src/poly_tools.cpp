#include "supercert/poly_tools.hpp"

namespace supercert {

CycPoly::CycPoly(unsigned r, std::vector<CycElt> coeffs) : r_(r), c_(std::move(coeffs)) {
  for (const auto& x : c_) {
    if (x.r() != r_) throw UsageError("polynomial coefficient has the wrong cyclotomic order");
  }
  trim();
}

CycPoly CycPoly::monomial(unsigned r, std::size_t k, const CycElt& coeff) {
  std::vector<CycElt> c(k + 1, CycElt(r));
  c[k] = coeff;
  return CycPoly(r, std::move(c));
}

void CycPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool CycPoly::is_monic() const { return !c_.empty() && c_.back() == CycElt(r_, Int(1)); }

CycPoly operator+(const CycPoly& a, const CycPoly& b) {
  if (a.r_ != b.r_) throw UsageError("polynomials over different cyclotomic rings");
  std::vector<CycElt> c(std::max(a.c_.size(), b.c_.size()), CycElt(a.r_));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return CycPoly(a.r_, std::move(c));
}

CycPoly operator-(const CycPoly& a, const CycPoly& b) {
  if (a.r_ != b.r_) throw UsageError("polynomials over different cyclotomic rings");
  std::vector<CycElt> c(std::max(a.c_.size(), b.c_.size()), CycElt(a.r_));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return CycPoly(a.r_, std::move(c));
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
  if (a.r_ != b.r_) throw UsageError("polynomials over different cyclotomic rings");
  if (a.is_zero() || b.is_zero()) return CycPoly(a.r_);
  std::vector<CycElt> c(a.c_.size() + b.c_.size() - 1, CycElt(a.r_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return CycPoly(a.r_, std::move(c));
}

CycPoly operator*(const CycElt& s, const CycPoly& a) {
  std::vector<CycElt> c;
  c.reserve(a.c_.size());
  for (const auto& x : a.c_) c.push_back(s * x);
  return CycPoly(a.r_, std::move(c));
}

CycPoly derivative(const CycPoly& f) {
  std::vector<CycElt> c;
  for (std::size_t k = 1; k < f.coeffs().size(); ++k) {
    c.push_back(f.coeffs()[k] * Int(static_cast<unsigned long>(k)));
  }
  return CycPoly(f.r(), std::move(c));
}

CycElt eval(const CycPoly& f, const CycElt& a) {
  CycElt acc(f.r());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * a + *it;
  return acc;
}

CycPoly compose_shift(const CycPoly& f, const CycElt& a) {
  // Horner in the ring of polynomials: acc = acc * (x - a) + f_k.
  const unsigned r = f.r();
  std::vector<CycElt> acc;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    std::vector<CycElt> next(acc.size() + 1, CycElt(r));
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= a * acc[k];
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return CycPoly(r, std::move(acc));
}

CycElt bareiss_determinant(std::vector<std::vector<CycElt>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw UsageError("determinant of an empty matrix");
  const unsigned r = m[0][0].r();
  bool negate = false;
  CycElt prev(r, Int(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return CycElt(r);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    const bool trivial = prev == CycElt(r, Int(1));
    ExactDivisor div(prev);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        CycElt t = m[k][k] * m[i][j];
        if (!m[i][k].is_zero()) t -= m[i][k] * m[k][j];
        m[i][j] = trivial ? std::move(t) : div.divide(t);
      }
      m[i][k] = CycElt(r);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::vector<std::vector<CycElt>> sylvester_matrix(const CycPoly& f, const CycPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m < 0 || n < 0) throw UsageError("Sylvester matrix of a zero polynomial");
  const unsigned r = f.r();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<CycElt>> s(size, std::vector<CycElt>(size, CycElt(r)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) s[i][i + k] = f.coeffs()[m - k];
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = g.coeffs()[n - k];
  }
  return s;
}

CycElt resultant(const CycPoly& f, const CycPoly& g) {
  if (f.degree() + g.degree() == 0) return CycElt(f.r(), Int(1));
  return bareiss_determinant(sylvester_matrix(f, g));
}

CycElt discriminant(const CycPoly& f) {
  const int d = f.degree();
  if (d < 2) throw UsageError("discriminant needs degree at least 2");
  CycElt res = resultant(f, derivative(f));
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) res = -res;
  if (f.is_monic()) return res;
  auto q = exact_quotient(res, f.leading());
  if (!q) throw NonIntegralError("leading coefficient is not a unit");
  return *q;
}

FieldPoly<ExtField> reduce_poly(const CycPoly& f, const Place& place) {
  ExtField k = residue_field(place);
  std::vector<ExtField::Elem> c;
  for (const auto& a : f.coeffs()) c.push_back(reduce(a, place));
  return make_poly(k, std::move(c));
}

FieldPoly<ExtField> repeated_part(const CycPoly& f, const Place& place) {
  ExtField k = residue_field(place);
  FieldPoly<ExtField> fb = reduce_poly(f, place);
  if (fb.is_zero()) throw DegenerateInputError("polynomial reduces to zero at place " + place.name());
  return poly_gcd(k, fb, poly_derivative(k, fb));
}

bool squarefree_over_residue(const CycPoly& f, const Place& place) {
  return repeated_part(f, place).degree() == 0;
}

std::vector<LocalRing::Elem> to_local(const CycPoly& f, const LocalRing& R) {
  std::vector<LocalRing::Elem> out;
  out.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) out.push_back(R.from_cyc(a));
  return out;
}

std::vector<LocalRing::Elem> local_shift(const std::vector<LocalRing::Elem>& g, const LocalRing::Elem& a,
                                         const LocalRing& R) {
  std::vector<LocalRing::Elem> acc;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    std::vector<LocalRing::Elem> next(acc.size() + 1, R.zero());
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] = R.add(next[k + 1], acc[k]);
      next[k] = R.sub(next[k], R.mul(a, acc[k]));
    }
    next[0] = R.add(next[0], *it);
    acc = std::move(next);
  }
  return acc;
}

LocalRing::Elem local_eval(const std::vector<LocalRing::Elem>& g, const LocalRing::Elem& a, const LocalRing& R) {
  LocalRing::Elem acc = R.zero();
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = R.add(R.mul(acc, a), *it);
  return acc;
}

std::vector<LocalRing::Elem> local_derivative(const std::vector<LocalRing::Elem>& g, const LocalRing& R) {
  std::vector<LocalRing::Elem> out;
  for (std::size_t k = 1; k < g.size(); ++k) out.push_back(R.mul(R.from_int(Int(static_cast<unsigned long>(k))), g[k]));
  return out;
}

}  // namespace supercert
