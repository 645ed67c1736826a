#include "supercert/group_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "supercert/errors.hpp"
#include "supercert/finite_field.hpp"

namespace supercert {

// ------------------------------------------------------------ field tables

namespace {

std::vector<std::uint32_t> digits(std::uint32_t code, std::uint32_t ell, unsigned i) {
  std::vector<std::uint32_t> d(i);
  for (unsigned k = 0; k < i; ++k) {
    d[k] = code % ell;
    code /= ell;
  }
  return d;
}

std::uint32_t encode(const std::vector<std::uint32_t>& d, std::uint32_t ell) {
  std::uint32_t code = 0;
  for (std::size_t k = d.size(); k-- > 0;) code = code * ell + d[k];
  return code;
}

/// Schoolbook product of two codes reduced modulo the monic modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t ell, unsigned i,
                       const std::vector<std::uint32_t>& modulus) {
  const auto da = digits(a, ell, i), db = digits(b, ell, i);
  std::vector<std::uint64_t> prod(2 * i, 0);
  for (unsigned x = 0; x < i; ++x)
    for (unsigned y = 0; y < i; ++y) prod[x + y] = (prod[x + y] + std::uint64_t(da[x]) * db[y]) % ell;
  for (unsigned k = 2 * i - 1; k >= i; --k) {
    const std::uint64_t c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < i; ++j) prod[k - i + j] = (prod[k - i + j] + (ell - c) * modulus[j]) % ell;
  }
  std::vector<std::uint32_t> out(i);
  for (unsigned k = 0; k < i; ++k) out[k] = static_cast<std::uint32_t>(prod[k]);
  return encode(out, ell);
}

thread_local std::shared_ptr<const GfContext> tl_field;

}  // namespace

GfContext::GfContext(std::uint32_t ell, unsigned i) : ell_(ell), i_(i) {
  if (ell < 2 || !is_small_prime(ell)) throw UsageError("field characteristic must be prime");
  if (i == 0) throw UsageError("extension degree must be positive");
  std::uint64_t q = 1;
  for (unsigned k = 0; k < i; ++k) {
    q *= ell;
    if (q > (1u << 20)) throw BoundExceededError("field too large for table arithmetic");
  }
  q_ = static_cast<std::uint32_t>(q);
  PrimeField base{Int(ell)};
  const auto m = least_irreducible(base, i);
  for (const auto& c : m.c) modulus_.push_back(static_cast<std::uint32_t>(c.get_ui()));

  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1, k = 0;
    do {
      exp_[k++] = x;
      x = slow_mul(x, g, ell_, i_, modulus_);
    } while (x != 1 && k < q_ - 1);
    if (x == 1 && k == q_ - 1) break;
  }
  for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
}

std::uint32_t GfContext::add(std::uint32_t a, std::uint32_t b) const {
  if (i_ == 1) {
    const std::uint32_t s = a + b;
    return s >= ell_ ? s - ell_ : s;
  }
  std::uint32_t out = 0, scale = 1;
  for (unsigned k = 0; k < i_; ++k) {
    const std::uint32_t s = (a % ell_ + b % ell_) % ell_;
    out += s * scale;
    scale *= ell_;
    a /= ell_;
    b /= ell_;
  }
  return out;
}

std::uint32_t GfContext::neg(std::uint32_t a) const {
  if (i_ == 1) return a ? ell_ - a : 0;
  std::uint32_t out = 0, scale = 1;
  for (unsigned k = 0; k < i_; ++k) {
    const std::uint32_t d = a % ell_;
    out += (d ? ell_ - d : 0) * scale;
    scale *= ell_;
    a /= ell_;
  }
  return out;
}

std::uint32_t GfContext::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (i_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % ell_);
  std::uint32_t e = log_[a] + log_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

std::uint32_t GfContext::inv(std::uint32_t a) const {
  if (a == 0) throw DegenerateInputError("inverse of zero in a finite field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t GfContext::frobenius(std::uint32_t a) const {
  if (a == 0) return 0;
  return exp_[static_cast<std::uint64_t>(log_[a]) * ell_ % (q_ - 1)];
}

GfScope::GfScope(std::shared_ptr<const GfContext> ctx) : previous_(std::move(tl_field)) { tl_field = std::move(ctx); }
GfScope::~GfScope() { tl_field = std::move(previous_); }

const GfContext& GfScope::current() {
  if (!tl_field) throw UsageError("no finite field installed on this thread");
  return *tl_field;
}

std::shared_ptr<const GfContext> GfScope::current_shared() { return tl_field; }

Gf::Gf(int n) {
  if (n == 0 || n == 1) {
    v = static_cast<std::uint32_t>(n);
    return;
  }
  const auto ell = static_cast<long>(GfScope::current().ell());
  v = static_cast<std::uint32_t>(((n % ell) + ell) % ell);
}

Gf gf_pow(Gf a, std::uint64_t e) {
  Gf out(1);
  while (e) {
    if (e & 1) out *= a;
    a *= a;
    e >>= 1;
  }
  return out;
}

Gf gf_frobenius(Gf a, unsigned times) {
  const auto& F = GfScope::current();
  for (unsigned k = 0; k < times; ++k) a.v = F.frobenius(a.v);
  return a;
}

// ------------------------------------------------------------ linear algebra

GfMatrix gf_zero(Eigen::Index rows, Eigen::Index cols) { return GfMatrix::Constant(rows, cols, Gf()); }

GfMatrix gf_identity(Eigen::Index n) {
  GfMatrix m = gf_zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = Gf(1);
  return m;
}

GfMatrix standard_symplectic_form(Eigen::Index g) {
  GfMatrix j = gf_zero(2 * g, 2 * g);
  for (Eigen::Index k = 0; k < g; ++k) {
    j(k, g + k) = Gf(1);
    j(g + k, k) = -Gf(1);
  }
  return j;
}

namespace {

/// In-place reduction to row echelon form; returns pivot columns and the determinant factor.
std::vector<Eigen::Index> echelon(GfMatrix& m, Gf* det = nullptr) {
  std::vector<Eigen::Index> pivots;
  Gf sign(1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && m(piv, col) == Gf()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      m.row(piv).swap(m.row(row));
      sign = -sign;
    }
    const Gf inv = Gf(1) / m(row, col);
    sign *= m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Gf()) continue;
      const Gf f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  if (det) *det = sign;
  return pivots;
}

}  // namespace

Eigen::Index rank(GfMatrix m) { return static_cast<Eigen::Index>(echelon(m).size()); }

Gf determinant(GfMatrix m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  Gf factor;
  const auto piv = echelon(m, &factor);
  return static_cast<Eigen::Index>(piv.size()) == m.rows() ? factor : Gf();
}

GfMatrix inverse(const GfMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw UsageError("inverse of a non-square matrix");
  GfMatrix aug(n, 2 * n);
  aug << m, gf_identity(n);
  const auto piv = echelon(aug);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv[n - 1] >= n) throw DegenerateInputError("singular matrix");
  return aug.rightCols(n);
}

GfMatrix kernel(const GfMatrix& m) {
  GfMatrix e = m;
  const auto piv = echelon(e);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  GfMatrix out = gf_zero(m.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Eigen::Index f = free[k];
    out(f, static_cast<Eigen::Index>(k)) = Gf(1);
    for (std::size_t r = 0; r < piv.size(); ++r) out(piv[r], static_cast<Eigen::Index>(k)) = -e(static_cast<Eigen::Index>(r), f);
  }
  return out;
}

std::vector<Gf> charpoly(const GfMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw UsageError("characteristic polynomial of a non-square matrix");
  // Berkowitz: coefficient vectors from the leading term down
  std::vector<Gf> poly{Gf(1)};
  for (Eigen::Index r = 0; r < n; ++r) {
    std::vector<Gf> col(static_cast<std::size_t>(r) + 2);
    col[0] = Gf(1);
    col[1] = -a(r, r);
    if (r > 0) {
      GfVector v = a.block(0, r, r, 1);
      const auto row = a.block(r, 0, 1, r);
      const auto S = a.block(0, 0, r, r);
      for (Eigen::Index k = 0; k < r; ++k) {
        col[static_cast<std::size_t>(k) + 2] = -(row * v)(0, 0);
        v = S * v;
      }
    }
    // Toeplitz product with the previous polynomial
    std::vector<Gf> next(static_cast<std::size_t>(r) + 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) next[i] += col[i - j] * poly[j];
    poly = std::move(next);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

GfMatrix frobenius(const GfMatrix& m, unsigned times) {
  return m.unaryExpr([times](Gf x) { return gf_frobenius(x, times); });
}

std::optional<Gf> similitude_multiplier(const GfMatrix& m, const GfMatrix& form, bool unitary) {
  if (m.rows() != m.cols() || form.rows() != m.rows() || form.cols() != m.cols())
    throw UsageError("matrix and form sizes differ");
  GfMatrix sm = m;
  if (unitary) {
    const unsigned i = GfScope::current().degree();
    if (i % 2) throw UsageError("unitary forms need an even-degree field");
    sm = frobenius(m, i / 2);
  }
  const GfMatrix lhs = m.transpose() * form * sm;
  Gf chi;
  bool found = false;
  for (Eigen::Index r = 0; r < form.rows() && !found; ++r)
    for (Eigen::Index c = 0; c < form.cols() && !found; ++c)
      if (form(r, c) != Gf()) {
        chi = lhs(r, c) / form(r, c);
        found = true;
      }
  if (!found || chi == Gf()) return std::nullopt;
  if (lhs != GfMatrix(form * chi)) return std::nullopt;
  return chi;
}

SimilitudeElt make_similitude(GfMatrix m, GfMatrix form, bool unitary) {
  auto chi = similitude_multiplier(m, form, unitary);
  if (!chi) throw UsageError("matrix is not a similitude of the given form");
  return {std::move(m), std::move(form), *chi, unitary};
}

bool charpoly_functional_equation_check(const SimilitudeElt& s) {
  if (s.unitary) throw UsageError("the functional equation is stated for symplectic similitudes");
  const auto c = charpoly(s.matrix);
  const std::size_t two_g = c.size() - 1;
  const std::uint64_t g = two_g / 2;
  const Gf chi_g = gf_pow(s.multiplier, g);
  for (std::size_t k = 0; k <= two_g; ++k)
    if (chi_g * c[two_g - k] != gf_pow(s.multiplier, k) * c[k]) return false;
  return true;
}

GfMatrix symplectic_basis(const GfMatrix& form) {
  const Eigen::Index n = form.rows();
  if (n % 2 || form != GfMatrix(-form.transpose())) throw UsageError("form is not alternating of even size");
  auto B = [&](const GfVector& u, const GfVector& v) { return (u.transpose() * form * v)(0, 0); };
  std::vector<GfVector> pool;
  for (Eigen::Index k = 0; k < n; ++k) pool.push_back(gf_identity(n).col(k));
  std::vector<GfVector> es, fs;
  while (!pool.empty()) {
    GfVector e = pool.front();
    pool.erase(pool.begin());
    if (std::all_of(e.begin(), e.end(), [](Gf x) { return x == Gf(); })) continue;
    auto it = std::find_if(pool.begin(), pool.end(), [&](const GfVector& w) { return B(e, w) != Gf(); });
    if (it == pool.end()) throw DegenerateInputError("form is degenerate");
    GfVector f = *it / B(e, *it);
    pool.erase(it);
    for (auto& v : pool) {
      const Gf a = B(v, f), b = B(v, e);
      v = v - e * a + f * b;
    }
    es.push_back(e);
    fs.push_back(f);
  }
  GfMatrix P(n, n);
  const Eigen::Index g = n / 2;
  for (Eigen::Index k = 0; k < g; ++k) {
    P.col(k) = es[static_cast<std::size_t>(k)];
    P.col(g + k) = fs[static_cast<std::size_t>(k)];
  }
  return P;
}

SimilitudeElt build_zeta_element(unsigned r, unsigned n) {
  const auto& F = GfScope::current();
  if (F.degree() != 1) throw UsageError("build the zeta element over the prime field");
  if (F.ell() == r || F.ell() == 2) throw UsageError("ell must be odd and different from r");
  const Eigen::Index m = static_cast<Eigen::Index>(r) - 1;
  const Eigen::Index dim = m * static_cast<Eigen::Index>(n);
  if (dim > 12) throw BoundExceededError("zeta element limited to dimension 12");

  // multiplication by x on F[x]/(Phi_r), basis 1, x, ..., x^(m-1)
  GfMatrix X = gf_zero(m, m);
  for (Eigen::Index k = 0; k + 1 < m; ++k) X(k + 1, k) = Gf(1);
  for (Eigen::Index k = 0; k < m; ++k) X(k, m - 1) = -Gf(1);
  // Gram entries Tr(c x^(a-b)) with c = x - x^-1 and Tr(x^k) = r - 1 or -1
  auto tr = [&](long k) { return ((k % static_cast<long>(r)) + static_cast<long>(r)) % static_cast<long>(r) == 0 ? Gf(static_cast<int>(r) - 1) : -Gf(1); };
  GfMatrix G(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) G(a, b) = tr(static_cast<long>(a - b) + 1) - tr(static_cast<long>(a - b) - 1);

  GfMatrix Z = gf_zero(dim, dim), B = gf_zero(dim, dim);
  for (unsigned k = 0; k < n; ++k) {
    Z.block(k * m, k * m, m, m) = X;
    B.block(k * m, k * m, m, m) = G;
  }
  const GfMatrix P = symplectic_basis(B);
  const GfMatrix zeta = inverse(P) * Z * P;
  return make_similitude(zeta, standard_symplectic_form(dim / 2));
}

// ------------------------------------------------------------ centralisers

CentralizerCount centralizer_order(const SimilitudeElt& zeta, CentralizerGroup group, unsigned threads) {
  const auto ctx = GfScope::current_shared();
  if (!ctx) throw UsageError("no finite field installed on this thread");
  const Eigen::Index N = zeta.matrix.rows();
  const GfMatrix& Z = zeta.matrix;
  // vec(X Z - Z X) = (Z^T (x) I - I (x) Z) vec(X), column-major vec
  GfMatrix L = gf_zero(N * N, N * N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      for (Eigen::Index k = 0; k < N; ++k) {
        // (XZ)_{ij} = sum_k X_{ik} Z_{kj};  (ZX)_{ij} = sum_k Z_{ik} X_{kj}
        L(j * N + i, k * N + i) += Z(k, j);
        L(j * N + i, j * N + k) -= Z(i, k);
      }
  const GfMatrix K = kernel(L);
  const auto dim = static_cast<unsigned>(K.cols());
  const std::uint64_t q = ctx->size();
  std::uint64_t candidates = 1;
  for (unsigned k = 0; k < dim; ++k) {
    candidates *= q;
    if (candidates > (1ull << 28)) throw BoundExceededError("commutant has more than 2^28 elements");
  }

  // plain code arrays for the hot loop
  const std::size_t NN = static_cast<std::size_t>(N * N);
  std::vector<std::vector<std::uint32_t>> basis(dim, std::vector<std::uint32_t>(NN));
  for (unsigned b = 0; b < dim; ++b)
    for (std::size_t e = 0; e < NN; ++e) basis[b][e] = K(static_cast<Eigen::Index>(e), b).v;
  std::vector<std::uint32_t> form(NN);
  for (Eigen::Index c = 0; c < N; ++c)
    for (Eigen::Index r = 0; r < N; ++r) form[static_cast<std::size_t>(c * N + r)] = zeta.form(r, c).v;
  const bool similitude = group == CentralizerGroup::kGSp;
  const GfContext& F = *ctx;

  auto preserves = [&](const std::vector<std::uint32_t>& X, std::vector<std::uint32_t>& BX) -> bool {
    // BX = form * X, then compare X^T BX with mu * form
    for (Eigen::Index c = 0; c < N; ++c)
      for (Eigen::Index r = 0; r < N; ++r) {
        std::uint32_t s = 0;
        for (Eigen::Index k = 0; k < N; ++k)
          s = F.add(s, F.mul(form[static_cast<std::size_t>(k * N + r)], X[static_cast<std::size_t>(c * N + k)]));
        BX[static_cast<std::size_t>(c * N + r)] = s;
      }
    std::uint32_t mu = 0;
    bool have_mu = false;
    for (Eigen::Index c = 0; c < N; ++c)
      for (Eigen::Index r = 0; r < N; ++r) {
        std::uint32_t s = 0;
        for (Eigen::Index k = 0; k < N; ++k)
          s = F.add(s, F.mul(X[static_cast<std::size_t>(r * N + k)], BX[static_cast<std::size_t>(c * N + k)]));
        const std::uint32_t f = form[static_cast<std::size_t>(c * N + r)];
        if (!have_mu && f != 0) {
          mu = F.mul(s, F.inv(f));
          if (mu == 0 || (!similitude && mu != 1)) return false;
          have_mu = true;
        }
        if (s != F.mul(mu, f)) {
          if (have_mu || s != 0) return false;
        }
      }
    return have_mu;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  // split on the last coordinate's value
  const std::uint64_t top = dim ? q : 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, top));
  std::atomic<std::uint64_t> total{0};
  auto worker = [&](unsigned id) {
    std::vector<std::uint32_t> X(NN, 0), BX(NN, 0);
    std::uint64_t local = 0;
    for (std::uint64_t t = id; t < top; t += threads) {
      // X = (code t) * basis[dim-1]
      std::fill(X.begin(), X.end(), 0u);
      if (dim) {
        for (std::size_t e = 0; e < NN; ++e) X[e] = F.mul(static_cast<std::uint32_t>(t), basis[dim - 1][e]);
      }
      // odometer over the remaining coordinates, each step adding (new - old) * basis vector
      std::vector<std::uint32_t> digit(dim ? dim - 1 : 0, 0);
      for (;;) {
        if (preserves(X, BX)) ++local;
        std::size_t pos = 0;
        while (pos < digit.size()) {
          const std::uint32_t old = digit[pos];
          const std::uint32_t nxt = old + 1 == q ? 0 : old + 1;
          digit[pos] = nxt;
          const std::uint32_t delta = F.add(nxt, F.neg(old));
          for (std::size_t e = 0; e < NN; ++e) X[e] = F.add(X[e], F.mul(delta, basis[pos][e]));
          if (nxt != 0) break;
          ++pos;
        }
        if (pos == digit.size()) break;
      }
    }
    total += local;
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& th : pool) th.join();
  return {total.load(), dim, candidates};
}

std::uint64_t gl_order(std::uint64_t q, unsigned n) {
  unsigned __int128 out = 1, qn = 1;
  for (unsigned k = 0; k < n; ++k) qn *= q;
  unsigned __int128 qk = 1;
  for (unsigned k = 0; k < n; ++k) {
    out *= (qn - qk);
    qk *= q;
    if (out >> 63) throw BoundExceededError("group order overflows 63 bits");
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t gu_order(std::uint64_t q, unsigned n) {
  __int128 out = 1;
  for (unsigned k = 0; k < n * (n - 1) / 2; ++k) out *= q;
  __int128 qk = 1;
  for (unsigned k = 1; k <= n; ++k) {
    qk *= q;
    out *= (qk - (k % 2 ? -1 : 1));
    if (out >> 62) throw BoundExceededError("group order overflows 63 bits");
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t expected_sp_centralizer_order(unsigned r, unsigned n, std::uint32_t ell) {
  if (ell % r == 0) throw UsageError("ell must differ from r");
  unsigned i = 1;
  for (std::uint64_t x = ell % r; x != 1; x = x * ell % r) ++i;
  std::uint64_t out = 1;
  if (i % 2) {
    std::uint64_t q = 1;
    for (unsigned k = 0; k < i; ++k) q *= ell;
    for (unsigned k = 0; k < (r - 1) / (2 * i); ++k) out *= gl_order(q, n);
  } else {
    std::uint64_t q = 1;
    for (unsigned k = 0; k < i / 2; ++k) q *= ell;
    for (unsigned k = 0; k < (r - 1) / i; ++k) out *= gu_order(q, n);
  }
  return out;
}

Eigen::Index nu(const GfMatrix& m) {
  const Eigen::Index n = m.rows();
  const auto& F = GfScope::current();
  auto c = charpoly(m);
  Eigen::Index roots = 0, best = 0;
  for (std::uint32_t code = 0; code < F.size(); ++code) {
    const Gf lambda = Gf::raw(code);
    // multiplicity by synthetic division
    std::vector<Gf> p = c;
    Eigen::Index mult = 0;
    for (;;) {
      if (p.size() < 2) break;
      std::vector<Gf> quo(p.size() - 1);
      Gf acc;
      for (std::size_t k = p.size(); k-- > 0;) {
        acc = acc * lambda + p[k];
        if (k > 0) quo[k - 1] = acc;
      }
      if (acc != Gf()) break;
      ++mult;
      p = std::move(quo);
    }
    if (!mult) continue;
    roots += mult;
    best = std::max(best, n - rank(m - gf_identity(n) * lambda));
  }
  if (roots < n) throw DegenerateInputError("characteristic polynomial does not split; extend the field");
  return n - best;
}

}  // namespace supercert
