#include "superspin/metric.hpp"

#include <algorithm>
#include <numeric>

namespace superspin {

namespace {

template <class S>
using Vec = std::vector<Supernumber<S>>;

template <class S>
bool near_zero(const Supernumber<S>& z, double tol) {
  if constexpr (ScalarOps<S>::exact) {
    (void)tol;
    return z.is_zero();
  } else {
    return ell1_norm(z) <= tol;
  }
}

template <class S>
bool body_below(const S& b, double tol) {
  if constexpr (ScalarOps<S>::exact) {
    (void)tol;
    return ScalarOps<S>::is_zero(b);
  } else {
    return std::fabs(b) <= tol;
  }
}

std::string index_label(const char* name, int i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

std::string entry_label(int r, int c) {
  return "entry (" + std::to_string(r) + "," + std::to_string(c) + ")";
}

// Square block of a super matrix as its own (k|0) matrix.
template <class S>
SuperMatrix<S> block(const SuperMatrix<S>& g, int r0, int c0, int k) {
  SuperMatrix<S> out(g.config(), BlockShape{k, 0}, MatrixParity::general);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out.set(r, c, g(r0 + r, c0 + c));
  return out;
}

// x^T M y over a block of even entries.
template <class S>
Supernumber<S> form(const Vec<S>& x, const SuperMatrix<S>& mat, const Vec<S>& y) {
  Supernumber<S> acc(mat.config());
  const int k = static_cast<int>(x.size());
  for (int i = 0; i < k; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < k; ++j) {
      if (y[j].is_zero() || mat(i, j).is_zero()) continue;
      acc += x[i] * mat(i, j) * y[j];
    }
  }
  return acc;
}

template <class S>
Vec<S> unit(const AlgebraConfig& cfg, int k, int i) {
  Vec<S> v(k, Supernumber<S>(cfg));
  v[i] = Supernumber<S>::constant(cfg, S(1));
  return v;
}

// x += z * y, z even.
template <class S>
void axpy(Vec<S>& x, const Supernumber<S>& z, const Vec<S>& y) {
  if (z.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!y[i].is_zero()) x[i] += z * y[i];
}

template <class S>
SuperMatrix<S> from_columns(const AlgebraConfig& cfg, const std::vector<Vec<S>>& cols) {
  const int k = static_cast<int>(cols.size());
  SuperMatrix<S> out(cfg, BlockShape{k, 0}, MatrixParity::even);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < k; ++r) out.set(r, c, cols[c][r]);
  return out;
}

// Real transition T with T^T A T diagonal (nonzero, descending), by symmetric
// pivoted elimination. Exact over the rationals.
template <class S>
DenseMatrix<S> congruence_diagonalize(const DenseMatrix<S>& a) {
  const int m = a.rows();
  DenseMatrix<S> t = DenseMatrix<S>::identity(m);
  auto current = [&]() { return t.transpose() * a * t; };
  auto add_column = [&](int dst, int src, const S& factor) {
    for (int r = 0; r < m; ++r) t(r, dst) += factor * t(r, src);
  };
  for (int k = 0; k < m; ++k) {
    DenseMatrix<S> w = current();
    if (ScalarOps<S>::is_zero(w(k, k))) {
      int swap = -1;
      for (int j = k + 1; j < m && swap < 0; ++j)
        if (!ScalarOps<S>::is_zero(w(j, j))) swap = j;
      if (swap >= 0) {
        for (int r = 0; r < m; ++r) std::swap(t(r, k), t(r, swap));
      } else {
        int partner = -1;
        for (int j = k + 1; j < m && partner < 0; ++j)
          if (!ScalarOps<S>::is_zero(w(k, j))) partner = j;
        if (partner < 0) {
          throw Error(ErrorKind::DegenerateBody, "body of the even block is singular",
                      index_label("d", k));
        }
        add_column(k, partner, S(1));
      }
      w = current();
    }
    for (int j = k + 1; j < m; ++j) {
      if (ScalarOps<S>::is_zero(w(k, j))) continue;
      add_column(j, k, S(-1) * w(k, j) / w(k, k));
    }
  }
  DenseMatrix<S> w = current();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return w(x, x) > w(y, y); });
  DenseMatrix<S> sorted(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) sorted(r, c) = t(r, order[c]);
  return sorted;
}

template <class S>
bool is_diagonal(const DenseMatrix<S>& a) {
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (r != c && !ScalarOps<S>::is_zero(a(r, c))) return false;
  return true;
}

template <class S>
DenseMatrix<S> body_transition(const DenseMatrix<S>& body) {
  if constexpr (ScalarOps<S>::exact) {
    if (is_diagonal(body)) {
      const int m = body.rows();
      std::vector<int> order(m);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return body(x, x) > body(y, y); });
      DenseMatrix<S> perm(m, m);
      for (int c = 0; c < m; ++c) perm(order[c], c) = S(1);
      return perm;
    }
    return congruence_diagonalize(body);
  } else {
    return symmetric_eigen(body).vectors;
  }
}

template <class S>
double block_scale(const DenseMatrix<S>& body) {
  if constexpr (ScalarOps<S>::exact) {
    (void)body;
    return 0.0;
  } else {
    return 1e-10 * max_abs(body);
  }
}

}  // namespace

template <class S>
SuperMetric<S> validate_metric(const SuperMatrix<S>& g) {
  if (!conforms(g, MatrixParity::even)) {
    throw Error(ErrorKind::NotEven, "Gram matrix is not of even class");
  }
  const int m = g.shape().m;
  const int n = g.shape().n;
  if (n % 2 != 0) {
    throw Error(ErrorKind::OddDimensionOdd, "odd dimension must be even, got " + std::to_string(n));
  }
  double tol = 0.0;
  if constexpr (!ScalarOps<S>::exact) tol = 1e-12 * (1.0 + max_entry_norm(g));
  for (int r = 0; r < g.size(); ++r) {
    for (int c = r; c < g.size(); ++c) {
      // A and D = C^T are symmetric, B is skew.
      const bool skew = r >= m && c >= m;
      Supernumber<S> residual = skew ? g(r, c) + g(c, r) : g(r, c) - g(c, r);
      if (!near_zero(residual, tol)) {
        throw Error(ErrorKind::NotGradedSymmetric,
                    skew ? "odd-odd block is not skew" : "Gram matrix is not graded symmetric",
                    entry_label(r, c));
      }
    }
  }
  DenseMatrix<S> body = body_matrix(g);
  DenseMatrix<S> a(m, m), b(n, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) a(r, c) = body(r, c);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) b(r, c) = body(m + r, m + c);
  if (!body_invertible(a)) throw Error(ErrorKind::DegenerateBody, "body of A is singular", "A");
  if (!body_invertible(b)) throw Error(ErrorKind::DegenerateBody, "body of B is singular", "B");
  return SuperMetric<S>(g.with_parity(MatrixParity::even));
}

template <class S>
EvenOrthogonalization<S> orthogonalize_even(const SuperMetric<S>& metric) {
  const auto& g = metric.gram();
  const AlgebraConfig& cfg = g.config();
  const int m = metric.m();
  SuperMatrix<S> a = block(g, 0, 0, m);
  DenseMatrix<S> body = body_matrix(a);
  const double tol = block_scale(body);
  DenseMatrix<S> o = body_transition(body);

  // A in the body-diagonalizing basis.
  SuperMatrix<S> abar(cfg, BlockShape{m, 0}, MatrixParity::general);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Supernumber<S> acc(cfg);
      for (int k = 0; k < m; ++k) {
        if (ScalarOps<S>::is_zero(o(k, i))) continue;
        for (int l = 0; l < m; ++l) {
          if (ScalarOps<S>::is_zero(o(l, j)) || a(k, l).is_zero()) continue;
          acc += (o(k, i) * o(l, j)) * a(k, l);
        }
      }
      abar.set(i, j, acc);
    }
  }

  std::vector<Vec<S>> f;
  std::vector<Supernumber<S>> d, d_inv;
  for (int k = 0; k < m; ++k) {
    Vec<S> e = unit<S>(cfg, m, k);
    Vec<S> fk = e;
    for (int l = 0; l < k; ++l) {
      Supernumber<S> coef = form(e, abar, f[l]) * d_inv[l];
      axpy(fk, -coef, f[l]);
    }
    Supernumber<S> dk = form(fk, abar, fk);
    if (body_below(dk.body(), tol)) {
      throw Error(ErrorKind::DegenerateBody, "diagonal entry has vanishing body",
                  index_label("d", k));
    }
    d_inv.push_back(invert(dk));
    d.push_back(std::move(dk));
    f.push_back(std::move(fk));
  }

  std::vector<Vec<S>> cols(m, Vec<S>(m, Supernumber<S>(cfg)));
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < m; ++j)
        if (!ScalarOps<S>::is_zero(o(r, j)) && !f[c][j].is_zero()) cols[c][r] += o(r, j) * f[c][j];
  return {from_columns(cfg, cols), std::move(d)};
}

template <class S>
OddComplement<S> odd_complement(const SuperMetric<S>& metric, const EvenOrthogonalization<S>& even) {
  const auto& g = metric.gram();
  const AlgebraConfig& cfg = g.config();
  const int m = metric.m();
  const int n = metric.n();
  const auto& p0 = even.transition;
  if (p0.shape().m != m || static_cast<int>(even.d.size()) != m) {
    throw Error(ErrorKind::ShapeMismatch, "even transition does not match the metric");
  }
  std::vector<Supernumber<S>> d_inv;
  for (const auto& z : even.d) d_inv.push_back(invert(z));

  // Cbar = P0^T C, X = -eta^-1 Cbar.
  std::vector<Vec<S>> cbar(m, Vec<S>(n, Supernumber<S>(cfg)));
  std::vector<Vec<S>> x(m, Vec<S>(n, Supernumber<S>(cfg)));
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < n; ++a) {
      for (int k = 0; k < m; ++k)
        if (!p0(k, j).is_zero() && !g(k, m + a).is_zero()) cbar[j][a] += p0(k, j) * g(k, m + a);
      x[j][a] = -(d_inv[j] * cbar[j][a]);
    }
  }

  SuperMatrix<S> p1(cfg, g.shape(), MatrixParity::even);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) p1.set(r, c, p0(r, c));
    for (int a = 0; a < n; ++a) {
      Supernumber<S> acc(cfg);
      for (int j = 0; j < m; ++j)
        if (!p0(r, j).is_zero() && !x[j][a].is_zero()) acc += p0(r, j) * x[j][a];
      p1.set(r, m + a, acc);
    }
  }
  for (int a = 0; a < n; ++a) p1.set(m + a, m + a, Supernumber<S>::constant(cfg, S(1)));

  // B1 = B + Cbar^T X.
  SuperMatrix<S> b1(cfg, BlockShape{n, 0}, MatrixParity::general);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Supernumber<S> acc = g(m + a, m + b);
      for (int j = 0; j < m; ++j)
        if (!cbar[j][a].is_zero() && !x[j][b].is_zero()) acc += cbar[j][a] * x[j][b];
      b1.set(a, b, acc);
    }
  }
  if constexpr (!ScalarOps<S>::exact) {
    SuperMatrix<S> skew(cfg, BlockShape{n, 0}, MatrixParity::general);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) skew.set(a, b, (b1(a, b) - b1(b, a)) * 0.5);
    b1 = skew;
  }
  b1 = b1.with_parity(MatrixParity::even);

  SuperMatrix<S> gram(cfg, g.shape(), MatrixParity::even);
  for (int i = 0; i < m; ++i) gram.set(i, i, even.d[i]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gram.set(m + a, m + b, b1(a, b));
  return {std::move(p1), std::move(gram), std::move(b1)};
}

template <class S>
SuperMatrix<S> symplectic_reduce(const SuperMatrix<S>& odd_block) {
  const AlgebraConfig& cfg = odd_block.config();
  const int n = odd_block.size();
  if (n % 2 != 0) {
    throw Error(ErrorKind::OddDimensionOdd, "symplectic block needs even size, got " + std::to_string(n));
  }
  const double tol = block_scale(body_matrix(odd_block));
  std::vector<Vec<S>> remaining;
  for (int i = 0; i < n; ++i) remaining.push_back(unit<S>(cfg, n, i));

  std::vector<Vec<S>> cols;
  while (!remaining.empty()) {
    Vec<S> f = remaining.front();
    remaining.erase(remaining.begin());
    int best = -1;
    double best_mag = 0.0;
    Supernumber<S> z(cfg);
    for (int j = 0; j < static_cast<int>(remaining.size()); ++j) {
      Supernumber<S> w = form(f, odd_block, remaining[j]);
      const double mag = std::fabs(ScalarOps<S>::to_double(w.body()));
      if (mag > best_mag && !body_below(w.body(), tol)) {
        best = j;
        best_mag = mag;
        z = w;
      }
    }
    if (best < 0) {
      throw Error(ErrorKind::DegenerateBody, "no symplectic partner with nonzero body pairing",
                  index_label("f", static_cast<int>(cols.size())));
    }
    Vec<S> p = remaining[best];
    remaining.erase(remaining.begin() + best);
    const Supernumber<S> z_inv = invert(z);
    for (auto& v : p) v = z_inv * v;
    for (auto& v : remaining) {
      Supernumber<S> wp = form(v, odd_block, p);
      Supernumber<S> wf = form(v, odd_block, f);
      axpy(v, -wp, f);
      axpy(v, wf, p);
    }
    cols.push_back(std::move(f));
    cols.push_back(std::move(p));
  }
  return from_columns(cfg, cols);
}

template <class S>
bool CanonicalizationResult<S>::body_reducible() const {
  if (reducibility.size() != d.size()) return false;
  return std::all_of(reducibility.begin(), reducibility.end(),
                     [](const Reducibility<S>& r) { return r.condition_met; });
}

template <class S>
DenseMatrix<S> standard_symplectic(int n) {
  DenseMatrix<S> j(n, n);
  for (int k = 0; k + 1 < n; k += 2) {
    j(k, k + 1) = S(1);
    j(k + 1, k) = S(-1);
  }
  return j;
}

template <class S>
SuperMatrix<S> canonical_matrix(const AlgebraConfig& config, const std::vector<Supernumber<S>>& eta, int n) {
  const int m = static_cast<int>(eta.size());
  SuperMatrix<S> out(config, BlockShape{m, n}, MatrixParity::even);
  for (int i = 0; i < m; ++i) out.set(i, i, eta[i]);
  DenseMatrix<S> j = standard_symplectic<S>(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!ScalarOps<S>::is_zero(j(a, b))) out.set(m + a, m + b, Supernumber<S>::constant(config, j(a, b)));
  return out;
}

template <class S>
SuperMatrix<S> block_diagonal(const SuperMatrix<S>& top, const SuperMatrix<S>& bottom) {
  require_same_config(top.config(), bottom.config());
  const int m = top.size();
  const int n = bottom.size();
  SuperMatrix<S> out(top.config(), BlockShape{m, n}, MatrixParity::even);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out.set(r, c, top(r, c));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.set(m + r, m + c, bottom(r, c));
  return out;
}

template <class S>
CanonicalizationResult<S> canonical_form(const SuperMetric<S>& metric) {
  const AlgebraConfig& cfg = metric.gram().config();
  EvenOrthogonalization<S> even = orthogonalize_even(metric);
  OddComplement<S> odd = odd_complement(metric, even);
  SuperMatrix<S> q = symplectic_reduce(odd.odd_block);
  SuperMatrix<S> identity = SuperMatrix<S>::identity(cfg, BlockShape{metric.m(), 0});
  SuperMatrix<S> p = matmul(odd.transition, block_diagonal(identity, q)).with_parity(MatrixParity::even);
  SuperMatrix<S> gamma = canonical_matrix(cfg, even.d, metric.n());
  std::vector<Reducibility<S>> records;
  for (std::size_t i = 0; i < even.d.size(); ++i) {
    records.push_back(reducibility(even.d[i]));
    records.back().source = static_cast<int>(i);
  }
  return {std::move(p), std::move(gamma), std::move(even.d), std::move(records), {}, false};
}

template <class S>
Reducibility<S> reducibility(const Supernumber<S>& d) {
  const auto [beta, soul] = body_soul(d);
  if (ScalarOps<S>::is_zero(beta)) {
    throw Error(ErrorKind::DegenerateBody, "diagonal entry has zero body");
  }
  const S ratio = ell1_norm(soul) / ScalarOps<S>::abs(beta);
  const bool met = ratio < S(1);
  return {ratio, met, beta > S(0) ? 1 : -1, 0};
}

template <class S>
CanonicalizationResult<S> body_reduce(const CanonicalizationResult<S>& result, bool strict) {
  const AlgebraConfig& cfg = result.P.config();
  const int m = static_cast<int>(result.d.size());
  const int n = result.P.shape().n;
  std::vector<Supernumber<S>> lambda;
  std::vector<Reducibility<S>> records;
  for (int i = 0; i < m; ++i) {
    const auto [beta, soul] = body_soul(result.d[i]);
    if (ScalarOps<S>::is_zero(beta)) {
      throw Error(ErrorKind::DegenerateBody, "diagonal entry has zero body", index_label("d", i));
    }
    Reducibility<S> record = reducibility(result.d[i]);
    record.source = i;
    if (strict && !record.condition_met) {
      throw Error(ErrorKind::ConvergenceViolation,
                  "||s(d)|| / |beta(d)| = " + format_scalar(record.ratio) + " is not below 1",
                  index_label("d", i));
    }
    const S magnitude = ScalarOps<S>::abs(beta);
    const S inv_beta = S(1) / beta;
    const Supernumber<S> w = binomial_inverse_sqrt(soul * inv_beta, false);
    const std::optional<S> root = ScalarOps<S>::sqrt(magnitude);
    if (!root) {
      throw Error(ErrorKind::IrrationalScale,
                  "|beta(d)| = " + format_scalar(magnitude) + " has no rational square root",
                  index_label("d", i));
    }
    lambda.push_back(w * (S(1) / *root));
    records.push_back(record);
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(), [&](int i) { return records[i].sign > 0; });

  SuperMatrix<S> p(cfg, result.P.shape(), MatrixParity::even);
  for (int r = 0; r < result.P.size(); ++r) {
    for (int c = 0; c < m; ++c) p.set(r, c, result.P(r, order[c]) * lambda[order[c]]);
    for (int c = m; c < m + n; ++c) p.set(r, c, result.P(r, c));
  }
  CanonicalizationResult<S> out{std::move(p), SuperMatrix<S>(cfg, result.P.shape()), {}, {}, {}, true};
  for (int c = 0; c < m; ++c) {
    out.d.push_back(Supernumber<S>::constant(cfg, S(records[order[c]].sign)));
    out.reducibility.push_back(records[order[c]]);
    out.lambda.push_back(lambda[order[c]]);
  }
  out.Gamma = canonical_matrix(cfg, out.d, n);
  return out;
}

#define SUPERSPIN_INSTANTIATE(S)                                                                 \
  template SuperMetric<S> validate_metric(const SuperMatrix<S>&);                                \
  template EvenOrthogonalization<S> orthogonalize_even(const SuperMetric<S>&);                   \
  template OddComplement<S> odd_complement(const SuperMetric<S>&, const EvenOrthogonalization<S>&); \
  template SuperMatrix<S> symplectic_reduce(const SuperMatrix<S>&);                              \
  template struct CanonicalizationResult<S>;                                                     \
  template DenseMatrix<S> standard_symplectic<S>(int);                                           \
  template SuperMatrix<S> canonical_matrix(const AlgebraConfig&, const std::vector<Supernumber<S>>&, int); \
  template SuperMatrix<S> block_diagonal(const SuperMatrix<S>&, const SuperMatrix<S>&);          \
  template CanonicalizationResult<S> canonical_form(const SuperMetric<S>&);                      \
  template Reducibility<S> reducibility(const Supernumber<S>&);                                  \
  template CanonicalizationResult<S> body_reduce(const CanonicalizationResult<S>&, bool);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)

}  // namespace superspin
