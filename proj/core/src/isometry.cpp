#include "superspin/isometry.hpp"

#include <algorithm>

#include "superspin/metric.hpp"

namespace superspin {

namespace {

template <class S>
bool within(const S& residual, double tol) {
  if constexpr (ScalarOps<S>::exact) {
    (void)tol;
    return ScalarOps<S>::is_zero(residual);
  } else {
    return residual <= tol;
  }
}

template <class S>
void require_shape(const SuperMatrix<S>& a, const GammaForm<S>& gamma) {
  require_same_config(a.config(), gamma.config);
  if (!(a.shape() == gamma.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "matrix shape does not match Gamma");
  }
}

template <class S>
void require_even(const SuperMatrix<S>& a) {
  if (!conforms(a, MatrixParity::even)) {
    throw Error(ErrorKind::ParityMismatch, "matrix is not of even class");
  }
}

template <class S>
S max_norm_update(const S& current, const Supernumber<S>& z) {
  S v = ell1_norm(z);
  return v > current ? v : current;
}

std::vector<MultiIndex> indices_of_parity(int generators, bool odd) {
  std::vector<MultiIndex> out;
  const std::uint32_t count = std::uint32_t(1) << generators;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    MultiIndex j(bits);
    if (j.is_even() != odd) out.push_back(j);
  }
  std::stable_sort(out.begin(), out.end(), [](MultiIndex a, MultiIndex b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

template <class S>
GammaForm<S> GammaForm<S>::signature(const AlgebraConfig& config, int p, int q, int n) {
  std::vector<Supernumber<S>> eta;
  for (int i = 0; i < p; ++i) eta.push_back(Supernumber<S>::constant(config, S(1)));
  for (int i = 0; i < q; ++i) eta.push_back(Supernumber<S>::constant(config, S(-1)));
  return from_eta(config, std::move(eta), n);
}

template <class S>
GammaForm<S> GammaForm<S>::from_eta(const AlgebraConfig& config, std::vector<Supernumber<S>> eta, int n) {
  config.validate();
  if (n < 0 || n % 2 != 0) {
    throw Error(ErrorKind::OddDimensionOdd, "odd dimension must be even, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < eta.size(); ++i) {
    require_same_config(config, eta[i].config());
    if (!eta[i].is_even()) {
      throw Error(ErrorKind::ParityMismatch, "eta entry is not even", "eta[" + std::to_string(i) + "]");
    }
    if (ScalarOps<S>::is_zero(eta[i].body())) {
      throw Error(ErrorKind::DegenerateBody, "eta entry has zero body", "eta[" + std::to_string(i) + "]");
    }
  }
  return GammaForm{config, std::move(eta), n};
}

template <class S>
SuperMatrix<S> GammaForm<S>::matrix() const {
  return canonical_matrix(config, eta, n);
}

template <class S>
bool GammaForm<S>::is_body_reduced() const {
  return std::all_of(eta.begin(), eta.end(), [this](const Supernumber<S>& z) {
    return z == Supernumber<S>::constant(config, S(1)) || z == Supernumber<S>::constant(config, S(-1));
  });
}

template <class S>
S isometry_residual(const SuperMatrix<S>& n, const GammaForm<S>& gamma) {
  require_shape(n, gamma);
  require_even(n);
  const SuperMatrix<S> g = gamma.matrix();
  return max_entry_norm(matmul(matmul(supertranspose(n.with_parity(MatrixParity::even)), g), n) - g);
}

template <class S>
bool is_isometry(const SuperMatrix<S>& n, const GammaForm<S>& gamma) {
  const S residual = isometry_residual(n, gamma);
  const double scale = 1.0 + ScalarOps<S>::to_double(max_entry_norm(n));
  return within(residual, 1e-10 * scale * scale);
}

template <class S>
std::vector<int> MembershipReport<S>::violated() const {
  std::vector<int> out;
  for (int k = 0; k < 3; ++k)
    if (!condition[k]) out.push_back(k + 1);
  return out;
}

template <class S>
MembershipReport<S> lie_membership(const SuperMatrix<S>& l, const GammaForm<S>& gamma) {
  require_shape(l, gamma);
  require_even(l);
  const AlgebraConfig& cfg = gamma.config;
  const int m = gamma.m();
  const int n = gamma.n;
  const DenseMatrix<S> j = standard_symplectic<S>(n);
  auto a = [&](int r, int c) -> const Supernumber<S>& { return l(r, c); };
  auto c_blk = [&](int r, int c) -> const Supernumber<S>& { return l(r, m + c); };
  auto d_blk = [&](int r, int c) -> const Supernumber<S>& { return l(m + r, c); };
  auto b = [&](int r, int c) -> const Supernumber<S>& { return l(m + r, m + c); };

  MembershipReport<S> report{};
  report.residual = {S(0), S(0), S(0)};
  // (1) a^T eta + eta a
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      report.residual[0] = max_norm_update(report.residual[0], a(c, r) * gamma.eta[c] + gamma.eta[r] * a(r, c));
  // (2) b^T J + J b
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Supernumber<S> acc(cfg);
      for (int k = 0; k < n; ++k) {
        if (!ScalarOps<S>::is_zero(j(k, c))) acc += b(k, r) * j(k, c);
        if (!ScalarOps<S>::is_zero(j(r, k))) acc += j(r, k) * b(k, c);
      }
      report.residual[1] = max_norm_update(report.residual[1], acc);
    }
  }
  // (3) eta c - d^T J
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      Supernumber<S> acc = gamma.eta[r] * c_blk(r, c);
      for (int k = 0; k < n; ++k)
        if (!ScalarOps<S>::is_zero(j(k, c))) acc -= d_blk(k, r) * j(k, c);
      report.residual[2] = max_norm_update(report.residual[2], acc);
    }
  }

  const SuperMatrix<S> g = gamma.matrix();
  const SuperMatrix<S> even = l.with_parity(MatrixParity::even);
  report.single_residual = max_entry_norm(matmul(supertranspose(even), g) + matmul(g, even));

  const double tol = 1e-10 * (1.0 + ScalarOps<S>::to_double(total_norm(l)));
  for (int k = 0; k < 3; ++k) report.condition[k] = within(report.residual[k], tol);
  report.single_test = within(report.single_residual, tol);
  report.member = report.condition[0] && report.condition[1] && report.condition[2];
  report.consistent = report.member == report.single_test;
  return report;
}

template <class S>
std::vector<SuperMatrix<S>> LieBasis<S>::homogeneous() const {
  std::vector<SuperMatrix<S>> out = g0;
  out.insert(out.end(), g1.begin(), g1.end());
  return out;
}

template <class S>
SuperMatrix<S> LieBasis<S>::element(const BasisIndex& index) const {
  const SuperMatrix<S>& base = index.odd ? g1.at(index.base) : g0.at(index.base);
  SuperMatrix<S> out = scale_left(Supernumber<S>::monomial(base.config(), index.index, S(1)), base);
  return conforms(out, MatrixParity::even) ? out.with_parity(MatrixParity::even) : out;
}

template <class S>
LieBasis<S> lie_basis(const GammaForm<S>& gamma) {
  if (!gamma.is_body_reduced()) {
    throw Error(ErrorKind::NotBodyReduced, "basis enumeration needs eta entries equal to +-1");
  }
  const AlgebraConfig& cfg = gamma.config;
  const int m = gamma.m();
  const int n = gamma.n;
  const BlockShape shape = gamma.shape();
  std::vector<S> eta;
  for (const auto& z : gamma.eta) eta.push_back(z.body());
  const DenseMatrix<S> j = standard_symplectic<S>(n);

  LieBasis<S> basis;
  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      DenseMatrix<S> x(m + n, m + n);
      x(i, k) = eta[k];
      x(k, i) = S(-1) * eta[i];
      basis.g0.push_back(SuperMatrix<S>::from_real(cfg, shape, MatrixParity::even, x));
    }
  }
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int beta = alpha; beta < n; ++beta) {
      DenseMatrix<S> sym(n, n);
      sym(alpha, beta) = S(1);
      sym(beta, alpha) = S(1);
      const DenseMatrix<S> b = j * sym;
      DenseMatrix<S> x(m + n, m + n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) x(m + r, m + c) = b(r, c);
      basis.g0.push_back(SuperMatrix<S>::from_real(cfg, shape, MatrixParity::even, x));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int alpha = 0; alpha < n; ++alpha) {
      DenseMatrix<S> x(m + n, m + n);
      x(m + alpha, i) = S(1);
      // c = eta^-1 d^T J: row i of c is eta_i^-1 times row alpha of J.
      for (int col = 0; col < n; ++col) x(i, m + col) = j(alpha, col) / eta[i];
      basis.g1.push_back(SuperMatrix<S>::from_real(cfg, shape, MatrixParity::odd, x));
    }
  }

  const auto even_idx = indices_of_parity(cfg.generators, false);
  const auto odd_idx = indices_of_parity(cfg.generators, true);
  for (int k = 0; k < static_cast<int>(basis.g0.size()); ++k)
    for (MultiIndex idx : even_idx) basis.hJ.push_back({idx, false, k});
  for (int k = 0; k < static_cast<int>(basis.g1.size()); ++k)
    for (MultiIndex idx : odd_idx) basis.hJ.push_back({idx, true, k});
  return basis;
}

template <class S>
DenseMatrix<S> body_project(const SuperMatrix<S>& l) {
  const int m = l.shape().m;
  DenseMatrix<S> body = body_matrix(l);
  for (int r = 0; r < l.size(); ++r)
    for (int c = 0; c < l.size(); ++c)
      if ((r < m) != (c < m)) body(r, c) = S(0);
  return body;
}

template <class S>
S u_norm(const std::vector<Supernumber<S>>& coords, const std::vector<S>& basis_norms) {
  if (coords.size() != basis_norms.size()) {
    throw Error(ErrorKind::LengthMismatch, "coordinate and basis-norm lists differ in length");
  }
  S acc(0);
  for (std::size_t i = 0; i < coords.size(); ++i) acc += ell1_norm(coords[i]) * basis_norms[i];
  return acc;
}

template <class S>
bool in_body_algebra(const DenseMatrix<S>& x0, const GammaForm<S>& gamma) {
  const int m = gamma.m();
  const int n = gamma.n;
  if (x0.rows() != m + n || x0.cols() != m + n) {
    throw Error(ErrorKind::ShapeMismatch, "real matrix shape does not match Gamma");
  }
  const double tol = 1e-10 * (1.0 + max_abs(x0));
  auto ok = [&](const S& v) { return within(ScalarOps<S>::abs(v), tol); };
  const DenseMatrix<S> j = standard_symplectic<S>(n);
  for (int r = 0; r < m + n; ++r)
    for (int c = 0; c < m + n; ++c)
      if ((r < m) != (c < m) && !ok(x0(r, c))) return false;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (!ok(x0(c, r) * gamma.eta[c].body() + gamma.eta[r].body() * x0(r, c))) return false;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      S acc(0);
      for (int k = 0; k < n; ++k) acc += x0(m + k, m + r) * j(k, c) + j(r, k) * x0(m + k, m + c);
      if (!ok(acc)) return false;
    }
  }
  return true;
}

template <class S>
bool in_body_group(const DenseMatrix<S>& g, const GammaForm<S>& gamma) {
  const int m = gamma.m();
  const int size = m + gamma.n;
  if (g.rows() != size || g.cols() != size) {
    throw Error(ErrorKind::ShapeMismatch, "real matrix shape does not match Gamma");
  }
  const DenseMatrix<S> gb = body_matrix(gamma.matrix());
  const double scale = 1.0 + max_abs(g);
  const double tol = 1e-10 * scale * scale;
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c)
      if ((r < m) != (c < m) && !within(ScalarOps<S>::abs(g(r, c)), tol)) return false;
  const DenseMatrix<S> residual = g.transpose() * gb * g - gb;
  if constexpr (ScalarOps<S>::exact) {
    return residual.is_zero();
  } else {
    return max_abs(residual) <= tol;
  }
}

#define SUPERSPIN_INSTANTIATE(S)                                                              \
  template struct GammaForm<S>;                                                               \
  template S isometry_residual(const SuperMatrix<S>&, const GammaForm<S>&);                   \
  template bool is_isometry(const SuperMatrix<S>&, const GammaForm<S>&);                      \
  template struct MembershipReport<S>;                                                        \
  template MembershipReport<S> lie_membership(const SuperMatrix<S>&, const GammaForm<S>&);    \
  template struct LieBasis<S>;                                                                \
  template LieBasis<S> lie_basis(const GammaForm<S>&);                                        \
  template DenseMatrix<S> body_project(const SuperMatrix<S>&);                                \
  template S u_norm(const std::vector<Supernumber<S>>&, const std::vector<S>&);               \
  template bool in_body_algebra(const DenseMatrix<S>&, const GammaForm<S>&);                  \
  template bool in_body_group(const DenseMatrix<S>&, const GammaForm<S>&);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)

}  // namespace superspin
