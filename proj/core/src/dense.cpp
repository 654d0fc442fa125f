#include "superspin/dense.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace superspin {

template <class S>
DenseMatrix<S> DenseMatrix<S>::identity(int n) {
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = S(1);
  return out;
}

template <class S>
DenseMatrix<S> DenseMatrix<S>::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

template <class S>
bool DenseMatrix<S>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const S& x) { return ScalarOps<S>::is_zero(x); });
}

template <class S>
DenseMatrix<S> operator*(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  DenseMatrix<S> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (ScalarOps<S>::is_zero(a(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class S>
DenseMatrix<S> operator+(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  DenseMatrix<S> out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

template <class S>
DenseMatrix<S> operator-(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  DenseMatrix<S> out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

template <class S>
DenseMatrix<S> operator*(const S& s, const DenseMatrix<S>& a) {
  DenseMatrix<S> out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

template <class S>
double max_abs(const DenseMatrix<S>& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, ScalarOps<S>::to_double(ScalarOps<S>::abs(a(i, j))));
  return m;
}

template <class S>
std::optional<DenseMatrix<S>> solve_unique(const DenseMatrix<S>& a, const DenseMatrix<S>& b,
                                           double rel_tol) {
  const int rows = a.rows();
  const int unknowns = a.cols();
  const int rhs = b.cols();
  if (b.rows() != rows || unknowns > rows) return std::nullopt;
  DenseMatrix<S> m(rows, unknowns + rhs);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < unknowns; ++j) m(i, j) = a(i, j);
    for (int j = 0; j < rhs; ++j) m(i, unknowns + j) = b(i, j);
  }
  const double scale = std::max(max_abs(a), max_abs(b));
  auto negligible = [&](const S& x) {
    if constexpr (ScalarOps<S>::exact) {
      return ScalarOps<S>::is_zero(x);
    } else {
      return std::fabs(x) <= rel_tol * scale;
    }
  };
  for (int col = 0; col < unknowns; ++col) {
    int pivot = -1;
    double best = 0.0;
    for (int r = col; r < rows; ++r) {
      if (negligible(m(r, col))) continue;
      const double mag = ScalarOps<S>::to_double(ScalarOps<S>::abs(m(r, col)));
      if (pivot < 0 || mag > best) {
        pivot = r;
        best = mag;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(col, j), m(pivot, j));
    const S inv = S(1) / m(col, col);
    for (int j = col; j < m.cols(); ++j) m(col, j) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == col || ScalarOps<S>::is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      for (int j = col; j < m.cols(); ++j) m(r, j) -= factor * m(col, j);
    }
  }
  for (int r = unknowns; r < rows; ++r)
    for (int j = 0; j < rhs; ++j)
      if (!negligible(m(r, unknowns + j))) return std::nullopt;
  DenseMatrix<S> x(unknowns, rhs);
  for (int i = 0; i < unknowns; ++i)
    for (int j = 0; j < rhs; ++j) x(i, j) = m(i, unknowns + j);
  return x;
}

template <class S>
std::optional<DenseMatrix<S>> inverse(const DenseMatrix<S>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  return solve_unique(a, DenseMatrix<S>::identity(a.rows()));
}

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

DenseMatrix<double> from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix<double> a(int(m.rows()), int(m.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

}  // namespace

bool body_invertible(const DenseMatrix<double>& a) {
  if (a.rows() == 0) return true;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  const double largest = s(0);
  const double smallest = s(s.size() - 1);
  return largest > 0.0 && smallest > 1e-10 * largest;
}

bool body_invertible(const DenseMatrix<Rational>& a) {
  if (a.rows() == 0) return true;
  return inverse(a).has_value();
}

SymmetricEigen symmetric_eigen(const DenseMatrix<double>& a) {
  const int n = a.rows();
  SymmetricEigen out{std::vector<double>(n), DenseMatrix<double>(n, n)};
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return a(l, l) > a(r, r); });
    for (int k = 0; k < n; ++k) {
      out.values[k] = a(order[k], order[k]);
      out.vectors(order[k], k) = 1.0;
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
  const Eigen::VectorXd& w = solver.eigenvalues();       // ascending
  const Eigen::MatrixXd& v = solver.eigenvectors();
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;
    out.values[k] = w(src);
    int lead = 0;
    while (lead < n && std::fabs(v(lead, src)) < 1e-14) ++lead;
    const double sign = (lead < n && v(lead, src) < 0.0) ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

DenseMatrix<double> expm(const DenseMatrix<double>& a) {
  if (a.rows() == 0) return a;
  Eigen::MatrixXd e = to_eigen(a).exp();
  return from_eigen(e);
}

DenseMatrix<double> logm(const DenseMatrix<double>& a) {
  if (a.rows() == 0) return a;
  Eigen::MatrixXd l = to_eigen(a).log();
  return from_eigen(l);
}

template <class To, class From>
DenseMatrix<To> convert(const DenseMatrix<From>& a) {
  DenseMatrix<To> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if constexpr (std::is_same_v<To, From>) {
        out(i, j) = a(i, j);
      } else {
        out(i, j) = ScalarOps<To>::from_double(ScalarOps<From>::to_double(a(i, j)));
      }
    }
  return out;
}

#define SUPERSPIN_INSTANTIATE(S)                                                             \
  template class DenseMatrix<S>;                                                             \
  template DenseMatrix<S> operator*(const DenseMatrix<S>&, const DenseMatrix<S>&);           \
  template DenseMatrix<S> operator+(const DenseMatrix<S>&, const DenseMatrix<S>&);           \
  template DenseMatrix<S> operator-(const DenseMatrix<S>&, const DenseMatrix<S>&);           \
  template DenseMatrix<S> operator*(const S&, const DenseMatrix<S>&);                        \
  template double max_abs(const DenseMatrix<S>&);                                            \
  template std::optional<DenseMatrix<S>> solve_unique(const DenseMatrix<S>&,                 \
                                                      const DenseMatrix<S>&, double);        \
  template std::optional<DenseMatrix<S>> inverse(const DenseMatrix<S>&);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)
#undef SUPERSPIN_INSTANTIATE

template DenseMatrix<double> convert<double, double>(const DenseMatrix<double>&);
template DenseMatrix<double> convert<double, Rational>(const DenseMatrix<Rational>&);
template DenseMatrix<Rational> convert<Rational, double>(const DenseMatrix<double>&);
template DenseMatrix<Rational> convert<Rational, Rational>(const DenseMatrix<Rational>&);

}  // namespace superspin
