#include "superspin/supermatrix.hpp"

#include <algorithm>
#include <map>

namespace superspin {

const char* to_string(MatrixParity p) {
  switch (p) {
    case MatrixParity::even: return "even";
    case MatrixParity::odd: return "odd";
    case MatrixParity::general: return "general";
  }
  return "general";
}

namespace {

std::string entry_label(int r, int c) {
  return "entry (" + std::to_string(r) + "," + std::to_string(c) + ")";
}

template <class S>
bool entry_conforms(const Supernumber<S>& z, bool diagonal_block, MatrixParity parity) {
  switch (parity) {
    case MatrixParity::general: return true;
    case MatrixParity::even: return diagonal_block ? z.is_even() : z.is_odd();
    case MatrixParity::odd: return diagonal_block ? z.is_odd() : z.is_even();
  }
  return true;
}

MatrixParity compose_parity(MatrixParity a, MatrixParity b) {
  if (a == MatrixParity::general || b == MatrixParity::general) return MatrixParity::general;
  return a == b ? MatrixParity::even : MatrixParity::odd;
}

template <class S>
double body_tolerance(const SuperMatrix<S>& a) {
  if constexpr (ScalarOps<S>::exact) {
    (void)a;
    return 0.0;
  } else {
    return 1e-12 * (1.0 + max_entry_norm(a));
  }
}

template <class S>
bool body_is_zero(const S& b, double tol) {
  if constexpr (ScalarOps<S>::exact) {
    (void)tol;
    return ScalarOps<S>::is_zero(b);
  } else {
    return std::fabs(b) <= tol;
  }
}

template <class S>
SuperMatrix<S> strip_body(const SuperMatrix<S>& a) {
  SuperMatrix<S> out(a.config(), a.shape(), MatrixParity::general);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) out.set(r, c, a(r, c).soul());
  return conforms(out, a.parity()) ? out.with_parity(a.parity()) : out;
}

template <class S>
void require_square_same(const SuperMatrix<S>& a, const SuperMatrix<S>& b) {
  require_same_config(a.config(), b.config());
  if (!(a.shape() == b.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "matrices have different block shapes");
  }
}

}  // namespace

template <class S>
SuperMatrix<S>::SuperMatrix(const AlgebraConfig& config, BlockShape shape, MatrixParity parity)
    : config_(config),
      shape_(shape),
      parity_(parity),
      entries_(std::size_t(shape.size()) * shape.size(), Supernumber<S>(config)) {
  if (shape.m < 0 || shape.n < 0) throw Error(ErrorKind::ShapeMismatch, "negative block size");
}

template <class S>
SuperMatrix<S> SuperMatrix<S>::identity(const AlgebraConfig& config, BlockShape shape) {
  SuperMatrix out(config, shape, MatrixParity::even);
  for (int i = 0; i < shape.size(); ++i) out.entries_[out.index(i, i)] = Supernumber<S>::constant(config, S(1));
  return out;
}

template <class S>
SuperMatrix<S> SuperMatrix<S>::from_entries(const AlgebraConfig& config, BlockShape shape,
                                            MatrixParity parity,
                                            std::vector<Supernumber<S>> entries) {
  SuperMatrix out(config, shape, MatrixParity::general);
  if (entries.size() != out.entries_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "entry count does not match block shape");
  }
  for (const auto& z : entries) require_same_config(config, z.config());
  out.entries_ = std::move(entries);
  return out.with_parity(parity);
}

template <class S>
SuperMatrix<S> SuperMatrix<S>::from_real(const AlgebraConfig& config, BlockShape shape,
                                         MatrixParity parity, const DenseMatrix<S>& values) {
  if (values.rows() != shape.size() || values.cols() != shape.size()) {
    throw Error(ErrorKind::ShapeMismatch, "real matrix does not match block shape");
  }
  SuperMatrix out(config, shape, MatrixParity::general);
  for (int r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape.size(); ++c)
      out.entries_[out.index(r, c)] = Supernumber<S>::constant(config, values(r, c));
  return out.with_parity(parity);
}

template <class S>
void SuperMatrix<S>::set(int r, int c, Supernumber<S> value) {
  require_same_config(config_, value.config());
  if (!entry_conforms(value, in_diagonal_block(r, c), parity_)) {
    throw Error(ErrorKind::ParityMismatch,
                std::string("value violates the ") + to_string(parity_) + " parity class",
                entry_label(r, c));
  }
  entries_[index(r, c)] = std::move(value);
}

template <class S>
bool SuperMatrix<S>::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& z) { return z.is_zero(); });
}

template <class S>
SuperMatrix<S> SuperMatrix<S>::with_parity(MatrixParity parity) const {
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      if (!entry_conforms((*this)(r, c), in_diagonal_block(r, c), parity)) {
        throw Error(ErrorKind::ParityMismatch,
                    std::string("entries violate the ") + to_string(parity) + " parity class",
                    entry_label(r, c));
      }
  SuperMatrix out = *this;
  out.parity_ = parity;
  return out;
}

template <class S>
SuperMatrix<S> SuperMatrix<S>::operator-() const {
  SuperMatrix out = *this;
  for (auto& z : out.entries_) z = -z;
  return out;
}

template <class S>
SuperMatrix<S>& SuperMatrix<S>::operator+=(const SuperMatrix& other) {
  require_square_same(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  if (parity_ != other.parity_) parity_ = MatrixParity::general;
  return *this;
}

template <class S>
SuperMatrix<S>& SuperMatrix<S>::operator-=(const SuperMatrix& other) {
  require_square_same(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  if (parity_ != other.parity_) parity_ = MatrixParity::general;
  return *this;
}

template <class S>
SuperMatrix<S>& SuperMatrix<S>::operator*=(const S& scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

template <class S>
bool conforms(const SuperMatrix<S>& a, MatrixParity parity) {
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c)
      if (!entry_conforms(a(r, c), a.in_diagonal_block(r, c), parity)) return false;
  return true;
}

template <class S>
MatrixParity classify(const SuperMatrix<S>& a) {
  if (conforms(a, MatrixParity::even)) return MatrixParity::even;
  if (conforms(a, MatrixParity::odd)) return MatrixParity::odd;
  return MatrixParity::general;
}

template <class S>
SuperMatrix<S> matmul(const SuperMatrix<S>& p, const SuperMatrix<S>& q) {
  require_square_same(p, q);
  const int n = p.size();
  SuperMatrix<S> out(p.config(), p.shape(), MatrixParity::general);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Supernumber<S> acc(p.config());
      for (int k = 0; k < n; ++k) {
        if (p(i, k).is_zero() || q(k, j).is_zero()) continue;
        acc += p(i, k) * q(k, j);
      }
      out.set(i, j, std::move(acc));
    }
  const MatrixParity parity = compose_parity(p.parity(), q.parity());
  return parity == MatrixParity::general ? out : out.with_parity(parity);
}

template <class S>
SuperMatrix<S> scale_left(const Supernumber<S>& z, const SuperMatrix<S>& a) {
  SuperMatrix<S> out(a.config(), a.shape(), MatrixParity::general);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) out.set(r, c, z * a(r, c));
  return out;
}

template <class S>
SuperMatrix<S> supertranspose(const SuperMatrix<S>& a) {
  if (!conforms(a, MatrixParity::even)) {
    throw Error(ErrorKind::ParityMismatch, "supertranspose is defined for even matrices");
  }
  const int m = a.shape().m;
  SuperMatrix<S> out(a.config(), a.shape(), MatrixParity::even);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) {
      // Output block (even row, odd column) is -D^T; everything else transposes.
      const bool negate = r < m && c >= m;
      out.set(r, c, negate ? -a(c, r) : a(c, r));
    }
  return out;
}

template <class S>
DenseMatrix<S> body_matrix(const SuperMatrix<S>& a) {
  DenseMatrix<S> out(a.size(), a.size());
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) out(r, c) = a(r, c).body();
  return out;
}

template <class S>
bool has_zero_body(const SuperMatrix<S>& a) {
  const double tol = body_tolerance(a);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c)
      if (!body_is_zero(a(r, c).body(), tol)) return false;
  return true;
}

template <class S>
SuperMatrix<S> invert_matrix(const SuperMatrix<S>& a) {
  const DenseMatrix<S> body = body_matrix(a);
  if (!body_invertible(body)) {
    throw Error(ErrorKind::BodyNotInvertible, "body matrix is singular");
  }
  auto body_inv = inverse(body);
  if (!body_inv) throw Error(ErrorKind::BodyNotInvertible, "body matrix is singular");
  const SuperMatrix<S> b_inv = SuperMatrix<S>::from_real(a.config(), a.shape(), MatrixParity::general, *body_inv);
  SuperMatrix<S> soul = strip_body(a);
  const SuperMatrix<S> step = -(b_inv * soul);
  SuperMatrix<S> term = SuperMatrix<S>::identity(a.config(), a.shape());
  SuperMatrix<S> sum = term;
  for (int k = 1; k <= a.config().generators; ++k) {
    term = term * step;
    if (term.is_zero()) break;
    sum += term;
  }
  SuperMatrix<S> out = sum * b_inv;
  if (conforms(a, MatrixParity::even) && conforms(out, MatrixParity::even)) {
    return out.with_parity(MatrixParity::even);
  }
  return out;
}

template <class S>
SuperMatrix<S> exp_zero_body(const SuperMatrix<S>& x) {
  if (!has_zero_body(x)) {
    throw Error(ErrorKind::NonZeroBody, "exp_zero_body needs a matrix with zero body");
  }
  const SuperMatrix<S> nil = strip_body(x);
  SuperMatrix<S> term = SuperMatrix<S>::identity(x.config(), x.shape());
  SuperMatrix<S> sum = term;
  for (int k = 1; k <= x.config().generators; ++k) {
    term = (term * nil) * S(S(1) / S(k));
    if (term.is_zero()) break;
    sum += term;
  }
  if (conforms(x, MatrixParity::even) && conforms(sum, MatrixParity::even)) {
    return sum.with_parity(MatrixParity::even);
  }
  return sum;
}

template <class S>
SuperMatrix<S> log_unipotent(const SuperMatrix<S>& u) {
  const SuperMatrix<S> id = SuperMatrix<S>::identity(u.config(), u.shape());
  const SuperMatrix<S> diff = u - id;
  if (!has_zero_body(diff)) {
    throw Error(ErrorKind::NotUnipotent, "log_unipotent needs body(U) = I");
  }
  const SuperMatrix<S> nil = strip_body(diff);
  SuperMatrix<S> power = nil;
  SuperMatrix<S> sum = nil;
  for (int k = 2; k <= u.config().generators; ++k) {
    power = power * nil;
    if (power.is_zero()) break;
    const S coeff = S((k % 2 == 0) ? -1 : 1) / S(k);
    sum += power * coeff;
  }
  if (conforms(u, MatrixParity::even) && conforms(sum, MatrixParity::even)) {
    return sum.with_parity(MatrixParity::even);
  }
  return sum;
}

template <class S>
SuperMatrix<S> commutator(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
  return x * y - y * x;
}

template <class S>
SuperMatrix<S> anticommutator(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
  return x * y + y * x;
}

template <class S>
S max_entry_norm(const SuperMatrix<S>& a) {
  S best(0);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) {
      S v = ell1_norm(a(r, c));
      if (v > best) best = v;
    }
  return best;
}

template <class S>
S total_norm(const SuperMatrix<S>& a) {
  S sum(0);
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) sum += ell1_norm(a(r, c));
  return sum;
}

namespace {

/// Vectorized bodies of real homogeneous basis matrices (one column each).
template <class S>
DenseMatrix<S> basis_columns(const std::vector<SuperMatrix<S>>& basis, BlockShape shape,
                             std::vector<MatrixParity>* parities) {
  const int n = shape.size();
  DenseMatrix<S> v(n * n, int(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& x = basis[k];
    if (!(x.shape() == shape)) throw Error(ErrorKind::ShapeMismatch, "basis element shape differs");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const auto& z = x(r, c);
        if (!(z.is_zero() || (z.terms().size() == 1 && z.terms().front().first.empty()))) {
          throw Error(ErrorKind::BasisDegenerate, "basis elements must be real matrices",
                      "basis[" + std::to_string(k) + "]");
        }
        v(r * n + c, int(k)) = z.body();
      }
    const MatrixParity p = classify(x);
    if (p == MatrixParity::general || x.is_zero()) {
      throw Error(ErrorKind::BasisDegenerate, "basis elements must be nonzero and homogeneous",
                  "basis[" + std::to_string(k) + "]");
    }
    if (parities) parities->push_back(p);
  }
  return v;
}

template <class S>
void require_independent(const DenseMatrix<S>& v) {
  if (v.cols() == 0) return;
  if (!solve_unique(v, v)) {
    throw Error(ErrorKind::BasisDegenerate, "basis elements are linearly dependent");
  }
}

}  // namespace

template <class S>
std::vector<Supernumber<S>> coordinates(const SuperMatrix<S>& m,
                                        const std::vector<SuperMatrix<S>>& basis) {
  const int n = m.size();
  const DenseMatrix<S> v = basis_columns(basis, m.shape(), nullptr);
  require_independent(v);
  std::vector<MultiIndex> indices;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (const auto& t : m(r, c).terms()) indices.push_back(t.first);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  std::vector<Supernumber<S>> coords(basis.size(), Supernumber<S>(m.config()));
  if (indices.empty()) return coords;
  DenseMatrix<S> rhs(n * n, int(indices.size()));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (const auto& [idx, coeff] : m(r, c).terms()) {
        const auto pos = std::lower_bound(indices.begin(), indices.end(), idx) - indices.begin();
        rhs(r * n + c, int(pos)) = coeff;
      }
  auto solved = solve_unique(v, rhs);
  if (!solved) throw Error(ErrorKind::NotInSpan, "matrix is not in the span of the basis");
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<typename Supernumber<S>::Term> terms;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const S& x = (*solved)(int(k), int(i));
      if (!ScalarOps<S>::is_zero(x)) terms.emplace_back(indices[i], x);
    }
    coords[k] = Supernumber<S>::from_terms(m.config(), std::move(terms));
  }
  return coords;
}

template <class S>
SuperMatrix<S> from_coordinates(const std::vector<Supernumber<S>>& coords,
                                const std::vector<SuperMatrix<S>>& basis) {
  if (coords.size() != basis.size() || basis.empty()) {
    throw Error(ErrorKind::LengthMismatch, "coordinate count does not match basis size");
  }
  SuperMatrix<S> out(basis.front().config(), basis.front().shape(), MatrixParity::general);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coords[k].is_zero()) continue;
    out += scale_left(coords[k], basis[k]);
  }
  return out;
}

template <class S>
AdOperator<S> ad_operator(const SuperMatrix<S>& x, const std::vector<SuperMatrix<S>>& basis,
                          std::string basis_tag) {
  const int n = x.size();
  const int k = int(basis.size());
  std::vector<MatrixParity> parities;
  const DenseMatrix<S> v = basis_columns(basis, x.shape(), &parities);
  require_independent(v);

  // Structure constants of the realized bracket, one column per (i, j).
  DenseMatrix<S> brackets(n * n, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const bool both_odd = parities[i] == MatrixParity::odd && parities[j] == MatrixParity::odd;
      const SuperMatrix<S> b = both_odd ? -anticommutator(basis[i], basis[j])
                                        : commutator(basis[i], basis[j]);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) brackets(r * n + c, i * k + j) = b(r, c).body();
    }
  auto structure = solve_unique(v, brackets);
  if (!structure) {
    throw Error(ErrorKind::NotInSpan, "basis does not span a closed bracket algebra");
  }

  const auto lambda = coordinates(x, basis);
  SuperMatrix<S> op(x.config(), BlockShape{k, 0}, MatrixParity::general);
  for (int l = 0; l < k; ++l)
    for (int j = 0; j < k; ++j) {
      Supernumber<S> acc(x.config());
      for (int i = 0; i < k; ++i) {
        const S& c = (*structure)(l, i * k + j);
        if (ScalarOps<S>::is_zero(c) || lambda[i].is_zero()) continue;
        acc += lambda[i] * c;
      }
      op.set(l, j, std::move(acc));
    }
  return AdOperator<S>{x, std::move(op), std::move(basis_tag)};
}

template <class S>
SuperMatrix<S> compose_operators(const SuperMatrix<S>& outer, const SuperMatrix<S>& inner) {
  require_square_same(outer, inner);
  const int k = outer.size();
  SuperMatrix<S> out(outer.config(), outer.shape(), MatrixParity::general);
  for (int p = 0; p < k; ++p)
    for (int j = 0; j < k; ++j) {
      Supernumber<S> acc(outer.config());
      for (int l = 0; l < k; ++l) {
        if (inner(l, j).is_zero() || outer(p, l).is_zero()) continue;
        acc += inner(l, j) * outer(p, l);
      }
      out.set(p, j, std::move(acc));
    }
  return out;
}

template <class S>
SpectrumVerdict spectrum_gate(const AdOperator<S>& ad, const S& xi) {
  if (!has_zero_body(ad.matrix)) {
    throw Error(ErrorKind::NonZeroBodyOperator, "spectrum gate needs an operator with zero body");
  }
  return ScalarOps<S>::is_zero(xi) ? SpectrumVerdict::singular : SpectrumVerdict::invertible;
}

#define SUPERSPIN_INSTANTIATE(S)                                                                 \
  template class SuperMatrix<S>;                                                                 \
  template MatrixParity classify(const SuperMatrix<S>&);                                         \
  template bool conforms(const SuperMatrix<S>&, MatrixParity);                                   \
  template SuperMatrix<S> matmul(const SuperMatrix<S>&, const SuperMatrix<S>&);                  \
  template SuperMatrix<S> scale_left(const Supernumber<S>&, const SuperMatrix<S>&);              \
  template SuperMatrix<S> supertranspose(const SuperMatrix<S>&);                                 \
  template DenseMatrix<S> body_matrix(const SuperMatrix<S>&);                                    \
  template bool has_zero_body(const SuperMatrix<S>&);                                            \
  template SuperMatrix<S> invert_matrix(const SuperMatrix<S>&);                                  \
  template SuperMatrix<S> exp_zero_body(const SuperMatrix<S>&);                                  \
  template SuperMatrix<S> log_unipotent(const SuperMatrix<S>&);                                  \
  template SuperMatrix<S> commutator(const SuperMatrix<S>&, const SuperMatrix<S>&);              \
  template SuperMatrix<S> anticommutator(const SuperMatrix<S>&, const SuperMatrix<S>&);          \
  template S max_entry_norm(const SuperMatrix<S>&);                                              \
  template S total_norm(const SuperMatrix<S>&);                                                  \
  template std::vector<Supernumber<S>> coordinates(const SuperMatrix<S>&,                        \
                                                   const std::vector<SuperMatrix<S>>&);          \
  template SuperMatrix<S> from_coordinates(const std::vector<Supernumber<S>>&,                   \
                                           const std::vector<SuperMatrix<S>>&);                  \
  template AdOperator<S> ad_operator(const SuperMatrix<S>&, const std::vector<SuperMatrix<S>>&,  \
                                     std::string);                                               \
  template SuperMatrix<S> compose_operators(const SuperMatrix<S>&, const SuperMatrix<S>&);       \
  template SpectrumVerdict spectrum_gate(const AdOperator<S>&, const S&);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)
#undef SUPERSPIN_INSTANTIATE

}  // namespace superspin
