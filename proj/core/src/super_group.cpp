#include "superspin/super_group.hpp"

#include <cmath>
#include <numbers>

namespace superspin {

namespace {

using Poly = std::map<std::string, Rational>;

Poly truncated_product(const Poly& a, const Poly& b, std::size_t max_degree) {
  Poly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b)
      if (wa.size() + wb.size() <= max_degree) out[wa + wb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

std::vector<Poly> build_bch_terms() {
  const std::size_t top = BCHOrderConfig::kMaxOrder;
  // Z = e^x e^y - 1
  Poly z;
  Rational fa(1);
  for (std::size_t a = 0; a <= top; ++a) {
    if (a > 0) fa *= Rational(static_cast<long>(a));
    Rational fb(1);
    for (std::size_t b = 0; a + b <= top; ++b) {
      if (b > 0) fb *= Rational(static_cast<long>(b));
      if (a + b == 0) continue;
      z[std::string(a, 'x') + std::string(b, 'y')] = Rational(1) / (fa * fb);
    }
  }
  // W(Z) = sum (-1)^(k+1) Z^k / k
  Poly w;
  Poly power = z;
  for (std::size_t k = 1; k <= top; ++k) {
    const Rational c(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    for (const auto& [word, coeff] : power) w[word] += c * coeff;
    power = truncated_product(power, z, top);
  }
  std::vector<Poly> terms(top + 1);
  for (auto& [word, coeff] : w) {
    coeff.canonicalize();
    if (sgn(coeff) != 0) terms[word.size()][word] = coeff;
  }
  return terms;
}

template <class S>
S coefficient_as(const Rational& c) {
  if constexpr (ScalarOps<S>::exact) {
    return c;
  } else {
    return c.get_d();
  }
}

template <class S>
SuperMatrix<S> real_matrix(const AlgebraConfig& cfg, BlockShape shape, const DenseMatrix<S>& g) {
  if (g.rows() != shape.size() || g.cols() != shape.size()) {
    throw Error(ErrorKind::ShapeMismatch, "body matrix does not match the block shape");
  }
  return SuperMatrix<S>::from_real(cfg, shape, MatrixParity::general, g);
}

template <class S>
SuperMatrix<S> keep_parity(const SuperMatrix<S>& value, MatrixParity parity) {
  return conforms(value, parity) ? value.with_parity(parity) : value;
}

template <class S>
SuperMatrix<S> conjugate(const DenseMatrix<S>& g, const DenseMatrix<S>& g_inv, const SuperMatrix<S>& y) {
  const SuperMatrix<S> left = real_matrix(y.config(), y.shape(), g);
  const SuperMatrix<S> right = real_matrix(y.config(), y.shape(), g_inv);
  return keep_parity(matmul(matmul(left, y), right), y.parity());
}

template <class S>
void require_g0(const DenseMatrix<S>& x0, const GammaForm<S>& gamma) {
  if (!in_body_algebra(x0, gamma)) {
    throw Error(ErrorKind::NotInG0, "real matrix violates the body Lie algebra conditions");
  }
}

template <class S>
DenseMatrix<S> checked_inverse(const DenseMatrix<S>& g) {
  std::optional<DenseMatrix<S>> inv = inverse(g);
  if (!inv) throw Error(ErrorKind::BodyNotInvertible, "body group element is singular");
  return *inv;
}

}  // namespace

void BCHOrderConfig::validate() const {
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorKind::InvalidConfig,
                "max_order must lie in [1, " + std::to_string(kMaxOrder) + "], got " + std::to_string(max_order));
  }
}

const std::map<std::string, Rational>& bch_term(int order) {
  static const std::vector<Poly> terms = build_bch_terms();
  if (order < 1 || order > BCHOrderConfig::kMaxOrder) {
    throw Error(ErrorKind::InvalidConfig, "no BCH term of order " + std::to_string(order));
  }
  return terms[order];
}

template <class S>
SuperMatrix<S> validate_nil(const SuperMatrix<S>& x, const GammaForm<S>& gamma) {
  if (!has_zero_body(x)) throw Error(ErrorKind::NonZeroBody, "element of n must have zero body");
  const MembershipReport<S> report = lie_membership(x, gamma);
  if (!report.member) {
    std::string where = "condition";
    for (int k : report.violated()) where += " (" + std::to_string(k) + ")";
    throw Error(ErrorKind::NotInLieAlgebra, "matrix is not in the isometry Lie algebra", where);
  }
  return x.with_parity(MatrixParity::even);
}

template <class S>
SuperMatrix<S> diamond(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
  require_same_config(x.config(), y.config());
  if (!(x.shape() == y.shape())) throw Error(ErrorKind::ShapeMismatch, "operands differ in shape");
  return log_unipotent(matmul(exp_zero_body(x), exp_zero_body(y)));
}

template <class S>
S lie_norm(const SuperMatrix<S>& x) {
  return S(2) * total_norm(x);
}

template <class S>
SuperMatrix<S> bch_series(const SuperMatrix<S>& x, const SuperMatrix<S>& y, const BCHOrderConfig& cfg) {
  cfg.validate();
  require_same_config(x.config(), y.config());
  if (!(x.shape() == y.shape())) throw Error(ErrorKind::ShapeMismatch, "operands differ in shape");
  if (!has_zero_body(x) || !has_zero_body(y)) {
    const double norm = ScalarOps<S>::to_double(lie_norm(x) + lie_norm(y));
    if (norm > std::numbers::ln2) {
      throw Error(ErrorKind::NormBoundViolation,
                  "||X|| + ||Y|| = " + format_scalar(norm) + " exceeds ln 2 for non-nilpotent input");
    }
  }
  std::map<std::string, SuperMatrix<S>> words;
  words.emplace("x", x);
  words.emplace("y", y);
  auto word_product = [&](const std::string& w) -> const SuperMatrix<S>& {
    for (std::size_t len = 2; len <= w.size(); ++len) {
      const std::string prefix = w.substr(0, len);
      if (words.count(prefix)) continue;
      const SuperMatrix<S>& head = words.at(prefix.substr(0, len - 1));
      words.emplace(prefix, matmul(head, prefix.back() == 'x' ? x : y));
    }
    return words.at(w);
  };
  SuperMatrix<S> sum(x.config(), x.shape(), MatrixParity::general);
  for (int order = 1; order <= cfg.max_order; ++order)
    for (const auto& [word, coeff] : bch_term(order)) sum += word_product(word) * coefficient_as<S>(coeff);
  const MatrixParity target = x.parity() == y.parity() ? x.parity() : MatrixParity::general;
  return keep_parity(sum, target);
}

template <class S>
SuperMatrix<S> act_by(const DenseMatrix<S>& g, const SuperMatrix<S>& y) {
  return conjugate(g, checked_inverse(g), y);
}

template <class S>
SuperMatrix<S> action_alpha(const DenseMatrix<S>& x0, const SuperMatrix<S>& y, const GammaForm<S>& gamma) {
  if constexpr (ScalarOps<S>::exact) {
    (void)x0, (void)y, (void)gamma;
    throw Error(ErrorKind::ModeUnsupported,
                "the real matrix exponential is float64 only; use act_by with a Cayley element");
  } else {
    require_g0(x0, gamma);
    return conjugate(expm(x0), expm(-1.0 * x0), y);
  }
}

template <class S>
DenseMatrix<S> cayley(const DenseMatrix<S>& x0, const GammaForm<S>& gamma) {
  require_g0(x0, gamma);
  const int k = x0.rows();
  const S half = ScalarOps<S>::from_fraction(1, 2);
  const DenseMatrix<S> id = DenseMatrix<S>::identity(k);
  const DenseMatrix<S> plus = id + half * x0;
  const DenseMatrix<S> minus = id - half * x0;
  return checked_inverse(minus) * plus;
}

DenseMatrix<double> body_exp(const DenseMatrix<double>& x0, const GammaForm<double>& gamma) {
  require_g0(x0, gamma);
  return expm(x0);
}

template <class S>
GroupElement<S> GroupElement<S>::identity(const GammaForm<S>& gamma) {
  const BlockShape shape = gamma.shape();
  return {DenseMatrix<S>::identity(shape.size()), SuperMatrix<S>(gamma.config, shape, MatrixParity::even)};
}

template <class S>
void validate_group_element(const GroupElement<S>& h, const GammaForm<S>& gamma) {
  if (!in_body_group(h.g, gamma)) {
    throw Error(ErrorKind::NotInG0, "body part is not an isometry of beta(Gamma)");
  }
  validate_nil(h.n, gamma);
}

template <class S>
GroupElement<S> semidirect_multiply(const GroupElement<S>& h1, const GroupElement<S>& h2) {
  if (!(h1.n.shape() == h2.n.shape()) || h1.g.rows() != h2.g.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "group elements differ in shape");
  }
  return {h1.g * h2.g, diamond(h1.n, act_by(h1.g, h2.n))};
}

template <class S>
GroupElement<S> group_inverse(const GroupElement<S>& h) {
  const DenseMatrix<S> g_inv = checked_inverse(h.g);
  return {g_inv, conjugate(g_inv, h.g, -h.n)};
}

template <class S>
SuperMatrix<S> embed_isometry(const GroupElement<S>& h, const GammaForm<S>& gamma) {
  require_same_config(h.n.config(), gamma.config);
  if (!(h.n.shape() == gamma.shape())) throw Error(ErrorKind::ShapeMismatch, "element does not match Gamma");
  const SuperMatrix<S> g = real_matrix(gamma.config, gamma.shape(), h.g);
  return keep_parity(matmul(exp_zero_body(h.n), g), MatrixParity::even);
}

#define SUPERSPIN_INSTANTIATE(S)                                                                       \
  template SuperMatrix<S> validate_nil(const SuperMatrix<S>&, const GammaForm<S>&);                    \
  template SuperMatrix<S> diamond(const SuperMatrix<S>&, const SuperMatrix<S>&);                       \
  template S lie_norm(const SuperMatrix<S>&);                                                          \
  template SuperMatrix<S> bch_series(const SuperMatrix<S>&, const SuperMatrix<S>&, const BCHOrderConfig&); \
  template SuperMatrix<S> act_by(const DenseMatrix<S>&, const SuperMatrix<S>&);                        \
  template SuperMatrix<S> action_alpha(const DenseMatrix<S>&, const SuperMatrix<S>&, const GammaForm<S>&); \
  template DenseMatrix<S> cayley(const DenseMatrix<S>&, const GammaForm<S>&);                          \
  template struct GroupElement<S>;                                                                     \
  template void validate_group_element(const GroupElement<S>&, const GammaForm<S>&);                  \
  template GroupElement<S> semidirect_multiply(const GroupElement<S>&, const GroupElement<S>&);        \
  template GroupElement<S> group_inverse(const GroupElement<S>&);                                      \
  template SuperMatrix<S> embed_isometry(const GroupElement<S>&, const GammaForm<S>&);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)

}  // namespace superspin
