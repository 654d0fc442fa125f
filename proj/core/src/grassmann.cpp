#include "superspin/grassmann.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace superspin {

std::string format_scalar(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_scalar(const Rational& x) { return x.get_str(); }

AlgebraConfig AlgebraConfig::float64(int generators, double zero_tolerance) {
  AlgebraConfig c{generators, CoefficientMode::float64, zero_tolerance};
  c.validate();
  return c;
}

AlgebraConfig AlgebraConfig::rational(int generators) {
  AlgebraConfig c{generators, CoefficientMode::rational, 0.0};
  c.validate();
  return c;
}

void AlgebraConfig::validate() const {
  if (generators < 1 || generators > kMaxGenerators) {
    throw Error(ErrorKind::InvalidConfig,
                "generator count must lie in [1, " + std::to_string(kMaxGenerators) + "]",
                "generators=" + std::to_string(generators));
  }
  if (!(zero_tolerance >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "zero_tolerance must be non-negative");
  }
  if (mode == CoefficientMode::rational && zero_tolerance != 0.0) {
    throw Error(ErrorKind::InvalidConfig, "zero_tolerance must be 0 in rational mode");
  }
}

void require_same_config(const AlgebraConfig& a, const AlgebraConfig& b) {
  if (!(a == b)) {
    throw Error(ErrorKind::ConfigMismatch, "operands come from different algebra configurations");
  }
}

MultiIndex MultiIndex::from_generators(std::span<const int> labels, int generators) {
  std::uint32_t bits = 0;
  int previous = 0;
  for (int label : labels) {
    if (label <= previous || label > generators) {
      throw Error(ErrorKind::ParseError,
                  "multi-index labels must be strictly increasing within [1, " +
                      std::to_string(generators) + "]",
                  "label " + std::to_string(label));
    }
    bits |= 1u << (label - 1);
    previous = label;
  }
  return MultiIndex(bits);
}

std::vector<int> MultiIndex::generators() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (bits_ & (1u << i)) out.push_back(i + 1);
  }
  return out;
}

int merge_sign(MultiIndex a, MultiIndex b) {
  if (!a.disjoint(b)) return 0;
  // Each generator j of b moves left past every generator of a above j.
  int swaps = 0;
  std::uint32_t rest = b.bits();
  while (rest != 0) {
    const int j = __builtin_ctz(rest);
    rest &= rest - 1;
    const std::uint32_t above = j >= 31 ? 0u : (a.bits() >> (j + 1));
    swaps += __builtin_popcount(above);
  }
  return (swaps & 1) ? -1 : 1;
}

namespace {

template <class S>
void sort_and_merge(std::vector<std::pair<MultiIndex, S>>& terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    S acc = terms[i].second;
    while (j < terms.size() && terms[j].first == terms[i].first) {
      acc += terms[j].second;
      ++j;
    }
    terms[out].first = terms[i].first;
    terms[out].second = acc;
    ++out;
    i = j;
  }
  terms.resize(out);
}

template <class S>
double max_abs(const std::vector<std::pair<MultiIndex, S>>& terms) {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, ScalarOps<S>::to_double(ScalarOps<S>::abs(t.second)));
  return m;
}

}  // namespace

template <class S>
Supernumber<S>::Supernumber(const AlgebraConfig& config) : config_(config) {
  config_.validate();
  if (config_.mode != mode_of<S>()) {
    throw Error(ErrorKind::InvalidConfig,
                std::string("coefficient mode does not match scalar type ") + ScalarOps<S>::name);
  }
}

template <class S>
Supernumber<S> Supernumber<S>::constant(const AlgebraConfig& config, const S& value) {
  return monomial(config, MultiIndex{}, value);
}

template <class S>
Supernumber<S> Supernumber<S>::generator(const AlgebraConfig& config, int label) {
  const int labels[] = {label};
  return monomial(config, MultiIndex::from_generators(labels, config.generators), S(1));
}

template <class S>
Supernumber<S> Supernumber<S>::monomial(const AlgebraConfig& config, MultiIndex index,
                                        const S& coeff) {
  Supernumber z(config);
  if (index.bits() >> config.generators) {
    throw Error(ErrorKind::ParseError, "multi-index exceeds generator count");
  }
  if (!ScalarOps<S>::is_zero(coeff)) z.terms_.emplace_back(index, coeff);
  return z;
}

template <class S>
Supernumber<S> Supernumber<S>::from_terms(const AlgebraConfig& config, std::vector<Term> terms) {
  Supernumber z(config);
  for (const auto& t : terms) {
    if (t.first.bits() >> config.generators) {
      throw Error(ErrorKind::ParseError, "multi-index exceeds generator count");
    }
  }
  sort_and_merge(terms);
  z.terms_ = std::move(terms);
  z.prune(max_abs(z.terms_));
  return z;
}

template <class S>
void Supernumber<S>::prune(double scale) {
  if constexpr (ScalarOps<S>::exact) {
    (void)scale;
    std::erase_if(terms_, [](const Term& t) { return ScalarOps<S>::is_zero(t.second); });
  } else {
    const double threshold = config_.zero_tolerance * scale;
    std::erase_if(terms_, [threshold](const Term& t) {
      return t.second == 0.0 || std::fabs(t.second) <= threshold;
    });
  }
}

template <class S>
S Supernumber<S>::coefficient(MultiIndex index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, MultiIndex i) { return t.first < i; });
  if (it != terms_.end() && it->first == index) return it->second;
  return S(0);
}

template <class S>
Supernumber<S> Supernumber<S>::soul() const {
  Supernumber out(config_);
  out.terms_ = terms_;
  if (!out.terms_.empty() && out.terms_.front().first.empty()) {
    out.terms_.erase(out.terms_.begin());
  }
  return out;
}

template <class S>
Parity Supernumber<S>::parity() const {
  if (terms_.empty()) return Parity::zero;
  bool even = false;
  bool odd = false;
  for (const auto& t : terms_) (t.first.is_even() ? even : odd) = true;
  if (even && odd) return Parity::mixed;
  return even ? Parity::even : Parity::odd;
}

template <class S>
bool Supernumber<S>::is_even() const {
  const Parity p = parity();
  return p == Parity::zero || p == Parity::even;
}

template <class S>
bool Supernumber<S>::is_odd() const {
  const Parity p = parity();
  return p == Parity::zero || p == Parity::odd;
}

template <class S>
int Supernumber<S>::min_degree() const {
  int d = terms_.empty() ? 0 : kMaxGenerators + 1;
  for (const auto& t : terms_) d = std::min(d, t.first.size());
  return d;
}

template <class S>
Supernumber<S> Supernumber<S>::operator-() const {
  Supernumber out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

template <class S>
Supernumber<S>& Supernumber<S>::operator+=(const Supernumber& other) {
  require_same_config(config_, other.config_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  double scale = 0.0;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      if constexpr (!ScalarOps<S>::exact) {
        scale = std::max({scale, std::fabs(a->second), std::fabs(b->second)});
      }
      S sum = a->second + b->second;
      merged.emplace_back(a->first, sum);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  prune(scale);
  return *this;
}

template <class S>
Supernumber<S>& Supernumber<S>::operator-=(const Supernumber& other) {
  return *this += -other;
}

template <class S>
Supernumber<S>& Supernumber<S>::operator*=(const S& scalar) {
  if (ScalarOps<S>::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= scalar;
  if constexpr (!ScalarOps<S>::exact) prune(0.0);
  return *this;
}

template <class S>
Supernumber<S> multiply(const Supernumber<S>& x, const Supernumber<S>& y) {
  require_same_config(x.config_, y.config_);
  using Term = typename Supernumber<S>::Term;
  std::vector<Term> raw;
  raw.reserve(x.terms_.size() * y.terms_.size());
  double scale = 0.0;
  for (const auto& [ix, cx] : x.terms_) {
    for (const auto& [iy, cy] : y.terms_) {
      const int sign = merge_sign(ix, iy);
      if (sign == 0) continue;
      S c = cx * cy;
      if (sign < 0) c = -c;
      if constexpr (!ScalarOps<S>::exact) scale = std::max(scale, std::fabs(c));
      raw.emplace_back(MultiIndex(ix.bits() | iy.bits()), c);
    }
  }
  sort_and_merge(raw);
  Supernumber<S> out(x.config_, std::move(raw));
  out.prune(scale);
  return out;
}

template <class S>
Supernumber<S> linear_combine(std::span<const S> coeffs, std::span<const Supernumber<S>> terms) {
  if (coeffs.size() != terms.size()) {
    throw Error(ErrorKind::LengthMismatch, "coefficient and term lists differ in length");
  }
  if (terms.empty()) {
    throw Error(ErrorKind::LengthMismatch, "linear_combine needs at least one term");
  }
  Supernumber<S> acc(terms.front().config());
  for (std::size_t i = 0; i < terms.size(); ++i) acc += coeffs[i] * terms[i];
  return acc;
}

template <class S>
S ell1_norm(const Supernumber<S>& z) {
  S total(0);
  for (const auto& t : z.terms()) total += ScalarOps<S>::abs(t.second);
  return total;
}

template <class S>
std::pair<S, Supernumber<S>> body_soul(const Supernumber<S>& z) {
  return {z.body(), z.soul()};
}

template <class S>
Supernumber<S> power(const Supernumber<S>& z, int k) {
  Supernumber<S> acc = Supernumber<S>::constant(z.config(), S(1));
  for (int i = 0; i < k; ++i) {
    acc = acc * z;
    if (acc.is_zero()) break;
  }
  return acc;
}

template <class S>
Supernumber<S> invert(const Supernumber<S>& z) {
  const S b = z.body();
  const bool singular = ScalarOps<S>::exact
                            ? ScalarOps<S>::is_zero(b)
                            : ScalarOps<S>::to_double(ScalarOps<S>::abs(b)) <= z.config().zero_tolerance;
  if (singular) throw Error(ErrorKind::BodyNotInvertible, "supernumber has zero body");
  const S inv_b = S(1) / b;
  // 1/(b + s) = b^-1 sum_k (-s/b)^k; the soul raises degree, so at most L+1 terms.
  const Supernumber<S> q = z.soul() * S(-inv_b);
  Supernumber<S> term = Supernumber<S>::constant(z.config(), S(1));
  Supernumber<S> sum = term;
  for (int k = 1; k <= z.config().generators; ++k) {
    term = term * q;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * inv_b;
}

template <class S>
Supernumber<S> binomial_inverse_sqrt(const Supernumber<S>& mu, bool strict) {
  if (!mu.is_even()) {
    throw Error(ErrorKind::ParityMismatch, "binomial series needs an even argument");
  }
  const S b = mu.body();
  Supernumber<S> soul = mu.soul();
  S prefactor(1);
  if (!ScalarOps<S>::is_zero(b)) {
    if (strict && !(ell1_norm(mu) < S(1))) {
      throw Error(ErrorKind::ConvergenceViolation,
                  "binomial series for (1+mu)^(-1/2) requires ||mu|| < 1",
                  "||mu||=" + format_scalar(ell1_norm(mu)));
    }
    const S base = S(1) + b;
    if (!(base > S(0))) {
      throw Error(ErrorKind::ConvergenceViolation, "1 + body(mu) must be positive");
    }
    auto root = ScalarOps<S>::sqrt(base);
    if (!root) {
      throw Error(ErrorKind::IrrationalScale, "(1 + body(mu))^(1/2) is not rational",
                  "1+body=" + format_scalar(base));
    }
    prefactor = S(1) / *root;
    soul *= S(S(1) / base);
  }
  // sum_k binom(-1/2, k) soul^k, binom(-1/2, k) = prod_{j<k} (-(2j+1)/(2j+2)).
  Supernumber<S> term = Supernumber<S>::constant(mu.config(), S(1));
  Supernumber<S> sum = term;
  S coeff(1);
  for (int k = 1; k <= mu.config().generators; ++k) {
    term = term * soul;
    if (term.is_zero()) break;
    coeff *= S(-(2 * k - 1)) / S(2 * k);
    sum += term * coeff;
  }
  return sum * prefactor;
}

template class Supernumber<double>;
template class Supernumber<Rational>;

#define SUPERSPIN_INSTANTIATE(S)                                                              \
  template Supernumber<S> multiply(const Supernumber<S>&, const Supernumber<S>&);            \
  template Supernumber<S> linear_combine(std::span<const S>, std::span<const Supernumber<S>>); \
  template S ell1_norm(const Supernumber<S>&);                                                \
  template std::pair<S, Supernumber<S>> body_soul(const Supernumber<S>&);                    \
  template Supernumber<S> invert(const Supernumber<S>&);                                      \
  template Supernumber<S> binomial_inverse_sqrt(const Supernumber<S>&, bool);                 \
  template Supernumber<S> power(const Supernumber<S>&, int);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)
#undef SUPERSPIN_INSTANTIATE

}  // namespace superspin
