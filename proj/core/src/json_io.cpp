#include "superspin/json_io.hpp"

#include <charconv>

namespace superspin {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::ParseError, message, path.empty() ? "/" : path);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

int int_from_json(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

Rational parse_rational(const std::string& text, const std::string& path) {
  // "p", "p/q" or a decimal literal like "-1.25e-3".
  try {
    if (text.find_first_of(".eE") == std::string::npos) {
      Rational r(text, 10);
      if (sgn(r.get_den()) == 0) fail(path, "zero denominator");
      r.canonicalize();
      return r;
    }
    std::string digits;
    long exponent = 0;
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < text.size() && text[pos] != 'e' && text[pos] != 'E'; ++pos) {
      const char c = text[pos];
      if (c == '.') {
        if (seen_point) fail(path, "malformed number \"" + text + "\"");
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits += c;
        any_digit = true;
        if (seen_point) --exponent;
      } else {
        fail(path, "malformed number \"" + text + "\"");
      }
    }
    if (!any_digit) fail(path, "malformed number \"" + text + "\"");
    if (pos < text.size()) {
      long e = 0;
      const char* first = text.data() + pos + 1;
      const char* last = text.data() + text.size();
      if (first < last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, e);
      if (ec != std::errc() || ptr != last) fail(path, "malformed exponent in \"" + text + "\"");
      exponent += e;
    }
    mpz_class value(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(value, scale) : Rational(value * scale, 1);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  } catch (const std::invalid_argument&) {
    fail(path, "malformed number \"" + text + "\"");
  }
}

}  // namespace

AlgebraConfig config_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  AlgebraConfig cfg;
  if (auto it = j.find("generators"); it != j.end()) cfg.generators = int_from_json(*it, sub(path, "generators"));
  if (auto it = j.find("mode"); it != j.end()) {
    if (!it->is_string()) fail(sub(path, "mode"), "expected a string");
    const auto mode = it->get<std::string>();
    if (mode == "float64") {
      cfg.mode = CoefficientMode::float64;
    } else if (mode == "rational") {
      cfg.mode = CoefficientMode::rational;
      cfg.zero_tolerance = 0.0;
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown coefficient mode \"" + mode + "\"", sub(path, "mode"));
    }
  }
  if (auto it = j.find("zero_tolerance"); it != j.end()) {
    if (!it->is_number()) fail(sub(path, "zero_tolerance"), "expected a number");
    cfg.zero_tolerance = it->get<double>();
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const AlgebraConfig& config) {
  return json{{"generators", config.generators},
              {"mode", config.mode == CoefficientMode::rational ? "rational" : "float64"},
              {"zero_tolerance", config.zero_tolerance}};
}

template <class S>
json scalar_to_json(const S& x) {
  if constexpr (ScalarOps<S>::exact) {
    return format_scalar(x);
  } else {
    return x;
  }
}

template <class S>
S scalar_from_json(const json& j, const std::string& path) {
  if constexpr (ScalarOps<S>::exact) {
    if (j.is_number_integer()) return Rational(j.dump(), 10);
    if (j.is_number_float()) return parse_rational(j.dump(), path);
    if (j.is_string()) return parse_rational(j.get<std::string>(), path);
    fail(path, "expected a number or a \"p/q\" string");
  } else {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_rational(j.get<std::string>(), path).get_d();
    fail(path, "expected a number or a \"p/q\" string");
  }
}

template <class S>
json to_json(const Supernumber<S>& z) {
  json out = json::array();
  for (const auto& [index, coeff] : z.terms()) {
    out.push_back(json{{"index", index.generators()}, {"coeff", scalar_to_json(coeff)}});
  }
  return out;
}

template <class S>
Supernumber<S> supernumber_from_json(const json& j, const AlgebraConfig& config, const std::string& path) {
  if (j.is_number() || j.is_string()) {
    return Supernumber<S>::constant(config, scalar_from_json<S>(j, path));
  }
  if (!j.is_array()) fail(path, "expected a list of {index, coeff} terms");
  std::vector<typename Supernumber<S>::Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = sub(path, i);
    const json& idx = member(j[i], "index", here);
    if (!idx.is_array()) fail(sub(here, "index"), "expected a list of generator labels");
    std::vector<int> labels;
    for (std::size_t k = 0; k < idx.size(); ++k) labels.push_back(int_from_json(idx[k], sub(sub(here, "index"), k)));
    MultiIndex index;
    try {
      index = MultiIndex::from_generators(labels, config.generators);
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), sub(here, "index"));
    }
    for (const auto& t : terms)
      if (t.first == index) fail(sub(here, "index"), "duplicate multi-index");
    terms.emplace_back(index, scalar_from_json<S>(member(j[i], "coeff", here), sub(here, "coeff")));
  }
  return Supernumber<S>::from_terms(config, std::move(terms));
}

template <class S>
json to_json(const SuperMatrix<S>& a) {
  json entries = json::array();
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) entries.push_back(to_json(a(r, c)));
  return json{{"shape", {{"m", a.shape().m}, {"n", a.shape().n}}},
              {"parity", to_string(a.parity())},
              {"entries", std::move(entries)}};
}

template <class S>
SuperMatrix<S> matrix_from_json(const json& j, const AlgebraConfig& config, const std::string& path) {
  const json& shape = member(j, "shape", path);
  BlockShape bs{int_from_json(member(shape, "m", sub(path, "shape")), sub(sub(path, "shape"), "m")),
                int_from_json(member(shape, "n", sub(path, "shape")), sub(sub(path, "shape"), "n"))};
  if (bs.m < 0 || bs.n < 0) fail(sub(path, "shape"), "dimensions must be non-negative");
  MatrixParity parity = MatrixParity::general;
  if (auto it = j.find("parity"); it != j.end()) {
    const std::string p = it->is_string() ? it->get<std::string>() : "";
    if (p == "even") parity = MatrixParity::even;
    else if (p == "odd") parity = MatrixParity::odd;
    else if (p == "general") parity = MatrixParity::general;
    else fail(sub(path, "parity"), "expected \"even\", \"odd\" or \"general\"");
  }
  const json& entries = member(j, "entries", path);
  const std::size_t count = std::size_t(bs.size()) * bs.size();
  if (!entries.is_array() || entries.size() != count) {
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(count) + " row-major entries", sub(path, "entries"));
  }
  std::vector<Supernumber<S>> values;
  for (std::size_t i = 0; i < count; ++i)
    values.push_back(supernumber_from_json<S>(entries[i], config, sub(sub(path, "entries"), i)));
  try {
    return SuperMatrix<S>::from_entries(config, bs, parity, std::move(values));
  } catch (const Error& e) {
    throw Error(e.kind(), e.what(), sub(path, "entries") + (e.where().empty() ? "" : " " + e.where()));
  }
}

template <class S>
json to_json(const DenseMatrix<S>& a) {
  json rows = json::array();
  for (int r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(scalar_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
DenseMatrix<S> real_matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of rows");
  const int rows = static_cast<int>(j.size());
  DenseMatrix<S> out(rows, rows);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != rows) {
      throw Error(ErrorKind::ShapeMismatch, "real matrix must be square", sub(path, r));
    }
    for (int c = 0; c < rows; ++c) out(r, c) = scalar_from_json<S>(j[r][c], sub(sub(path, r), c));
  }
  return out;
}

template <class S>
json to_json(const GammaForm<S>& gamma) {
  json eta = json::array();
  for (const auto& z : gamma.eta) eta.push_back(to_json(z));
  return json{{"eta", std::move(eta)}, {"n", gamma.n}};
}

template <class S>
GammaForm<S> gamma_from_json(const json& j, const AlgebraConfig& config, const std::string& path) {
  const int n = int_from_json(member(j, "n", path), sub(path, "n"));
  if (j.contains("eta")) {
    const json& eta = j["eta"];
    if (!eta.is_array()) fail(sub(path, "eta"), "expected a list of supernumbers");
    std::vector<Supernumber<S>> values;
    for (std::size_t i = 0; i < eta.size(); ++i)
      values.push_back(supernumber_from_json<S>(eta[i], config, sub(sub(path, "eta"), i)));
    return GammaForm<S>::from_eta(config, std::move(values), n);
  }
  const int p = int_from_json(member(j, "p", path), sub(path, "p"));
  const int q = int_from_json(member(j, "q", path), sub(path, "q"));
  if (p < 0 || q < 0) fail(path, "signature counts must be non-negative");
  return GammaForm<S>::signature(config, p, q, n);
}

template <class S>
json to_json(const GroupElement<S>& h) {
  return json{{"g", to_json(h.g)}, {"n", to_json(h.n)}};
}

template <class S>
GroupElement<S> group_element_from_json(const json& j, const AlgebraConfig& config, const std::string& path) {
  return {real_matrix_from_json<S>(member(j, "g", path), sub(path, "g")),
          matrix_from_json<S>(member(j, "n", path), config, sub(path, "n"))};
}

template <class S>
json to_json(const CanonicalizationResult<S>& result) {
  json d = json::array();
  for (const auto& z : result.d) d.push_back(to_json(z));
  json records = json::array();
  for (const auto& r : result.reducibility) {
    records.push_back(json{{"ratio", scalar_to_json(r.ratio)}, {"condition_met", r.condition_met}, {"sign", r.sign}});
  }
  return json{{"P", to_json(result.P)},
              {"Gamma", to_json(result.Gamma)},
              {"d", std::move(d)},
              {"reducibility", std::move(records)},
              {"body_reducible", result.body_reducible()}};
}

#define SUPERSPIN_INSTANTIATE(S)                                                                    \
  template json scalar_to_json(const S&);                                                           \
  template S scalar_from_json<S>(const json&, const std::string&);                                 \
  template json to_json(const Supernumber<S>&);                                                     \
  template Supernumber<S> supernumber_from_json<S>(const json&, const AlgebraConfig&, const std::string&); \
  template json to_json(const SuperMatrix<S>&);                                                     \
  template SuperMatrix<S> matrix_from_json<S>(const json&, const AlgebraConfig&, const std::string&); \
  template json to_json(const DenseMatrix<S>&);                                                     \
  template DenseMatrix<S> real_matrix_from_json<S>(const json&, const std::string&);               \
  template json to_json(const GammaForm<S>&);                                                       \
  template GammaForm<S> gamma_from_json<S>(const json&, const AlgebraConfig&, const std::string&);  \
  template json to_json(const GroupElement<S>&);                                                    \
  template GroupElement<S> group_element_from_json<S>(const json&, const AlgebraConfig&, const std::string&); \
  template json to_json(const CanonicalizationResult<S>&);

SUPERSPIN_INSTANTIATE(double)
SUPERSPIN_INSTANTIATE(Rational)

}  // namespace superspin
