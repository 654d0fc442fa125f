#include "superspin/cli.hpp"

#include <algorithm>

#include "superspin/error.hpp"
#include "superspin/isometry.hpp"
#include "superspin/json_io.hpp"
#include "superspin/metric.hpp"
#include "superspin/super_group.hpp"
#include "superspin/verify.hpp"

namespace superspin::cli {

namespace {

using nlohmann::json;

const json& require(const json& inputs, const char* key) {
  if (!inputs.is_object()) throw Error(ErrorKind::ParseError, "inputs must be an object", "/inputs");
  const auto it = inputs.find(key);
  if (it == inputs.end())
    throw Error(ErrorKind::ParseError, std::string("missing input \"") + key + "\"", std::string("/inputs/") + key);
  return *it;
}

std::string at(const char* key) { return std::string("/inputs/") + key; }

Report error_report(const Command command, const Error& e) {
  json err{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (!e.where().empty()) err["where"] = e.where();
  return {json{{"command", to_string(command)}, {"error", err}}, is_numerical_gate(e.kind()) ? 3 : 2};
}

template <class S>
DenseMatrix<S> real_part(const SuperMatrix<S>& a) {
  const int size = a.shape().size();
  DenseMatrix<S> out(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) out(r, c) = a(r, c).body();
  return out;
}

template <class S>
json canonicalize(const JobSpec& job) {
  const auto g = matrix_from_json<S>(require(job.inputs, "metric"), job.algebra, at("metric"));
  const auto canon = canonical_form(validate_metric(g));
  if (!canon.body_reducible() && !job.strict) {
    json out = to_json(canon);
    out["reduced"] = false;
    return out;
  }
  try {
    const auto reduced = body_reduce(canon, job.strict);
    json out = to_json(reduced);
    // body_reducible describes the input diagonal, not the +-1 result.
    out["reducibility"] = to_json(canon)["reducibility"];
    out["body_reducible"] = canon.body_reducible();
    json lambda = json::array();
    for (const auto& l : reduced.lambda) lambda.push_back(to_json(l));
    out["lambda"] = lambda;
    out["reduced"] = true;
    return out;
  } catch (const Error& e) {
    // The scale has no exact rational value; the unreduced form stands.
    if (job.strict || e.kind() != ErrorKind::IrrationalScale) throw;
    json out = to_json(canon);
    out["reduced"] = false;
    out["reduction_error"] = json{{"kind", std::string(to_string(e.kind()))}, {"where", e.where()}};
    return out;
  }
}

template <class S>
json isometry_check(const JobSpec& job) {
  const auto gamma = gamma_from_json<S>(require(job.inputs, "gamma"), job.algebra, at("gamma"));
  json out = json::object();
  if (job.inputs.contains("matrix")) {
    const auto n = matrix_from_json<S>(job.inputs["matrix"], job.algebra, at("matrix"));
    out["isometry"] = is_isometry(n, gamma);
    out["residual"] = scalar_to_json(isometry_residual(n, gamma));
  }
  if (job.inputs.contains("element")) {
    const auto l = matrix_from_json<S>(job.inputs["element"], job.algebra, at("element"));
    const auto report = lie_membership(l, gamma);
    json residuals = json::array();
    json conditions = json::array();
    for (int k = 0; k < 3; ++k) {
      residuals.push_back(scalar_to_json(report.residual[k]));
      conditions.push_back(report.condition[k]);
    }
    out["membership"] = json{{"member", report.member},
                             {"conditions", conditions},
                             {"residuals", residuals},
                             {"violated", report.violated()},
                             {"single_residual", scalar_to_json(report.single_residual)},
                             {"consistent", report.consistent}};
  }
  if (out.empty())
    throw Error(ErrorKind::ParseError, "isometry-check needs \"matrix\" or \"element\"", "/inputs");
  return out;
}

template <class S>
json lie_basis_report(const JobSpec& job) {
  const auto gamma = gamma_from_json<S>(require(job.inputs, "gamma"), job.algebra, at("gamma"));
  const auto basis = lie_basis(gamma);
  json g0 = json::array(), g1 = json::array();
  for (const auto& x : basis.g0) g0.push_back(to_json(real_part(x)));
  for (const auto& x : basis.g1) g1.push_back(to_json(real_part(x)));
  return json{{"gamma", to_json(gamma)},
              {"dim_g0", basis.g0.size()},
              {"dim_g1", basis.g1.size()},
              {"g0", g0},
              {"g1", g1},
              {"hJ_size", basis.hJ.size()}};
}

template <class S>
json group_op(const JobSpec& job) {
  const auto gamma = gamma_from_json<S>(require(job.inputs, "gamma"), job.algebra, at("gamma"));
  const auto h1 = group_element_from_json<S>(require(job.inputs, "h1"), job.algebra, at("h1"));
  const auto h2 = group_element_from_json<S>(require(job.inputs, "h2"), job.algebra, at("h2"));
  validate_group_element(h1, gamma);
  validate_group_element(h2, gamma);
  const auto product = semidirect_multiply(h1, h2);
  const auto image = embed_isometry(product, gamma);
  const auto split = matmul(embed_isometry(h1, gamma), embed_isometry(h2, gamma));
  return json{{"product", to_json(product)},
              {"isometry", to_json(image)},
              {"residuals",
               {{"isometry", scalar_to_json(isometry_residual(image, gamma))},
                {"homomorphism", scalar_to_json(max_entry_norm(image - split))}}}};
}

int dimension_input(const json& inputs, const char* key, int fallback) {
  if (!inputs.is_object() || !inputs.contains(key)) return fallback;
  const auto& v = inputs[key];
  if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "expected an integer", at(key));
  return v.get<int>();
}

template <class S>
Report verify(const JobSpec& job) {
  VerifyOptions options;
  options.seed = job.seed;
  options.dims.m = dimension_input(job.inputs, "m", options.dims.m);
  options.dims.n = dimension_input(job.inputs, "n", options.dims.n);
  options.scale = dimension_input(job.inputs, "scale", options.scale);
  if (options.dims.m < 0 || options.dims.m > 6 || options.dims.n < 0 || options.dims.n > 6 || options.dims.n % 2 ||
      options.dims.m + options.dims.n == 0)
    throw Error(ErrorKind::InvalidConfig, "verify needs 0 <= m, n <= 6, n even, m + n > 0", "/inputs");
  if (options.scale < 1) throw Error(ErrorKind::InvalidConfig, "scale must be positive", at("scale"));
  json sections = json::array();
  bool ok = true;
  for (const auto& s : run_verify<S>(job.algebra, options)) {
    sections.push_back(s.to_json());
    ok = ok && s.passed();
  }
  json doc{{"command", "verify"},
           {"algebra", config_to_json(job.algebra)},
           {"seed", job.seed},
           {"dims", {{"m", options.dims.m}, {"n", options.dims.n}}},
           {"sections", sections},
           {"status", ok ? "pass" : "fail"}};
  return {doc, ok ? 0 : 3};
}

template <class S>
Report dispatch(const JobSpec& job) {
  json body;
  switch (job.command) {
    case Command::canonicalize:
      body = canonicalize<S>(job);
      break;
    case Command::isometry_check:
      body = isometry_check<S>(job);
      break;
    case Command::lie_basis:
      body = lie_basis_report<S>(job);
      break;
    case Command::group_op:
      body = group_op<S>(job);
      break;
    case Command::verify:
      return verify<S>(job);
  }
  json doc{{"command", to_string(job.command)}, {"algebra", config_to_json(job.algebra)}};
  doc.update(body);
  return {doc, 0};
}

}  // namespace

std::optional<Command> command_from_string(const std::string& name) {
  if (name == "canonicalize") return Command::canonicalize;
  if (name == "isometry-check") return Command::isometry_check;
  if (name == "lie-basis") return Command::lie_basis;
  if (name == "group-op") return Command::group_op;
  if (name == "verify") return Command::verify;
  return std::nullopt;
}

std::string to_string(Command command) {
  switch (command) {
    case Command::canonicalize:
      return "canonicalize";
    case Command::isometry_check:
      return "isometry-check";
    case Command::lie_basis:
      return "lie-basis";
    case Command::group_op:
      return "group-op";
    case Command::verify:
      return "verify";
  }
  return "unknown";
}

std::string Report::text() const { return document.dump(2) + "\n"; }

Report run(const JobSpec& job) {
  try {
    job.algebra.validate();
    if (job.algebra.mode == CoefficientMode::rational) return dispatch<Rational>(job);
    return dispatch<double>(job);
  } catch (const Error& e) {
    return error_report(job.command, e);
  } catch (const nlohmann::json::exception& e) {
    return error_report(job.command, Error(ErrorKind::ParseError, e.what()));
  }
}

Report run_text(Command command, const std::string& config_text, const Overrides& overrides) {
  JobSpec job;
  job.command = command;
  job.strict = overrides.strict;
  try {
    json config = json::object();
    if (!config_text.empty()) {
      try {
        config = json::parse(config_text);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what(), "byte " + std::to_string(e.byte));
      }
    }
    if (!config.is_object()) throw Error(ErrorKind::ParseError, "config must be an object", "");
    json algebra = config.value("algebra", json::object());
    if (!algebra.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "/algebra");
    if (overrides.mode) {
      algebra["mode"] = *overrides.mode;
      if (*overrides.mode == "rational") algebra["zero_tolerance"] = 0.0;
    }
    if (overrides.generators) algebra["generators"] = *overrides.generators;
    job.algebra = config_from_json(algebra, "/algebra");
    if (config.contains("inputs")) job.inputs = config["inputs"];
    if (config.contains("seed")) {
      if (!config["seed"].is_number_unsigned())
        throw Error(ErrorKind::ParseError, "expected an unsigned integer", "/seed");
      job.seed = config["seed"].get<std::uint64_t>();
    }
    if (overrides.seed) job.seed = *overrides.seed;
    if (!job.inputs.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "/inputs");
    if (overrides.m) job.inputs["m"] = *overrides.m;
    if (overrides.n) job.inputs["n"] = *overrides.n;
  } catch (const Error& e) {
    return error_report(command, e);
  }
  return run(job);
}

}  // namespace superspin::cli
