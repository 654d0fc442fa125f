#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "superspin/cli.hpp"

namespace {

int emit(const superspin::cli::Report& report, const std::string& out) {
  const std::string text = report.text();
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    file << text;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann-valued metrics, isometry algebras and their covering groups"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  superspin::cli::Overrides overrides;
  std::string mode;
  int generators = 0, m = -1, n = -1;
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> verbs[] = {
      {"canonicalize", "reduce a Gram matrix to its canonical form"},
      {"isometry-check", "test a supermatrix against the isometry conditions"},
      {"lie-basis", "homogeneous basis of the isometry algebra"},
      {"group-op", "multiply two elements of the covering group"},
      {"verify", "run the seeded property suites"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON file with \"algebra\" and \"inputs\"");
    sub->add_option("--mode", mode, "coefficient mode")->check(CLI::IsMember({"float64", "rational"}));
    sub->add_option("--seed", seed, "seed for randomized suites");
    sub->add_flag("--strict", overrides.strict, "enforce the convergence gates");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--generators", generators, "number of Grassmann generators");
    if (std::string(name) == "verify") {
      sub->add_option("--m", m, "even dimension");
      sub->add_option("--n", n, "odd dimension");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  const auto command = superspin::cli::command_from_string(sub->get_name());
  if (sub->count("--mode")) overrides.mode = mode;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--generators")) overrides.generators = generators;
  if (sub->get_name() == "verify") {
    if (sub->count("--m")) overrides.m = m;
    if (sub->count("--n")) overrides.n = n;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream file(config_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot read " << config_path << "\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  return emit(superspin::cli::run_text(*command, text, overrides), out_path);
}
