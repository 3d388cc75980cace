#include "shapecone/builtins.hpp"
#include "shapecone/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace shapecone;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string builtin;
  std::string input;
  double eps = -1;
  bool exact = false;
  bool floating = false;
  std::string out;
  bool svg = false;
  unsigned seed = 1;
  int max_n = -1;
  int max_d = -1;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--builtin", o.builtin, "named configuration");
  sub->add_option("--input", o.input, "JSON file with {\"V\": [[...]]}");
  sub->add_option("--epsilon", o.eps, "tolerance override");
  sub->add_flag("--exact", o.exact, "exact rational arithmetic (rational input only)");
  sub->add_flag("--float", o.floating, "force floating arithmetic");
  sub->add_option("--out", o.out, "output directory (default: stdout)");
  sub->add_flag("--svg", o.svg, "also emit an SVG of the affine diagram (n - d = 3)");
  sub->add_option("--seed", o.seed, "seed for randomized builtins");
  sub->add_option("--max-n", o.max_n, "raise or lower the cap on n");
  sub->add_option("--max-d", o.max_d, "raise or lower the cap on d");
}

Rational parse_rational(const Json& e) {
  if (e.is_string()) return Rational(e.get<std::string>());
  if (e.is_number_integer()) return Rational(e.get<long long>());
  throw InputError("exact mode needs integer or \"p/q\" string entries");
}

VectorConfiguration load_input(const Options& o) {
  std::ifstream in(o.input);
  if (!in) throw InputError("cannot open input file: " + o.input);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("V") || !j["V"].is_array() || j["V"].empty())
    throw InputError("input must contain a non-empty matrix \"V\"");
  const Json& V = j["V"];
  const auto n = V.size();
  if (!V[0].is_array() || V[0].empty()) throw InputError("\"V\" rows must be arrays");
  const auto d = V[0].size();
  bool has_strings = false;
  for (const auto& row : V) {
    if (!row.is_array() || row.size() != d) throw InputError("ragged matrix \"V\"");
    for (const auto& e : row)
      if (e.is_string()) has_strings = true;
  }
  if ((o.exact || has_strings) && !o.floating) {
    RatMatrix M(n, d);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < d; ++k) M(i, k) = parse_rational(V[i][k]);
    return VectorConfiguration::make(M);
  }
  Matrix M(n, d);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < d; ++k) {
      const Json& e = V[i][k];
      if (e.is_string())
        M(i, k) = static_cast<double>(Rational(e.get<std::string>()));
      else if (e.is_number())
        M(i, k) = e.get<double>();
      else
        throw InputError("matrix entries must be numbers or \"p/q\" strings");
    }
  return VectorConfiguration::make(M);
}

VectorConfiguration load(const Options& o) {
  if (o.builtin.empty() == o.input.empty())
    throw InputError("exactly one of --builtin or --input is required");
  VectorConfiguration cfg =
      o.builtin.empty() ? load_input(o) : builtins::by_name(o.builtin, o.seed);
  if (o.floating) cfg.exactV.reset();
  if (o.exact && !cfg.exact())
    throw InputError("--exact needs rational data (fraction or integer entries)");
  return cfg;
}

void emit(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  std::ofstream f(fs::path(o.out) / name, std::ios::binary);
  f << text;
  if (!f) throw InputError("cannot write to " + o.out);
}

int run(const std::string& command, const Options& o) {
  if (o.eps > 0) epsilon() = o.eps;
  if (o.max_n > 0) caps().max_n = o.max_n;
  if (o.max_d > 0) caps().max_d = o.max_d;
  VectorConfiguration cfg = load(o);
  Json report;
  if (command == "gale")
    report = report_gale(cfg);
  else if (command == "domains")
    report = report_domains(cfg);
  else if (command == "typecones")
    report = report_typecones(cfg);
  else if (command == "qform")
    report = report_qform(cfg);
  else if (command == "shapespace")
    report = report_shapespace(cfg);
  else
    report = report_oracle(cfg);
  emit(o, command + ".json", dump_report(report));
  if (o.svg) {
    std::string svg = svg_affine(cfg);
    if (o.out.empty())
      emit(o, "", svg);
    else
      emit(o, command + ".svg", svg);
  }
  return 0;
}

void error_record(const std::string& kind, const std::string& what, int code) {
  Json e;
  e["schema"] = "shapecone/1";
  e["error"] = kind;
  e["message"] = what;
  e["exit_code"] = code;
  std::cerr << dump_report(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"type cones, mixed-volume forms, and piecewise-hyperbolic shape spaces"};
  app.require_subcommand(1);
  Options o;
  std::string command;
  for (const char* name : {"gale", "domains", "typecones", "qform", "shapespace", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, o);
    sub->callback([&command, name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  try {
    return run(command, o);
  } catch (const TooLarge& e) {
    error_record("cap_exceeded", e.what(), 3);
    return 3;
  } catch (const InputError& e) {
    error_record("input", e.what(), 2);
    return 2;
  } catch (const BadConfiguration& e) {
    error_record("input", e.what(), 2);
    return 2;
  } catch (const RankDeficient& e) {
    error_record("input", e.what(), 2);
    return 2;
  } catch (const ZeroDualVector& e) {
    error_record("input", e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    error_record("internal", e.what(), 4);
    return 4;
  }
}
