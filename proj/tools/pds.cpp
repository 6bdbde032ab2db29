// Command-line front end: load systems and matrices, run the analyses, emit
// JSON reports or dot graphs.
//
// Exit codes: 0 success, 1 input/validation error, 2 a checked property came
// back false (with --assert-* or for the *-check commands), 3 cap exceeded.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pds/pds.hpp"
#include "pds/selftest.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_property_violation = 2;
constexpr int exit_cap_exceeded = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) pds::fail(pds::errc::bad_input, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const pds::io::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::size_t default_max_len(const pds::partial_system& s) {
  return 2 * static_cast<std::size_t>(s.size()) + 2;
}

struct options {
  std::string input;
  std::size_t max_len = 0; // 0: derive from the system
  int samples = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
  bool assert_free = false;
  bool assert_simple = false;
};

int run_command(const std::string& verb, const options& opt) {
  const std::string bytes = read_file(opt.input);

  if (verb == "markov-augment") {
    pds::adj_matrix a = pds::io::parse_matrix_text(bytes);
    std::cout << pds::io::matrix_to_text(pds::augment(a));
    return exit_ok;
  }
  if (verb == "markov-freedom") {
    pds::adj_matrix a = pds::io::parse_matrix_text(bytes);
    auto report = pds::markov_freedom(a);
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j["free"] = report.free;
    j["witnesses"] = report.witnesses;
    emit(j);
    return (opt.assert_free && !report.free) ? exit_property_violation : exit_ok;
  }
  if (verb == "markov-embed-check") {
    pds::adj_matrix a = pds::io::parse_matrix_text(bytes);
    bool ok = true;
    pds::io::ordered_json lengths = pds::io::ordered_json::object();
    for (int len = 2; len <= 6; ++len) {
      bool here = pds::embed_check(a, len);
      lengths[std::to_string(len)] = here;
      ok &= here;
    }
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j["passed"] = ok;
    j["lengths"] = std::move(lengths);
    emit(j);
    return ok ? exit_ok : exit_property_violation;
  }

  pds::partial_system s = pds::io::parse_system_json(bytes);
  const std::size_t max_len = opt.max_len ? opt.max_len : default_max_len(s);

  if (verb == "validate") {
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j["valid"] = true;
    j["points"] = s.size();
    j["domain"] = pds::names_of(s, s.domain_n(1));
    j["image"] = pds::names_of(s, s.image_n(1));
    emit(j);
    return exit_ok;
  }
  if (verb == "extension" || verb == "dot") {
    pds::extension_view view = pds::build_extension(s, max_len);
    if (verb == "dot" || opt.format == "dot") {
      std::cout << pds::to_dot(s, view);
      return exit_ok;
    }
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j.update(pds::io::extension_report(s, view));
    emit(j);
    return exit_ok;
  }
  if (verb == "invariants") {
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j.update(pds::io::invariants_report(s));
    emit(j);
    return exit_ok;
  }
  if (verb == "freedom") {
    auto report = pds::is_topologically_free(s);
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j.update(pds::io::freedom_to_json(s, report));
    emit(j);
    return (opt.assert_free && !report.free) ? exit_property_violation : exit_ok;
  }
  if (verb == "decompose" || verb == "ideals") {
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j.update(pds::io::decomposition_report(s, verb == "ideals"));
    emit(j);
    return exit_ok;
  }
  if (verb == "simplicity") {
    auto verdict = pds::simplicity_verdict(s);
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j.update(pds::io::simplicity_to_json(s, verdict));
    emit(j);
    return (opt.assert_simple && !verdict.simple) ? exit_property_violation : exit_ok;
  }
  if (verb == "star-check") {
    pds::cov_rep rep = pds::canonical_rep(s);
    bool ok = pds::star_property_check(rep, opt.samples, opt.seed, opt.tol);
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j["samples"] = opt.samples;
    j["seed"] = opt.seed;
    j["tol"] = opt.tol;
    j["passed"] = ok;
    emit(j);
    return ok ? exit_ok : exit_property_violation;
  }
  if (verb == "coeff-selftest") {
    auto report = pds::coeff_selftest(s, opt.samples, opt.seed, opt.tol);
    pds::io::ordered_json j = pds::io::report_header(bytes);
    j["samples"] = opt.samples;
    j["seed"] = opt.seed;
    j["tol"] = opt.tol;
    j["checks"]["associativity"] = report.associativity;
    j["checks"]["commutativity"] = report.commutativity;
    j["checks"]["involution"] = report.involution;
    j["checks"]["phi_multiplicative"] = report.phi_multiplicative;
    j["checks"]["delta_formula"] = report.delta_formula;
    j["checks"]["delta_star_formula"] = report.delta_star_formula;
    j["passed"] = report.passed();
    emit(j);
    return report.passed() ? exit_ok : exit_property_violation;
  }
  pds::fail(pds::errc::bad_input, "unknown command " + verb);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite partial dynamical systems: reversible extensions, invariant sets,\n"
               "topological freedom and the matrix structure of the covariance algebra"};
  app.require_subcommand(1);

  options opt;
  std::string verb;

  auto add_system_command = [&](const std::string& name, const std::string& desc,
                                bool randomized = false, bool asserts_free = false,
                                bool asserts_simple = false) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("input", opt.input, "system JSON file")->required();
    if (name == "extension") {
      cmd->add_option("--max-len", opt.max_len, "truncation window (default 2|X|+2)");
      cmd->add_option("--format", opt.format, "json or dot")
          ->check(CLI::IsMember({"json", "dot"}));
    }
    if (name == "dot") cmd->add_option("--max-len", opt.max_len, "truncation window");
    if (randomized) {
      cmd->add_option("--samples", opt.samples, "number of random samples");
      cmd->add_option("--seed", opt.seed, "generator seed (default 0)");
      cmd->add_option("--tol", opt.tol, "numeric tolerance");
    }
    if (asserts_free) cmd->add_flag("--assert-free", opt.assert_free, "exit 2 unless free");
    if (asserts_simple)
      cmd->add_flag("--assert-simple", opt.assert_simple, "exit 2 unless simple");
    cmd->callback([&verb, name] { verb = name; });
    return cmd;
  };

  add_system_command("validate", "check a system file");
  add_system_command("extension", "enumerate the reversible extension");
  add_system_command("dot", "extension as a dot graph");
  add_system_command("invariants", "invariant sets, minimality, lifted pairs");
  add_system_command("freedom", "topological freedom with witnesses", false, true);
  add_system_command("decompose", "matrix-block decomposition");
  add_system_command("ideals", "decomposition plus the ideal lattice");
  add_system_command("simplicity", "simplicity verdict", false, false, true);
  add_system_command("star-check", "sampled norm inequality on the canonical representation",
                     true);
  add_system_command("coeff-selftest", "randomized identity suite for the sequence algebra",
                     true);

  CLI::App* markov = app.add_subcommand("markov", "adjacency-matrix commands");
  markov->require_subcommand(1);
  for (const char* sub : {"augment", "freedom", "embed-check"}) {
    CLI::App* cmd = markov->add_subcommand(
        sub, sub == std::string("augment") ? "print the augmented matrix"
        : sub == std::string("freedom")    ? "circuit exit/entry analysis"
                                           : "word-level conjugacy check");
    cmd->add_option("input", opt.input, "matrix text file")->required();
    if (sub == std::string("freedom"))
      cmd->add_flag("--assert-free", opt.assert_free, "exit 2 unless free");
    cmd->callback([&verb, sub] { verb = std::string("markov-") + sub; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run_command(verb, opt);
  } catch (const pds::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == pds::errc::too_large ? exit_cap_exceeded : exit_input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  }
}
