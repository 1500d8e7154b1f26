#include "commands.hpp"

#include "kapranov/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>

namespace {

int env_threads() {
  const char* s = std::getenv("KAPRANOV_THREADS");
  if (!s) return 1;
  try {
    return std::max(1, std::stoi(s));
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kapranov Leibniz-infinity algebras of dg derivations over exact rationals"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  int threads = env_threads();
  std::optional<int> max_arity;
  std::optional<int> degree;
  bool timing = false;

  const std::map<std::string, std::string> about{
      {"validate", "structural checks: Jacobi, d^2, boundary^2, derivation compatibility"},
      {"atiyah", "Atiyah cocycles, connection changes, class vanishing and flat connections"},
      {"brackets", "tables of the brackets R_2..R_N"},
      {"check-leibniz", "Leibniz-infinity identities up to the maximal arity"},
      {"morphism", "universal, identity, connection-change, trivialization and composed morphisms"},
      {"homotopy", "homotopy between the two derivations and the induced isomorphism"},
      {"cohomology", "cohomology classes of B[-1] and the induced bracket"}};
  for (const auto& name : kapcli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--input,-i", input, "instance document (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--output,-o", output, "write the report here instead of stdout");
    sub->add_option("--threads,-t", threads, "worker threads (default: KAPRANOV_THREADS or 1)")->check(CLI::PositiveNumber);
    sub->add_option("--max-arity,-n", max_arity, "highest arity to build and check")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", timing, "include elapsed time in the report");
    if (name == "cohomology") sub->add_option("--degree,-d", degree, "only list classes of this degree");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  kap::set_thread_count(threads);

  kapcli::CommandResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    kapcli::Instance in = kapcli::load_instance(input);
    result = kapcli::run_command(command, in, kapcli::CommandOptions{max_arity, degree});
  } catch (const kapcli::Json::parse_error& e) {
    std::cerr << input << ": parse error: " << e.what() << "\n";
    return 2;
  } catch (const kapcli::DocumentError& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return 2;
  } catch (const kapcli::Json::exception& e) {
    std::cerr << input << ": malformed document: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return 2;
  }
  if (timing)
    result.doc["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = result.doc.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f) {
      std::cerr << "cannot write '" << output << "'\n";
      return 2;
    }
    f << text;
  }
  return result.passed ? 0 : 1;
}
