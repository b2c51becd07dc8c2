#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polynewt/bench.hpp"
#include "polynewt/errors.hpp"
#include "polynewt/problem_json.hpp"

namespace {

// Exit codes, enumerated in the README:
//   0 success; all requested schemes converged / verification passed
//   1 a requested scheme failed to converge, or verification failed
//   2 unknown problem name
//   3 bad parameter or option (including generator preconditions)
//   4 output file could not be written
//   5 malformed or invalid problem file
constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUnknownProblem = 2;
constexpr int kExitBadParam = 3;
constexpr int kExitWriteFailure = 4;
constexpr int kExitBadProblemFile = 5;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw polynewt::WriteFailure("cannot open '" + out_path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw polynewt::WriteFailure("failed while writing '" + out_path + "'");
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> params;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw polynewt::BadParam("problem parameters must look like key=value, got '" + tok +
                               "'");
    params[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return params;
}

polynewt::ProblemSpec resolve_problem(const std::string& name,
                                      const std::vector<std::string>& param_tokens,
                                      const std::string& file_path,
                                      unsigned long long seed) {
  if (!file_path.empty()) {
    if (!name.empty() || !param_tokens.empty())
      throw polynewt::BadParam("--file replaces the problem name and key=value parameters");
    return polynewt::load_problem_file(file_path);
  }
  if (name.empty())
    throw polynewt::BadParam("name a built-in problem (see `list`) or pass --file");
  return polynewt::make_builtin_problem(name, parse_params(param_tokens), seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynewt: Newton iterations for polynomial systems, with and without "
               "top-degree function evaluation"};
  app.require_subcommand(1);

  std::string problem_name;
  std::vector<std::string> param_tokens;
  std::string file_path;
  std::string scheme = "both";
  std::string format = "table";
  std::string out_path;
  unsigned long long seed = 42;
  double tol = 1e-10;
  int max_iters = 50;
  int refresh = 1;
  int samples = 10;

  CLI::App* list_cmd = app.add_subcommand("list", "list the built-in problems");

  CLI::App* run_cmd =
      app.add_subcommand("run", "solve one problem under the requested scheme(s)");
  run_cmd->add_option("problem", problem_name, "built-in problem name");
  run_cmd->add_option("params", param_tokens, "problem parameters as key=value");
  run_cmd->add_option("--file", file_path, "load the problem from a JSON file instead");
  run_cmd->add_option("--scheme", scheme, "standard | function-free | both")
      ->check(CLI::IsMember({"standard", "function-free", "both"}))
      ->capture_default_str();
  run_cmd->add_option("--format", format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  run_cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
  run_cmd->add_option("--seed", seed, "seed for seeded generators")->capture_default_str();
  run_cmd->add_option("--tol", tol, "residual infinity-norm tolerance")
      ->capture_default_str();
  run_cmd->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
  run_cmd->add_option("--refresh", refresh,
                      "reassemble + refactor the Jacobian every this many steps")
      ->capture_default_str();

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check the homogeneity identity and the analytic Jacobian at random points");
  verify_cmd->add_option("problem", problem_name, "built-in problem name");
  verify_cmd->add_option("params", param_tokens, "problem parameters as key=value");
  verify_cmd->add_option("--file", file_path, "load the problem from a JSON file instead");
  verify_cmd->add_option("--samples", samples, "number of random sample points")
      ->capture_default_str();
  verify_cmd->add_option("--seed", seed, "seed for the sample points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadParam;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << "built-in problems:\n";
      for (const auto& entry : polynewt::builtin_problems()) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-15s %-38s %s\n", entry.name.c_str(),
                      entry.param_synopsis.c_str(), entry.description.c_str());
        std::cout << line;
      }
      std::cout << "\nrun one with: polynewt run <name> [key=value ...]\n";
      return kExitOk;
    }

    const polynewt::ProblemSpec spec =
        resolve_problem(problem_name, param_tokens, file_path, seed);

    if (run_cmd->parsed()) {
      polynewt::SolverConfig config;
      config.residual_tol = tol;
      config.max_iters = max_iters;
      config.jacobian_refresh = refresh;
      const bool run_standard = scheme == "standard" || scheme == "both";
      const bool run_function_free = scheme == "function-free" || scheme == "both";
      const polynewt::RunReport report =
          polynewt::run_schemes(spec, config, run_standard, run_function_free);

      std::string text;
      if (format == "table")
        text = polynewt::format_table(report);
      else if (format == "csv")
        text = polynewt::format_csv(report);
      else
        text = polynewt::report_to_json(report).dump(2) + "\n";
      write_output(text, out_path);
      return report.all_converged ? kExitOk : kExitNotConverged;
    }

    const polynewt::VerifyReport report = polynewt::verify_problem(spec, samples, seed);
    std::cout << polynewt::format_verify(report);
    return report.pass ? kExitOk : kExitNotConverged;
  } catch (const polynewt::UnknownProblem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownProblem;
  } catch (const polynewt::WriteFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWriteFailure;
  } catch (const polynewt::BadProblemFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadProblemFile;
  } catch (const polynewt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadParam;
  }
}
