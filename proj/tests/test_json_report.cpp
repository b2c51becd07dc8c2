#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "polynewt/bench.hpp"
#include "polynewt/errors.hpp"
#include "polynewt/problem_json.hpp"
#include "polynewt/problems.hpp"

using namespace polynewt;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

struct FileGuard {
  std::filesystem::path path;
  ~FileGuard() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("problem JSON round trip is semantically identical") {
  const ProblemSpec spec = random_polynomial_problem(9, {2, 3, 4}, 0.25, 77);
  const json serialized = problem_to_json(spec);
  const ProblemSpec parsed = problem_from_json(serialized, spec.name);

  CHECK(parsed.system == spec.system);
  REQUIRE(parsed.known_root.has_value());
  CHECK(*parsed.known_root == *spec.known_root);
  CHECK(parsed.suggested_u0 == spec.suggested_u0);

  // Dump -> parse -> dump stability (full-precision round trip).
  const json reparsed = json::parse(serialized.dump());
  CHECK(reparsed == serialized);
  CHECK(problem_to_json(parsed) == serialized);
}

TEST_CASE("problem JSON schema fields") {
  const ProblemSpec spec = scalar_power_problem(2, 4.0);
  const json j = problem_to_json(spec);
  CHECK(j["n"] == 1);
  CHECK(j["convention"] == "Lu+N+b=0");
  CHECK(j["linear"].is_array());
  CHECK(j["linear"].empty());
  REQUIRE(j["terms"].size() == 1);
  CHECK(j["terms"][0]["degree"] == 2);
  CHECK(j["terms"][0]["entries"][0] == json::array({0, {0, 0}, 1.0}));
  CHECK(j["constant"] == json::array({-4.0}));
  CHECK(j["known_root"] == json::array({2.0}));
  CHECK(j["u0"] == json::array({3.0}));
}

TEST_CASE("loader rejects malformed problems") {
  const json good = problem_to_json(scalar_power_problem(2, 4.0));

  json no_n = good;
  no_n.erase("n");
  CHECK_THROWS_AS(problem_from_json(no_n, "x"), BadProblemFile);

  json bad_convention = good;
  bad_convention["convention"] = "Lu+N=b";
  CHECK_THROWS_AS(problem_from_json(bad_convention, "x"), BadProblemFile);

  json bad_linear = good;
  bad_linear["linear"] = json::array({json::array({0, 0})});
  CHECK_THROWS_AS(problem_from_json(bad_linear, "x"), BadProblemFile);

  // Degree claims 3 but the multi-indices have two entries.
  json bad_degree = good;
  bad_degree["terms"][0]["degree"] = 3;
  CHECK_THROWS_AS(problem_from_json(bad_degree, "x"), BadProblemFile);

  json bad_constant = good;
  bad_constant["constant"] = json::array({1.0, 2.0});
  CHECK_THROWS_AS(problem_from_json(bad_constant, "x"), BadProblemFile);

  json bad_root = good;
  bad_root["known_root"] = json::array({3.0});
  CHECK_THROWS_AS(problem_from_json(bad_root, "x"), BadProblemFile);

  json out_of_range = good;
  out_of_range["terms"][0]["entries"][0] = json::array({0, {0, 4}, 1.0});
  CHECK_THROWS_AS(problem_from_json(out_of_range, "x"), BadProblemFile);

  CHECK_THROWS_AS(problem_from_json(json::array(), "x"), BadProblemFile);
}

TEST_CASE("loader defaults u0 to all ones") {
  json j = problem_to_json(scalar_power_problem(2, 4.0));
  j.erase("u0");
  j.erase("known_root");
  const ProblemSpec spec = problem_from_json(j, "file-problem");
  CHECK(spec.suggested_u0 == Vector{1.0});
  CHECK_FALSE(spec.known_root.has_value());
  CHECK(spec.name == "file-problem");
}

TEST_CASE("load_problem_file reads, validates, and names from the file stem") {
  const auto path = temp_file("polynewt_roundtrip.json");
  FileGuard guard{path};
  {
    std::ofstream out(path);
    out << problem_to_json(mixed_quadratic_cubic_problem(1, 1.0, 0)).dump(2);
  }
  const ProblemSpec spec = load_problem_file(path.string());
  CHECK(spec.name == "polynewt_roundtrip");
  CHECK(spec.system.top_degree == 3);
  CHECK(*spec.known_root == Vector{1.0});

  CHECK_THROWS_AS(load_problem_file("/nonexistent/problem.json"), BadProblemFile);

  const auto bad_path = temp_file("polynewt_not_json.json");
  FileGuard bad_guard{bad_path};
  {
    std::ofstream out(bad_path);
    out << "this is { not json";
  }
  CHECK_THROWS_AS(load_problem_file(bad_path.string()), BadProblemFile);
}

TEST_CASE("run report: both schemes, agreement, and counter evidence") {
  const ProblemSpec spec = scalar_power_problem(2, 4.0);
  const RunReport report = run_schemes(spec, SolverConfig{}, true, true);

  REQUIRE(report.runs.size() == 2);
  CHECK(report.runs[0].scheme == Scheme::Standard);
  CHECK(report.runs[1].scheme == Scheme::FunctionFree);
  CHECK(report.all_converged);
  REQUIRE(report.agreement.has_value());
  CHECK(*report.agreement <= 1e-11);

  const json j = report_to_json(report);
  CHECK(j["problem"] == "scalar-power");
  CHECK(j["all_converged"] == true);
  CHECK(j["agreement"].get<double>() <= 1e-11);
  REQUIRE(j["schemes"].size() == 2);
  CHECK(j["schemes"][1]["scheme"] == "function-free");
  CHECK(j["schemes"][1]["counters"]["homogeneous_evals"]["2"] == 0);
  CHECK(j["schemes"][0]["counters"]["homogeneous_evals"]["2"] > 0);
  CHECK(j["schemes"][0]["status"] == "converged-residual");
  CHECK(j["schemes"][0]["residual_history"].size() ==
        j["schemes"][0]["step_history"].size());

  // Table and CSV read from the same report.
  const std::string table = format_table(report);
  CHECK(table.find("scheme: standard") != std::string::npos);
  CHECK(table.find("scheme: function-free") != std::string::npos);
  CHECK(table.find("scheme agreement") != std::string::npos);

  const std::string csv = format_csv(report);
  CHECK(csv.rfind("scheme,k,residual_inf,step_inf\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  const std::size_t expected = report.runs[0].result.trace.records.size() +
                               report.runs[1].result.trace.records.size() + 1;
  CHECK(rows == expected);
}

TEST_CASE("run report: single scheme has no agreement metric") {
  const ProblemSpec spec = scalar_power_problem(3, 8.0);
  const RunReport report = run_schemes(spec, SolverConfig{}, true, false);
  REQUIRE(report.runs.size() == 1);
  CHECK_FALSE(report.agreement.has_value());
  const json j = report_to_json(report);
  CHECK_FALSE(j.contains("agreement"));
}

TEST_CASE("run report flags non-convergence") {
  const ProblemSpec spec = scalar_power_problem(2, 4.0);
  SolverConfig config;
  config.residual_tol = 1e-300;
  config.step_tol = 0.0;
  config.max_iters = 2;
  const RunReport report = run_schemes(spec, config, true, true);
  CHECK_FALSE(report.all_converged);
}

TEST_CASE("verify report checks identity and Jacobian defects") {
  const VerifyReport ok = verify_problem(scalar_power_problem(3, 8.0), 10, 9001);
  CHECK(ok.pass);
  CHECK(ok.max_euler_defect <= 1e-13);
  CHECK(ok.max_fd_defect <= 1e-6);
  CHECK(format_verify(ok).find("PASS") != std::string::npos);

  const VerifyReport single = verify_problem(burgers_1d(8, 0.2, 1.0, 0.0), 1, 7);
  CHECK(single.pass);

  CHECK_THROWS_AS(verify_problem(scalar_power_problem(2, 4.0), 0, 1), BadParam);
}

TEST_CASE("builtin registry is sorted and complete") {
  const auto& registry = builtin_problems();
  REQUIRE(registry.size() >= 5);
  for (std::size_t i = 1; i < registry.size(); ++i)
    CHECK(registry[i - 1].name < registry[i].name);

  const std::vector<std::string> expected = {"burgers-1d", "cubic-reaction", "mixed",
                                             "random", "scalar-power"};
  for (const auto& name : expected) {
    bool found = false;
    for (const auto& entry : registry)
      if (entry.name == name) found = true;
    CHECK(found);
  }

  const ProblemSpec made = make_builtin_problem("scalar-power", {{"p", "3"}, {"target", "8"}},
                                                1);
  CHECK(made.system.top_degree == 3);

  CHECK_THROWS_AS(make_builtin_problem("no-such-problem", {}, 1), UnknownProblem);
  CHECK_THROWS_AS(make_builtin_problem("scalar-power", {{"bogus", "1"}}, 1), BadParam);
  CHECK_THROWS_AS(make_builtin_problem("scalar-power", {{"p", "abc"}}, 1), BadParam);
  CHECK_THROWS_AS(make_builtin_problem("random", {{"degrees", "2,x"}}, 1), BadParam);

  // Registry defaults match the documented synopses.
  const ProblemSpec b = make_builtin_problem("burgers-1d", {}, 1);
  CHECK(b.system.n == 16);
  const ProblemSpec r = make_builtin_problem("random", {}, 42);
  CHECK(r.system.n == 20);
  CHECK(r.system.top_degree == 3);
}
