#include "polynewt/problem_json.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "polynewt/errors.hpp"

namespace polynewt {

using nlohmann::json;

namespace {

Vector parse_vector(const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw BadProblemFile("field '" + what + "' must be an array of " + std::to_string(n) +
                         " numbers");
  Vector out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number())
      throw BadProblemFile("field '" + what + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int parse_index(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw BadProblemFile(what + " must be an integer");
  return j.get<int>();
}

}  // namespace

json problem_to_json(const ProblemSpec& spec) {
  const PolynomialSystem& sys = spec.system;
  json j;
  j["n"] = sys.n;
  j["convention"] = "Lu+N+b=0";
  json linear = json::array();
  for (const auto& e : sys.linear) linear.push_back({e.row, e.col, e.value});
  j["linear"] = std::move(linear);
  json terms = json::array();
  for (const auto& term : sys.terms) {
    json entries = json::array();
    for (const auto& e : term.entries) entries.push_back({e.row, e.vars, e.coeff});
    terms.push_back({{"degree", term.degree}, {"entries", std::move(entries)}});
  }
  j["terms"] = std::move(terms);
  j["constant"] = sys.constant;
  if (spec.known_root) j["known_root"] = *spec.known_root;
  j["u0"] = spec.suggested_u0;
  return j;
}

ProblemSpec problem_from_json(const json& j, const std::string& name) {
  try {
    if (!j.is_object()) throw BadProblemFile("problem file must hold a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw BadProblemFile("field 'n' must be an integer");
    const int n = j["n"].get<int>();
    if (n < 1) throw BadProblemFile("field 'n' must be at least 1");

    if (!j.contains("convention") || !j["convention"].is_string() ||
        j["convention"].get<std::string>() != "Lu+N+b=0")
      throw BadProblemFile("field 'convention' must be the string \"Lu+N+b=0\"");

    if (!j.contains("linear") || !j["linear"].is_array())
      throw BadProblemFile("field 'linear' must be an array of [i, j, value] triples");
    std::vector<MatrixEntry> linear;
    for (const auto& el : j["linear"]) {
      if (!el.is_array() || el.size() != 3 || !el[2].is_number())
        throw BadProblemFile("each 'linear' entry must be an [i, j, value] triple");
      linear.push_back({parse_index(el[0], "linear row"), parse_index(el[1], "linear column"),
                        el[2].get<double>()});
    }

    if (!j.contains("terms") || !j["terms"].is_array())
      throw BadProblemFile("field 'terms' must be an array of {degree, entries} objects");
    std::vector<HomogeneousTerm> terms;
    for (const auto& jt : j["terms"]) {
      if (!jt.is_object() || !jt.contains("degree") || !jt["degree"].is_number_integer() ||
          !jt.contains("entries") || !jt["entries"].is_array())
        throw BadProblemFile("each term must be an object with integer 'degree' and array "
                             "'entries'");
      HomogeneousTerm term;
      term.degree = jt["degree"].get<int>();
      for (const auto& el : jt["entries"]) {
        if (!el.is_array() || el.size() != 3 || !el[1].is_array() || !el[2].is_number())
          throw BadProblemFile("each term entry must be an [i, [j1..jm], coeff] triple");
        TermEntry entry;
        entry.row = parse_index(el[0], "term row");
        for (const auto& v : el[1]) entry.vars.push_back(parse_index(v, "term variable"));
        entry.coeff = el[2].get<double>();
        term.entries.push_back(std::move(entry));
      }
      terms.push_back(std::move(term));
    }

    if (!j.contains("constant"))
      throw BadProblemFile("field 'constant' is required");
    Vector constant = parse_vector(j["constant"], n, "constant");

    ProblemSpec spec;
    spec.name = name;
    try {
      spec.system = build_system(n, std::move(linear), std::move(terms), std::move(constant));
    } catch (const Error& e) {
      throw BadProblemFile(std::string("invalid problem: ") + e.what());
    }

    if (j.contains("known_root")) {
      Vector root = parse_vector(j["known_root"], n, "known_root");
      const double defect = inf_norm(eval_residual(spec.system, root));
      if (!(defect <= 1e-10 * (1.0 + inf_norm(spec.system.constant))))
        throw BadProblemFile("known_root does not solve the system (residual " +
                             std::to_string(defect) + ")");
      spec.known_root = std::move(root);
    }
    spec.suggested_u0 =
        j.contains("u0") ? parse_vector(j["u0"], n, "u0") : Vector(spec.system.n, 1.0);
    return spec;
  } catch (const BadProblemFile&) {
    throw;
  } catch (const json::exception& e) {
    throw BadProblemFile(std::string("malformed problem JSON: ") + e.what());
  }
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadProblemFile("cannot read problem file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw BadProblemFile("cannot parse '" + path + "': " + e.what());
  }
  return problem_from_json(j, std::filesystem::path(path).stem().string());
}

}  // namespace polynewt
