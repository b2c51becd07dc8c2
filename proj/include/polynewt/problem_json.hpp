#pragma once

#include <string>

#include <json.hpp>

#include "polynewt/problems.hpp"

namespace polynewt {

// On-disk problem format: a single JSON object
//
//   {
//     "n": 3,
//     "convention": "Lu+N+b=0",
//     "linear":   [[i, j, value], ...],
//     "terms":    [{"degree": m, "entries": [[i, [j1..jm], coeff], ...]}, ...],
//     "constant": [b_0, ..., b_{n-1}],
//     "known_root": [...],   // optional
//     "u0": [...]            // optional; defaults to all ones on load
//   }
//
// The convention string is mandatory and pins the sign convention
// f(u) = L u + sum_m N^(m)(u) + b = 0.  Serialization emits the system in
// its canonical (sorted, merged) entry order with full-precision numbers,
// so parse -> serialize is a semantic round trip.

nlohmann::json problem_to_json(const ProblemSpec& spec);

// Parses and validates one problem object.  Throws BadProblemFile for
// anything malformed: wrong types, an unknown convention string, indices
// out of range, degree/multi-index mismatches, non-finite numbers, or a
// claimed known_root whose residual is not ~zero.
ProblemSpec problem_from_json(const nlohmann::json& j, const std::string& name);

// Reads a problem file from disk.  Throws BadProblemFile when the file is
// missing, unreadable, not valid JSON, or fails validation.
ProblemSpec load_problem_file(const std::string& path);

}  // namespace polynewt
