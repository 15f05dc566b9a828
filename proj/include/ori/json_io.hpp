#pragma once

#include <string>

#include "ori/fold_ops.hpp"
#include "ori/svg.hpp"

namespace ori::io {

// Thrown for malformed requests: bad JSON, unknown operation, missing or
// extraneous operands, invalid tolerance overrides.
struct RequestError : Error {
    using Error::Error;
};

struct SolveRequest {
    OpInstance instance;
    Tolerances tol;
};

// Request schema:
//   { "op": "O1".."O8",
//     "points": { "P": [x, y], ... },
//     "lines":  { "m": [a, b, c], ... },
//     "tolerance": { "eps_incidence": ..., "eps_parallel": ...,
//                    "eps_root_dedup": ..., "eps_sign": ... } }   (optional)
// Operand names are fixed per operation (P, Q, m, n); lines are normalized on
// ingest. `base_tol` supplies defaults the request may override.
SolveRequest parse_solve_request(const std::string& text, const Tolerances& base_tol = {});

// Single-line response: {"solutions":[[a,b,c],...],"count":n,
// "multiplicities":[...],"condition":"...","op":"..."}.
std::string solve_response_json(const OpInstance& inst, const SolutionSet& solutions,
                                const Tolerances& tol = {});

// Scene schema: {"points": {...}, "lines": {...}, "fold_lines": {...},
// "parabolas": {"psi": {"focus": [x,y], "directrix": [a,b,c]}}}, each map
// optional.
svg::Scene parse_scene(const std::string& text, const Tolerances& tol = {});

}  // namespace ori::io
