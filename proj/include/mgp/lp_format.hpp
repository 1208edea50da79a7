#pragma once

#include <string>

#include "mgp/mip.hpp"

namespace mgp {

// Text interchange for MipProgram, grammar documented in docs/lp-format.md.
// Emission is deterministic: declaration order everywhere, every variable
// gets a Bounds line, doubles printed with %.17g so values round-trip.
std::string emit_interchange(const MipProgram& p);

// Inverse of emit_interchange on its own output (structural identity).
// Also accepts hand-written files in the documented grammar.
bool parse_interchange(const std::string& text, MipProgram* out, std::string* error);

// Solution files: "STATUS <s>", "OBJ <v>", optional "GAP <g>", then one
// "<name> <value>" line per variable. Variables absent from the file are 0.
std::string write_solution(const MipProgram& p, const MipSolution& s);
bool import_solution(const MipProgram& p, const std::string& text, MipSolution* out,
                     std::string* error);

} // namespace mgp
