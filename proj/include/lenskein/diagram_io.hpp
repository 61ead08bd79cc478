#pragma once

#include <iosfwd>
#include <string>

#include "lenskein/lens.hpp"

namespace lenskein {

// Line-oriented diagram text: a "lens P Q" header, a "grid N" header, then
// exactly N lines "O X_COORD Y_COORD" and N lines "X X_COORD Y_COORD" in any
// order; '#' starts a comment.  serialize emits the canonical layout and
// parse of a serialized diagram reproduces it exactly.
std::string serialize_diagram(const GridDiagram& d);

// Syntax only; callers validate.  Throws Error(ParseError) on malformed text.
GridDiagram parse_diagram(std::istream& in);
GridDiagram parse_diagram(const std::string& text);

// Parse plus validate; throws Error(ParseError) carrying the violation.
GridDiagram load_diagram_file(const std::string& path);

}  // namespace lenskein
