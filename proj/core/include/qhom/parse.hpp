#pragma once

#include <string>

#include "qhom/quiver.hpp"

namespace qhom {

// Parse the line-oriented presentation format:
//
//   # comment
//   field p=101
//   composition function        (optional; default from the second argument)
//   vertices 1 2 3
//   arrow a: 1 -> 2
//   relation a*b - 2 c*d        (words read in the file's composition convention)
//   nilpotency 3
//   truncate 3                  (optional: adds J^3 to the ideal)
//
// Throws ParseError with line/column on malformed input.
AlgebraPresentation parse_presentation(const std::string& text, Composition default_comp = Composition::function,
                                       const std::string& name = "presentation");

AlgebraPresentation parse_presentation_file(const std::string& path,
                                            Composition default_comp = Composition::function);

} // namespace qhom
