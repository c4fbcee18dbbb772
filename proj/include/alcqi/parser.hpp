#pragma once

#include <string_view>

#include "alcqi/concept.hpp"

namespace alcqi {

// Parses one concept in s-expression syntax:
//
//   top | bottom | <name> | (not c) | (and c ...) | (or c ...)
//   | (atleast n r c) | (atmost n r c)        r := <name> | (inv r)
//
// The result is not normalized. Positions in errors are 1-based; `line`
// offsets the reported line when the text is a fragment of a larger file,
// `column` likewise offsets the first line.
Concept parse_concept(std::string_view text, std::size_t line = 1, std::size_t column = 1);

// Parses a sequence of whitespace-separated concepts (as on a problem file
// line) and returns them in order.
std::vector<Concept> parse_concepts(std::string_view text, std::size_t line = 1,
                                    std::size_t column = 1);

}  // namespace alcqi
