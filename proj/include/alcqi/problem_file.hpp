#pragma once

// Line-oriented problem files and the random corpus generator.
//
//   # comment
//   gci <c1> <c2>     c1 ⊑ c2
//   axiom <c>         ⊤ ⊑ c
//   sat <c>           the query, exactly once per problem file

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "alcqi/concept.hpp"
#include "alcqi/problem.hpp"

namespace alcqi {

struct ProblemFile {
  std::vector<Axiom> tbox;
  Concept query = Concept::top();

  friend bool operator==(const ProblemFile& a, const ProblemFile& b);
};

// A problem file; throws ParseError with the offending line and column.
ProblemFile parse_problem_file(std::string_view text);

// `gci` and `axiom` lines only, for --tbox files.
std::vector<Axiom> parse_tbox_file(std::string_view text);

// Axioms with ⊤ on the left print as `axiom` lines.
std::string print_problem_file(const ProblemFile& p);

struct CorpusProfile {
  int max_depth = 3;  // nesting of number restrictions; 0 is propositional
  std::int64_t max_bound = 3;
  int roles = 2;  // R, S
  int atoms = 3;  // A, B, C
  int max_axioms = 2;
};

std::vector<ProblemFile> generate_corpus(std::uint64_t seed, std::size_t count,
                                         const CorpusProfile& profile = {});

}  // namespace alcqi
