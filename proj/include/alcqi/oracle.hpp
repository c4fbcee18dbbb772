#pragma once

// Bounded-domain model finder. Evaluates concepts directly over small
// explicit interpretations; used as ground truth in tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcqi/concept.hpp"

namespace alcqi {

struct Interpretation {
  int domain_size = 1;
  // Bit x set iff element x is in the extension.
  std::map<std::string, std::uint32_t> concept_extensions;
  // role_extensions[R][x] has bit y set iff (x, y) ∈ R. Inverse roles are
  // read off by transposition, never stored.
  std::map<std::string, std::vector<std::uint32_t>> role_extensions;

  bool has_edge(const Role& role, int from, int to) const;
  void add_edge(const std::string& role, int from, int to);
  // Elements y with (x, y) in the (possibly inverted) role.
  std::uint32_t neighbors(const Role& role, int x) const;
};

std::string dump(const Interpretation& i);

// Truth of `c` at `element`. Raw negation is accepted; unknown names have
// empty extensions.
bool eval(const Interpretation& i, const Concept& c, int element);

struct OracleLimits {
  std::size_t max_concepts = 3;
  std::size_t max_roles = 2;
  int max_domain = 3;
};

struct ModelSearch {
  std::optional<Interpretation> model;
  // Largest domain size exhausted when nothing was found. Not a proof of
  // unsatisfiability.
  int searched_up_to = 0;

  bool found() const { return model.has_value(); }
};

// Searches interpretations of size 1..max_domain, ascending, for one where
// every element satisfies `axiom` and some element satisfies `goal`. Role
// structures are enumerated up to isomorphism. Throws OracleRefusal when
// the signature or max_domain exceeds `limits`.
ModelSearch find_model(const Concept& goal, const Concept& axiom, int max_domain,
                       const OracleLimits& limits = {});

}  // namespace alcqi
