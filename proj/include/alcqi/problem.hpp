#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alcqi/concept.hpp"

namespace alcqi {

// lhs ⊑ rhs
struct Axiom {
  Concept lhs;
  Concept rhs;
};

// One big GCI: the conjunction of NNF(¬lhs ⊔ rhs) over all axioms, with ¬⊤
// disjuncts and ⊤ conjuncts dropped. ⊤ for an empty TBox.
Concept internalize(const std::vector<Axiom>& axioms);

enum class Sense : std::uint8_t { AtMost, AtLeast };

struct ModalOccurrence {
  Role role;
  Concept filler;
  Sense sense;
  std::int64_t bound;

  friend bool operator==(const ModalOccurrence&, const ModalOccurrence&) = default;
};

// Every ∃≤/∃≥ subterm of the goal and the axiom, fillers included, in
// pre-order. Repeated occurrences are kept.
std::vector<ModalOccurrence> modal_subformulae(const Concept& goal, const Concept& axiom);

// ∃≤0 R⁻.⊤ ⊔ D ⊔ D̃ for the modal subformulae on role R with filler D.
struct CutFormula {
  Role role;        // R, the role of the modal subformula
  Concept filler;   // D
  Concept negated;  // D̃
  Concept formula;

  // The guard's role R⁻, i.e. the edge label out of a node whose successors
  // must decide D.
  Role guard_role() const { return role.inverse(); }
  Concept guard() const { return Concept::at_most(0, guard_role(), Concept::top()); }
};

CutFormula make_cut_formula(const Role& role, const Concept& filler);

// One cut formula per distinct (role, filler) pair, ordered by that pair.
std::vector<CutFormula> cut_formulae(const Concept& goal, const Concept& axiom);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
};

Signature signature_of(const std::vector<Concept>& concepts);

struct Problem {
  Concept goal = Concept::top();   // E, in NNF
  Concept axiom = Concept::top();  // G, in NNF
  std::vector<CutFormula> cuts;    // K_a
  Signature signature;

  ConceptSet cut_concepts() const;
};

Problem make_problem(const Concept& goal, const std::vector<Axiom>& axioms);

}  // namespace alcqi
