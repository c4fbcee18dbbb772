#include "alcqi/problem.hpp"

#include <algorithm>
#include <map>

namespace alcqi {

Concept internalize(const std::vector<Axiom>& axioms) {
  std::vector<Concept> conjuncts;
  for (const auto& ax : axioms) {
    auto clause = to_nnf(Concept::disjunction({Concept::negation(ax.lhs), ax.rhs}));
    if (clause.kind() == ConceptKind::Or) {
      std::vector<Concept> kept;
      bool trivial = false;
      for (const auto& d : clause.operands()) {
        if (d.kind() != ConceptKind::Bottom) kept.push_back(d);
        trivial = trivial || d.kind() == ConceptKind::Top;
      }
      clause = trivial ? Concept::top() : Concept::disjunction(std::move(kept));
    }
    if (clause.kind() == ConceptKind::Top) continue;
    conjuncts.push_back(std::move(clause));
  }
  return Concept::conjunction(std::move(conjuncts));
}

namespace {

void collect_modal(const Concept& c, std::vector<ModalOccurrence>& out) {
  switch (c.kind()) {
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast:
      out.push_back({c.role(), c.filler(),
                     c.kind() == ConceptKind::AtMost ? Sense::AtMost : Sense::AtLeast,
                     c.bound()});
      collect_modal(c.filler(), out);
      break;
    case ConceptKind::Not:
    case ConceptKind::And:
    case ConceptKind::Or:
      for (const auto& op : c.operands()) collect_modal(op, out);
      break;
    default: break;
  }
}

void collect_names(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::Atomic:
    case ConceptKind::NegatedAtomic: sig.concepts.insert(c.name()); break;
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast:
      sig.roles.insert(c.role().base);
      collect_names(c.filler(), sig);
      break;
    case ConceptKind::Not:
    case ConceptKind::And:
    case ConceptKind::Or:
      for (const auto& op : c.operands()) collect_names(op, sig);
      break;
    default: break;
  }
}

}  // namespace

std::vector<ModalOccurrence> modal_subformulae(const Concept& goal, const Concept& axiom) {
  std::vector<ModalOccurrence> out;
  collect_modal(goal, out);
  collect_modal(axiom, out);
  return out;
}

CutFormula make_cut_formula(const Role& role, const Concept& filler) {
  CutFormula cut{role, filler, negate(filler), Concept::top()};
  cut.formula = Concept::disjunction({cut.guard(), cut.filler, cut.negated});
  return cut;
}

std::vector<CutFormula> cut_formulae(const Concept& goal, const Concept& axiom) {
  std::map<std::pair<Role, Concept>, CutFormula> by_pair;
  for (const auto& occ : modal_subformulae(goal, axiom)) {
    auto key = std::make_pair(occ.role, occ.filler);
    if (!by_pair.contains(key)) by_pair.emplace(key, make_cut_formula(occ.role, occ.filler));
  }
  std::vector<CutFormula> out;
  out.reserve(by_pair.size());
  for (auto& [key, cut] : by_pair) out.push_back(std::move(cut));
  return out;
}

Signature signature_of(const std::vector<Concept>& concepts) {
  Signature sig;
  for (const auto& c : concepts) collect_names(c, sig);
  return sig;
}

ConceptSet Problem::cut_concepts() const {
  std::vector<Concept> out;
  out.reserve(cuts.size());
  for (const auto& cut : cuts) out.push_back(cut.formula);
  return make_set(std::move(out));
}

Problem make_problem(const Concept& goal, const std::vector<Axiom>& axioms) {
  Problem p;
  p.goal = to_nnf(goal);
  p.axiom = internalize(axioms);
  p.cuts = cut_formulae(p.goal, p.axiom);
  p.signature = signature_of({p.goal, p.axiom});
  return p;
}

}  // namespace alcqi
