#pragma once

// Propositional branches of node labels, cut-sets handed from a parent to its
// successors, fine-tuning of number restrictions and primitive clashes.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "alcqi/concept.hpp"
#include "alcqi/problem.hpp"

namespace alcqi {

// One DNF disjunct of a label: a sorted set of literals.
struct Branch {
  ConceptSet literals;

  friend bool operator==(const Branch&, const Branch&) = default;
  friend auto operator<=>(const Branch& a, const Branch& b) {
    return std::lexicographical_compare_three_way(a.literals.begin(), a.literals.end(),
                                                  b.literals.begin(), b.literals.end());
  }
};

std::string to_string(const Branch& b);

// Roles that carry at least one modal literal in `b`, in role order.
std::vector<Role> modal_roles(const Branch& b);

// Lazily enumerates the DNF disjuncts of the conjunction of a label,
// treating literals (modal constraints included) as propositions. Choices
// are made depth first over disjunctions in left-to-right operand order;
// disjuncts equal as sets to an earlier one are skipped.
//
// An optional prune predicate is consulted whenever a literal is added to a
// partial disjunct; returning true discards every completion of it. It must
// therefore only reject sets whose supersets are rejected too.
class BranchEnumerator {
 public:
  using Prune = std::function<bool(const ConceptSet& partial)>;

  explicit BranchEnumerator(const ConceptSet& label, Prune prune = {});

  std::optional<Branch> next();

 private:
  struct Frame {
    std::vector<Concept> agenda;  // processed from the back
    ConceptSet literals;
  };
  struct ChoicePoint {
    Frame frame;  // state just before the disjunction was taken
    Concept disjunction;
    std::size_t next_operand;
  };

  // Runs the current frame to a complete disjunct; false if pruned.
  bool saturate();
  bool backtrack();

  Prune prune_;
  Frame current_;
  std::vector<ChoicePoint> choices_;
  std::set<ConceptSet> seen_;
  bool started_ = false;
  bool done_ = false;
};

// Materializes every branch of `label`.
std::vector<Branch> enumerate_branches(const ConceptSet& label);

enum class CutChoice : std::uint8_t { FillerHolds, FillerNegatedHolds };

struct CutEntry {
  Role role;  // role of the child's modal constraints, the inverse of the edge
  Concept filler;
  CutChoice choice;

  friend bool operator==(const CutEntry&, const CutEntry&) = default;
  friend auto operator<=>(const CutEntry& a, const CutEntry& b) {
    if (auto c = a.role <=> b.role; c != 0) return c;
    if (auto c = a.filler <=> b.filler; c != 0) return c;
    return a.choice <=> b.choice;
  }
};

// The parent's choices for the fillers its successors over one edge count it
// against. Sorted by (role, filler), at most one entry per pair.
struct CutSet {
  std::vector<CutEntry> entries;

  bool empty() const { return entries.empty(); }
  std::optional<CutChoice> find(const Role& role, const Concept& filler) const;
  // The chosen D or D̃ of every entry.
  ConceptSet literals() const;

  friend bool operator==(const CutSet&, const CutSet&) = default;
  friend auto operator<=>(const CutSet& a, const CutSet& b) {
    return std::lexicographical_compare_three_way(a.entries.begin(), a.entries.end(),
                                                  b.entries.begin(), b.entries.end());
  }
};

std::string to_string(const CutSet& c);

// Truth of `c` under the partial assignment that makes the literals of `b`
// true and their complements false (strong Kleene). nullopt if undetermined.
std::optional<bool> evaluate_in_branch(const Concept& c, const Branch& b);

// Splits the cut formulae guarded by `edge_role` at the parent. A cut formula
// whose filler is undetermined by the parent's branch is left out; that only
// happens when the parent chose the guard, which forbids successors over the
// edge.
CutSet cut_set_for_child(const Branch& parent_branch, const Role& edge_role,
                         const std::vector<CutFormula>& cuts);

// Decrements by one every bound of a constraint on the inverse of
// `edge_role` whose filler the parent satisfies. ∃≥ bounds stop at 0; ∃≤
// bounds may reach -1.
Branch fine_tune(const Branch& b, const CutSet& cut, const Role& edge_role);

enum class ClashKind : std::uint8_t { Bottom, Complementary, NegativeBound };

struct Clash {
  ClashKind kind;
  ConceptSet culprits;  // the minimal clashing subset
};

std::optional<Clash> primitive_clash(const ConceptSet& literals);
inline std::optional<Clash> primitive_clash(const Branch& b) { return primitive_clash(b.literals); }

}  // namespace alcqi
