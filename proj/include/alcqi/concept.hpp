#pragma once

// Concept syntax for ALCQI: roles, concept ASTs, negation normal form.
//
// Concepts are immutable, reference-counted trees. Conjunctions and
// disjunctions are kept n-ary, flattened, sorted and free of duplicates, so
// structural equality coincides with set semantics of their operands. The
// total order used for sorting is also the order in which branches, cut-sets
// and nogoods are compared and enumerated.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alcqi {

struct Role {
  std::string base;
  bool inverted = false;

  Role inverse() const { return Role{base, !inverted}; }

  friend bool operator==(const Role&, const Role&) = default;
  friend std::strong_ordering operator<=>(const Role&, const Role&) = default;
};

std::string to_string(const Role& role);

enum class ConceptKind : std::uint8_t {
  Top,
  Bottom,  // ¬⊤
  Atomic,
  NegatedAtomic,
  AtMost,
  AtLeast,
  Not,  // only before normalization
  And,
  Or,
};

class Concept {
 public:
  static Concept top();
  static Concept bottom();
  static Concept atomic(std::string name);
  static Concept negated_atomic(std::string name);
  // Bound -1 is accepted here; it only ever arises from fine-tuning.
  static Concept at_most(std::int64_t bound, Role role, Concept filler);
  static Concept at_least(std::int64_t bound, Role role, Concept filler);
  static Concept negation(Concept operand);
  // Flatten, sort and deduplicate. An empty conjunction is ⊤, an empty
  // disjunction is ¬⊤, a single operand is returned as is.
  static Concept conjunction(std::vector<Concept> operands);
  static Concept disjunction(std::vector<Concept> operands);

  ConceptKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  std::int64_t bound() const { return node_->bound; }
  const Role& role() const { return node_->role; }
  const Concept& filler() const { return node_->operands.front(); }
  const Concept& operand() const { return node_->operands.front(); }
  const std::vector<Concept>& operands() const { return node_->operands; }

  bool is_modal() const {
    return kind() == ConceptKind::AtMost || kind() == ConceptKind::AtLeast;
  }
  // Atoms, negated atoms, ⊤, ¬⊤ and modal constraints.
  bool is_literal() const;
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node {
    ConceptKind kind;
    std::string name;
    std::int64_t bound = 0;
    Role role;
    std::vector<Concept> operands;
    std::size_t hash = 0;
  };

  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(Node node);
  static Concept junction(ConceptKind kind, std::vector<Concept> operands);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// S-expression rendering; parse_concept(to_string(c)) == c for every concept
// without negative bounds.
std::string to_string(const Concept& c);

// Push negation inward until it only sits on atomic names. ∃≥0 R.C becomes
// ⊤ and its negation ¬⊤, which would otherwise need the bound -1.
Concept to_nnf(const Concept& c);

// NNF of ¬c.
Concept negate(const Concept& c);

// Sorted, duplicate-free set of concepts.
using ConceptSet = std::vector<Concept>;

ConceptSet make_set(std::vector<Concept> items);
bool set_contains(const ConceptSet& set, const Concept& c);
// a ⊆ b for sorted sets.
bool is_subset(const ConceptSet& a, const ConceptSet& b);
void set_insert(ConceptSet& set, const Concept& c);
std::string to_string(const ConceptSet& set);

}  // namespace alcqi
