#include "alcqi/concept.hpp"

#include <algorithm>
#include <functional>

namespace alcqi {

namespace {

int rank(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::Top: return 0;
    case ConceptKind::Bottom: return 1;
    case ConceptKind::Atomic:
    case ConceptKind::NegatedAtomic: return 2;
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast: return 3;
    case ConceptKind::Not: return 4;
    case ConceptKind::And: return 5;
    case ConceptKind::Or: return 6;
  }
  return 7;
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string to_string(const Role& role) {
  return role.inverted ? "(inv " + role.base + ")" : role.base;
}

Concept Concept::make(Node node) {
  std::size_t h = static_cast<std::size_t>(node.kind);
  h = mix(h, std::hash<std::string>{}(node.name));
  h = mix(h, std::hash<std::int64_t>{}(node.bound));
  h = mix(h, std::hash<std::string>{}(node.role.base));
  h = mix(h, node.role.inverted ? 1 : 0);
  for (const auto& op : node.operands) h = mix(h, op.hash());
  node.hash = h;
  return Concept(std::make_shared<const Node>(std::move(node)));
}

Concept Concept::top() {
  static const Concept c = make(Node{ConceptKind::Top, {}, 0, {}, {}});
  return c;
}

Concept Concept::bottom() {
  static const Concept c = make(Node{ConceptKind::Bottom, {}, 0, {}, {}});
  return c;
}

Concept Concept::atomic(std::string name) {
  return make(Node{ConceptKind::Atomic, std::move(name), 0, {}, {}});
}

Concept Concept::negated_atomic(std::string name) {
  return make(Node{ConceptKind::NegatedAtomic, std::move(name), 0, {}, {}});
}

Concept Concept::at_most(std::int64_t bound, Role role, Concept filler) {
  return make(Node{ConceptKind::AtMost, {}, bound, std::move(role), {std::move(filler)}});
}

Concept Concept::at_least(std::int64_t bound, Role role, Concept filler) {
  return make(Node{ConceptKind::AtLeast, {}, bound, std::move(role), {std::move(filler)}});
}

Concept Concept::negation(Concept operand) {
  return make(Node{ConceptKind::Not, {}, 0, {}, {std::move(operand)}});
}

Concept Concept::junction(ConceptKind kind, std::vector<Concept> operands) {
  std::vector<Concept> flat;
  flat.reserve(operands.size());
  for (auto& op : operands) {
    if (op.kind() == kind) {
      flat.insert(flat.end(), op.operands().begin(), op.operands().end());
    } else {
      flat.push_back(std::move(op));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return kind == ConceptKind::And ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return make(Node{kind, {}, 0, {}, std::move(flat)});
}

Concept Concept::conjunction(std::vector<Concept> operands) {
  return junction(ConceptKind::And, std::move(operands));
}

Concept Concept::disjunction(std::vector<Concept> operands) {
  return junction(ConceptKind::Or, std::move(operands));
}

bool Concept::is_literal() const {
  switch (kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
    case ConceptKind::NegatedAtomic:
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast: return true;
    default: return false;
  }
}

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto ka = a.kind();
  const auto kb = b.kind();
  if (auto c = rank(ka) <=> rank(kb); c != 0) return c;
  switch (ka) {
    case ConceptKind::Top:
    case ConceptKind::Bottom: return std::strong_ordering::equal;
    case ConceptKind::Atomic:
    case ConceptKind::NegatedAtomic:
      // A < ¬A < B, so a literal and its complement are adjacent.
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      return (ka == ConceptKind::NegatedAtomic) <=> (kb == ConceptKind::NegatedAtomic);
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast:
      if (auto c = a.role() <=> b.role(); c != 0) return c;
      if (auto c = a.filler() <=> b.filler(); c != 0) return c;
      if (auto c = (ka == ConceptKind::AtLeast) <=> (kb == ConceptKind::AtLeast); c != 0) return c;
      return a.bound() <=> b.bound();
    case ConceptKind::Not: return a.operand() <=> b.operand();
    case ConceptKind::And:
    case ConceptKind::Or:
      return std::lexicographical_compare_three_way(a.operands().begin(), a.operands().end(),
                                                    b.operands().begin(), b.operands().end());
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top: return "top";
    case ConceptKind::Bottom: return "bottom";
    case ConceptKind::Atomic: return c.name();
    case ConceptKind::NegatedAtomic: return "(not " + c.name() + ")";
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast:
      return std::string(c.kind() == ConceptKind::AtMost ? "(atmost " : "(atleast ") +
             std::to_string(c.bound()) + " " + to_string(c.role()) + " " + to_string(c.filler()) +
             ")";
    case ConceptKind::Not: return "(not " + to_string(c.operand()) + ")";
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::string out = c.kind() == ConceptKind::And ? "(and" : "(or";
      for (const auto& op : c.operands()) out += " " + to_string(op);
      return out + ")";
    }
  }
  return {};
}

namespace {

Concept nnf(const Concept& c, bool negated) {
  switch (c.kind()) {
    case ConceptKind::Top: return negated ? Concept::bottom() : c;
    case ConceptKind::Bottom: return negated ? Concept::top() : c;
    case ConceptKind::Atomic: return negated ? Concept::negated_atomic(c.name()) : c;
    case ConceptKind::NegatedAtomic: return negated ? Concept::atomic(c.name()) : c;
    case ConceptKind::Not: return nnf(c.operand(), !negated);
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> ops;
      ops.reserve(c.operands().size());
      for (const auto& op : c.operands()) ops.push_back(nnf(op, negated));
      const bool conj = (c.kind() == ConceptKind::And) != negated;
      return conj ? Concept::conjunction(std::move(ops)) : Concept::disjunction(std::move(ops));
    }
    case ConceptKind::AtMost: {
      auto filler = nnf(c.filler(), false);
      if (!negated) return Concept::at_most(c.bound(), c.role(), std::move(filler));
      // ∃≤-1 is unsatisfiable, its complement holds everywhere.
      if (c.bound() < 0) return Concept::top();
      return Concept::at_least(c.bound() + 1, c.role(), std::move(filler));
    }
    case ConceptKind::AtLeast: {
      auto filler = nnf(c.filler(), false);
      // ∃≥0 is a tautology; keeping ⊤ makes negate an involution.
      if (c.bound() <= 0) return negated ? Concept::bottom() : Concept::top();
      if (!negated) return Concept::at_least(c.bound(), c.role(), std::move(filler));
      return Concept::at_most(c.bound() - 1, c.role(), std::move(filler));
    }
  }
  return c;
}

}  // namespace

Concept to_nnf(const Concept& c) { return nnf(c, false); }

Concept negate(const Concept& c) { return nnf(c, true); }

ConceptSet make_set(std::vector<Concept> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

bool set_contains(const ConceptSet& set, const Concept& c) {
  return std::binary_search(set.begin(), set.end(), c);
}

bool is_subset(const ConceptSet& a, const ConceptSet& b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void set_insert(ConceptSet& set, const Concept& c) {
  auto it = std::lower_bound(set.begin(), set.end(), c);
  if (it == set.end() || !(*it == c)) set.insert(it, c);
}

std::string to_string(const ConceptSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += to_string(set[i]);
  }
  return out + "}";
}

}  // namespace alcqi
