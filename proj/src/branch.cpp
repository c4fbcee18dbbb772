#include "alcqi/branch.hpp"

#include <algorithm>
#include <stdexcept>

namespace alcqi {

std::string to_string(const Branch& b) { return to_string(b.literals); }

std::vector<Role> modal_roles(const Branch& b) {
  std::vector<Role> roles;
  for (const auto& lit : b.literals) {
    if (lit.is_modal()) roles.push_back(lit.role());
  }
  std::sort(roles.begin(), roles.end());
  roles.erase(std::unique(roles.begin(), roles.end()), roles.end());
  return roles;
}

BranchEnumerator::BranchEnumerator(const ConceptSet& label, Prune prune)
    : prune_(std::move(prune)) {
  current_.agenda.assign(label.rbegin(), label.rend());
}

bool BranchEnumerator::saturate() {
  while (!current_.agenda.empty()) {
    Concept c = std::move(current_.agenda.back());
    current_.agenda.pop_back();
    switch (c.kind()) {
      case ConceptKind::And:
        current_.agenda.insert(current_.agenda.end(), c.operands().rbegin(), c.operands().rend());
        break;
      case ConceptKind::Or:
        choices_.push_back({current_, c, 1});
        current_.agenda.push_back(c.operands().front());
        break;
      case ConceptKind::Not:
        throw std::invalid_argument("branch enumeration needs NNF input: " + to_string(c));
      default: {
        const auto before = current_.literals.size();
        set_insert(current_.literals, c);
        if (current_.literals.size() != before && prune_ && prune_(current_.literals)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool BranchEnumerator::backtrack() {
  while (!choices_.empty()) {
    auto& cp = choices_.back();
    const auto& ops = cp.disjunction.operands();
    if (cp.next_operand < ops.size()) {
      current_ = cp.frame;
      current_.agenda.push_back(ops[cp.next_operand]);
      if (++cp.next_operand == ops.size()) choices_.pop_back();
      return true;
    }
    choices_.pop_back();
  }
  return false;
}

std::optional<Branch> BranchEnumerator::next() {
  if (done_) return std::nullopt;
  bool complete = false;
  if (!started_) {
    started_ = true;
    complete = saturate();
  }
  while (true) {
    if (complete && seen_.insert(current_.literals).second) return Branch{current_.literals};
    if (!backtrack()) {
      done_ = true;
      return std::nullopt;
    }
    complete = saturate();
  }
}

std::vector<Branch> enumerate_branches(const ConceptSet& label) {
  std::vector<Branch> out;
  BranchEnumerator en(label);
  while (auto b = en.next()) out.push_back(std::move(*b));
  return out;
}

std::optional<CutChoice> CutSet::find(const Role& role, const Concept& filler) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(role, filler),
                             [](const CutEntry& e, const std::pair<Role, Concept>& key) {
                               if (auto c = e.role <=> key.first; c != 0) return c < 0;
                               return e.filler < key.second;
                             });
  if (it == entries.end() || it->role != role || !(it->filler == filler)) return std::nullopt;
  return it->choice;
}

ConceptSet CutSet::literals() const {
  std::vector<Concept> out;
  for (const auto& e : entries) {
    out.push_back(e.choice == CutChoice::FillerHolds ? e.filler : negate(e.filler));
  }
  return make_set(std::move(out));
}

std::string to_string(const CutSet& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const auto& e = c.entries[i];
    if (i) out += ", ";
    out += "(" + to_string(e.role) + " " + to_string(e.filler) + ")";
    out += e.choice == CutChoice::FillerHolds ? "+" : "-";
  }
  return out + "}";
}

std::optional<bool> evaluate_in_branch(const Concept& c, const Branch& b) {
  switch (c.kind()) {
    case ConceptKind::Top: return true;
    case ConceptKind::Bottom: return false;
    case ConceptKind::Not: {
      auto v = evaluate_in_branch(c.operand(), b);
      if (!v) return std::nullopt;
      return !*v;
    }
    case ConceptKind::And:
    case ConceptKind::Or: {
      const bool conj = c.kind() == ConceptKind::And;
      bool unknown = false;
      for (const auto& op : c.operands()) {
        auto v = evaluate_in_branch(op, b);
        if (!v) {
          unknown = true;
        } else if (*v != conj) {
          return !conj;
        }
      }
      if (unknown) return std::nullopt;
      return conj;
    }
    default:
      if (set_contains(b.literals, c)) return true;
      if (set_contains(b.literals, negate(c))) return false;
      return std::nullopt;
  }
}

CutSet cut_set_for_child(const Branch& parent_branch, const Role& edge_role,
                         const std::vector<CutFormula>& cuts) {
  CutSet out;
  for (const auto& cut : cuts) {
    if (cut.guard_role() != edge_role) continue;
    auto v = evaluate_in_branch(cut.filler, parent_branch);
    if (!v) continue;
    out.entries.push_back(
        {cut.role, cut.filler, *v ? CutChoice::FillerHolds : CutChoice::FillerNegatedHolds});
  }
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

Branch fine_tune(const Branch& b, const CutSet& cut, const Role& edge_role) {
  if (cut.empty()) return b;
  const Role counted = edge_role.inverse();
  std::vector<Concept> out;
  out.reserve(b.literals.size());
  for (const auto& lit : b.literals) {
    if (lit.is_modal() && lit.role() == counted &&
        cut.find(counted, lit.filler()) == CutChoice::FillerHolds) {
      if (lit.kind() == ConceptKind::AtMost) {
        out.push_back(Concept::at_most(lit.bound() - 1, lit.role(), lit.filler()));
      } else {
        out.push_back(
            Concept::at_least(std::max<std::int64_t>(lit.bound() - 1, 0), lit.role(), lit.filler()));
      }
    } else {
      out.push_back(lit);
    }
  }
  return Branch{make_set(std::move(out))};
}

std::optional<Clash> primitive_clash(const ConceptSet& literals) {
  if (set_contains(literals, Concept::bottom())) {
    return Clash{ClashKind::Bottom, {Concept::bottom()}};
  }
  for (const auto& lit : literals) {
    if (lit.kind() == ConceptKind::Top || lit.kind() == ConceptKind::Not) continue;
    if (lit.kind() == ConceptKind::AtMost && lit.bound() < 0) continue;
    auto complement = negate(lit);
    if (set_contains(literals, complement)) {
      return Clash{ClashKind::Complementary, make_set({lit, complement})};
    }
  }
  for (const auto& lit : literals) {
    if (lit.kind() == ConceptKind::AtMost && lit.bound() < 0) {
      return Clash{ClashKind::NegativeBound, {lit}};
    }
  }
  return std::nullopt;
}

}  // namespace alcqi
