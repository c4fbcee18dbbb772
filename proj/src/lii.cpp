#include "alcqi/lii.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "alcqi/errors.hpp"

namespace alcqi {

std::vector<Concept> AtomSet::conjuncts(const std::vector<Concept>& fillers) const {
  std::vector<Concept> out;
  out.reserve(fillers.size());
  for (std::size_t k = 0; k < fillers.size(); ++k) {
    out.push_back(contains_positively(k) ? fillers[k] : negate(fillers[k]));
  }
  return out;
}

std::vector<Concept> collect_fillers(const Branch& b, const Role& role) {
  std::vector<Concept> out;
  for (const auto& lit : b.literals) {
    if (!lit.is_modal() || lit.role() != role) continue;
    if (std::find(out.begin(), out.end(), lit.filler()) == out.end()) out.push_back(lit.filler());
  }
  return out;
}

std::vector<AtomSet> atomic_decomposition(const std::vector<Concept>& fillers,
                                          std::size_t lambda_max, const std::string& where) {
  if (fillers.size() > lambda_max || fillers.size() >= 31) {
    throw ResourceLimitError("atomic decomposition over " + std::to_string(fillers.size()) +
                             " fillers exceeds lambda-max " + std::to_string(lambda_max) +
                             (where.empty() ? "" : " at " + where));
  }
  const std::uint32_t count = (std::uint32_t{1} << fillers.size()) - 1;
  std::vector<AtomSet> out;
  out.reserve(count);
  for (std::uint32_t mask = 1; mask <= count; ++mask) out.push_back(AtomSet{mask});
  return out;
}

LiiSystem::LiiSystem(Role role, std::vector<Concept> fillers, std::vector<LiiRow> rows)
    : role_(std::move(role)), fillers_(std::move(fillers)), rows_(std::move(rows)) {
  zeroed_.assign(atom_count() + 1, false);
}

std::vector<std::uint32_t> LiiSystem::zeroed() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 1; j < zeroed_.size(); ++j) {
    if (zeroed_[j]) out.push_back(j);
  }
  return out;
}

LiiSystem LiiSystem::zero_column(std::uint32_t atom) const {
  if (atom == 0 || atom > atom_count()) {
    throw std::out_of_range("atom index " + std::to_string(atom) + " out of range");
  }
  LiiSystem out = *this;
  out.zeroed_[atom] = true;
  return out;
}

std::string LiiSystem::dump() const {
  std::string out = "lii role=" + to_string(role_) + " atoms=" + std::to_string(atom_count()) + "\n";
  for (std::size_t k = 0; k < fillers_.size(); ++k) {
    out += "  C" + std::to_string(k) + " = " + to_string(fillers_[k]) + "\n";
  }
  out += "  zeroed:";
  for (auto j : zeroed()) out += " v" + std::to_string(j);
  out += "\n";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out += "  [";
    for (std::uint32_t j = 1; j <= atom_count(); ++j) {
      out += (j > 1 ? " " : "") + std::to_string(coefficient(r, j));
    }
    out += rows_[r].sense == Sense::AtMost ? "] <= " : "] >= ";
    out += std::to_string(rows_[r].bound) + "\n";
  }
  return out;
}

LiiSystem build_lii(const Branch& b, const Role& role, std::size_t lambda_max,
                    const std::string& where) {
  auto fillers = collect_fillers(b, role);
  atomic_decomposition(fillers, lambda_max, where);  // size check
  std::vector<LiiRow> rows;
  for (const auto& lit : b.literals) {
    if (!lit.is_modal() || lit.role() != role) continue;
    if (lit.bound() < 0) {
      throw std::invalid_argument("negative bound reached the LII: " + to_string(lit));
    }
    const auto idx = static_cast<std::size_t>(
        std::find(fillers.begin(), fillers.end(), lit.filler()) - fillers.begin());
    rows.push_back({idx, lit.kind() == ConceptKind::AtMost ? Sense::AtMost : Sense::AtLeast,
                    lit.bound()});
  }
  return LiiSystem(role, std::move(fillers), std::move(rows));
}

LiiSystem zero_clashed_atoms(LiiSystem sys) {
  for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) {
    if (sys.is_zeroed(j)) continue;
    if (primitive_clash(make_set(AtomSet{j}.conjuncts(sys.fillers())))) sys = sys.zero_column(j);
  }
  return sys;
}

LiiSystem zero_forbidden_atoms(LiiSystem sys) {
  for (std::size_t r = 0; r < sys.rows().size(); ++r) {
    const auto& row = sys.rows()[r];
    if (row.sense != Sense::AtMost || row.bound != 0) continue;
    for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) {
      if (sys.coefficient(r, j) && !sys.is_zeroed(j)) sys = sys.zero_column(j);
    }
  }
  return sys;
}

bool satisfies(const LiiSystem& sys, const Solution& s) {
  if (s.values.size() != sys.atom_count() + 1) return false;
  for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) {
    if (s.values[j] < 0) return false;
    if (sys.is_zeroed(j) && s.values[j] != 0) return false;
  }
  for (std::size_t r = 0; r < sys.rows().size(); ++r) {
    std::int64_t sum = 0;
    for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) sum += sys.coefficient(r, j) * s.values[j];
    const auto& row = sys.rows()[r];
    if (row.sense == Sense::AtMost ? sum > row.bound : sum < row.bound) return false;
  }
  return true;
}

namespace {

class Search {
 public:
  Search(const LiiSystem& sys, std::uint64_t node_limit) : sys_(sys), node_limit_(node_limit) {
    std::int64_t upper = 0;
    for (const auto& row : sys.rows()) {
      if (row.sense == Sense::AtLeast) upper += row.bound;
    }
    const auto n_rows = sys.rows().size();
    sum_.assign(n_rows, 0);
    cap_.assign(n_rows, 0);
    for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) {
      if (sys.is_zeroed(j)) continue;
      std::int64_t hi = upper;
      for (std::size_t r = 0; r < n_rows; ++r) {
        if (sys.coefficient(r, j) && sys.rows()[r].sense == Sense::AtMost) {
          hi = std::min(hi, sys.rows()[r].bound);
        }
      }
      if (hi <= 0) continue;
      Var v{j, hi, {}};
      for (std::size_t r = 0; r < n_rows; ++r) {
        if (sys.coefficient(r, j)) {
          v.rows.push_back(r);
          cap_[r] += hi;
        }
      }
      vars_.push_back(std::move(v));
    }
    values_.assign(sys.atom_count() + 1, 0);
  }

  bool run() {
    for (std::size_t r = 0; r < sum_.size(); ++r) {
      const auto& row = sys_.rows()[r];
      if (row.sense == Sense::AtLeast && cap_[r] < row.bound) return false;
    }
    return assign(0);
  }

  Solution solution() const { return Solution{values_}; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Var {
    std::uint32_t atom;
    std::int64_t hi;
    std::vector<std::size_t> rows;
  };

  bool assign(std::size_t t) {
    if (++nodes_ > node_limit_) {
      throw ResourceLimitError("LII search exceeded " + std::to_string(node_limit_) + " nodes");
    }
    if (t == vars_.size()) return true;
    const auto& var = vars_[t];
    std::int64_t lo = 0;
    std::int64_t hi = var.hi;
    for (auto r : var.rows) {
      const auto& row = sys_.rows()[r];
      if (row.sense == Sense::AtMost) {
        hi = std::min(hi, row.bound - sum_[r]);
      } else {
        lo = std::max(lo, row.bound - sum_[r] - (cap_[r] - var.hi));
      }
    }
    if (lo > hi) return false;
    for (auto r : var.rows) cap_[r] -= var.hi;
    for (std::int64_t v = lo; v <= hi; ++v) {
      for (auto r : var.rows) sum_[r] += v;
      values_[var.atom] = v;
      if (assign(t + 1)) return true;
      for (auto r : var.rows) sum_[r] -= v;
    }
    values_[var.atom] = 0;
    for (auto r : var.rows) cap_[r] += var.hi;
    return false;
  }

  const LiiSystem& sys_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Var> vars_;
  std::vector<std::int64_t> sum_;
  std::vector<std::int64_t> cap_;
  std::vector<std::int64_t> values_;
};

}  // namespace

std::optional<Solution> feasible(const LiiSystem& sys, std::uint64_t node_limit,
                                 SolverStats* stats) {
  Search search(sys, node_limit);
  const bool ok = search.run();
  if (stats) stats->nodes += search.nodes();
  if (!ok) return std::nullopt;
  auto s = search.solution();
  if (!satisfies(sys, s)) throw std::logic_error("LII solver returned a non-solution");
  return s;
}

}  // namespace alcqi
