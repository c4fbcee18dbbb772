#pragma once

// Atomic decomposition of the number restrictions on one role and the
// subset-sum inequality systems built over it.
//
// With λ distinct fillers C_0..C_{λ-1}, atom j (1 ≤ j < 2^λ) is the
// conjunction of C_k for every bit k set in j and C̃_k for every bit clear.
// The all-negative combination is excluded: such successors satisfy no
// filler and are never counted. Atom j is also the index of variable v_j.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alcqi/branch.hpp"
#include "alcqi/concept.hpp"
#include "alcqi/problem.hpp"

namespace alcqi {

struct AtomSet {
  std::uint32_t mask = 0;

  bool contains_positively(std::size_t filler_index) const {
    return ((mask >> filler_index) & 1U) != 0;
  }
  // C_k or C̃_k for every filler, in filler order.
  std::vector<Concept> conjuncts(const std::vector<Concept>& fillers) const;

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
};

// Distinct fillers of the modal literals on `role`, in branch order.
std::vector<Concept> collect_fillers(const Branch& b, const Role& role);

inline constexpr std::size_t kDefaultLambdaMax = 10;

// All 2^λ - 1 atoms in ascending mask order. Throws ResourceLimitError when
// λ exceeds lambda_max; `where` names the node and role in the message.
std::vector<AtomSet> atomic_decomposition(const std::vector<Concept>& fillers,
                                          std::size_t lambda_max = kDefaultLambdaMax,
                                          const std::string& where = {});

struct LiiRow {
  std::size_t filler_index;  // w_{k,j} = bit filler_index of j
  Sense sense;
  std::int64_t bound;
};

class LiiSystem {
 public:
  LiiSystem() = default;
  LiiSystem(Role role, std::vector<Concept> fillers, std::vector<LiiRow> rows);

  const Role& role() const { return role_; }
  const std::vector<Concept>& fillers() const { return fillers_; }
  const std::vector<LiiRow>& rows() const { return rows_; }
  std::size_t lambda() const { return fillers_.size(); }
  // Variables are indexed 1..atom_count().
  std::size_t atom_count() const { return (std::size_t{1} << fillers_.size()) - 1; }

  int coefficient(std::size_t row, std::uint32_t atom) const {
    return ((atom >> rows_[row].filler_index) & 1U) != 0 ? 1 : 0;
  }

  bool is_zeroed(std::uint32_t atom) const { return zeroed_[atom]; }
  std::vector<std::uint32_t> zeroed() const;

  // v_atom is forced to 0.
  LiiSystem zero_column(std::uint32_t atom) const;

  // Textual matrix dump: one line per row, coefficients per atom.
  std::string dump() const;

 private:
  Role role_;
  std::vector<Concept> fillers_;
  std::vector<LiiRow> rows_;
  std::vector<bool> zeroed_;  // indexed by atom, slot 0 unused
};

// One row per modal literal on `role` in `b`, in branch order. Bounds must be
// non-negative.
LiiSystem build_lii(const Branch& b, const Role& role, std::size_t lambda_max = kDefaultLambdaMax,
                    const std::string& where = {});

// Zeroes every atom whose conjuncts contain a primitive clash (e.g. a filler
// together with its complement, or C̃ for C = ⊤).
LiiSystem zero_clashed_atoms(LiiSystem sys);

// Zeroes every atom covered by a row ∃≤0.
LiiSystem zero_forbidden_atoms(LiiSystem sys);

struct Solution {
  std::vector<std::int64_t> values;  // indexed by atom, slot 0 unused

  std::int64_t value(std::uint32_t atom) const { return values[atom]; }
  friend bool operator==(const Solution&, const Solution&) = default;
};

// True iff `s` satisfies every row and leaves zeroed atoms at 0.
bool satisfies(const LiiSystem& sys, const Solution& s);

inline constexpr std::uint64_t kDefaultSolverNodeLimit = 50'000'000;

struct SolverStats {
  std::uint64_t nodes = 0;
};

// Non-negative integer feasibility by depth-first branch and bound. Variables
// are assigned in ascending atom order, smallest value first, each within
// [0, Σ ∃≥-bounds]; interval propagation over the rows prunes the search.
// Throws ResourceLimitError when the search visits more than `node_limit`
// nodes.
std::optional<Solution> feasible(const LiiSystem& sys,
                                 std::uint64_t node_limit = kDefaultSolverNodeLimit,
                                 SolverStats* stats = nullptr);

}  // namespace alcqi
