#pragma once

// The tableau procedure: depth-first tree construction with the PB-rule and
// the LII-rule, blocking through a witness store, a monotone nogood store
// fed by the inconsistency propagation rules, and restarts.
//
// Every newly learned nogood aborts the current tree; witnesses are dropped
// and construction starts over from the root with the nogood store kept. A
// pass that finishes without learning anything proves the goal satisfiable;
// a root label covered by the store proves it unsatisfiable.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcqi/branch.hpp"
#include "alcqi/lii.hpp"
#include "alcqi/problem.hpp"

namespace alcqi {

struct Limits {
  std::size_t lambda_max = kDefaultLambdaMax;
  std::uint64_t node_budget = 1'000'000;  // node expansions per pass
  std::uint64_t solver_node_limit = kDefaultSolverNodeLimit;
  std::size_t nogood_capacity = 1'000'000;
  // Witness keys additionally include the cut-set and incoming role.
  bool strict_blocking = false;
};

// The cut-set and incoming edge of a node; both empty at the root.
struct NodeContext {
  CutSet cut;
  std::optional<Role> edge;

  bool is_root() const { return !edge.has_value(); }
  friend bool operator==(const NodeContext&, const NodeContext&) = default;
};

// How far a stored body is known to be unsatisfiable.
enum class NogoodScope : std::uint8_t {
  Plain,       // as a set of concepts, on its own
  Axiom,       // w.r.t. the internalized axiom
  Contextual,  // for an element with a predecessor over `edge` matching `cut`
};

struct NogoodTriple {
  NodeContext context;  // root context for context-free triples
  ConceptSet body;
  NogoodScope scope = NogoodScope::Plain;
};

std::string to_string(const NogoodTriple& t);

enum class RecordResult : std::uint8_t { NewlyAdded, AlreadyKnown };

class NogoodStore {
 public:
  explicit NogoodStore(std::size_t capacity = 1'000'000) : capacity_(capacity) {}

  // Throws ResourceLimitError when the store is full.
  RecordResult record(const NogoodTriple& t);

  // Some stored ⟨c, e, α⟩ with a matching context and α ⊆ body. Context-free
  // triples match every context; `plain_only` restricts to Plain triples.
  bool hit(const NodeContext& context, const ConceptSet& body, bool plain_only = false) const;

  std::size_t size() const { return all_.size(); }
  const std::vector<NogoodTriple>& triples() const { return all_; }

 private:
  std::size_t capacity_;
  std::vector<NogoodTriple> all_;
  std::vector<std::size_t> context_free_;
  std::map<std::pair<Role, CutSet>, std::vector<std::size_t>> contextual_;
};

struct Witness {
  Branch branch;
  Branch tuned;
  std::size_t owner;
};

class WitnessStore {
 public:
  explicit WitnessStore(bool strict = false) : strict_(strict) {}

  std::optional<std::size_t> find(const Branch& b, const Branch& tuned,
                                  const NodeContext& context) const;
  void add(const Branch& b, const Branch& tuned, const NodeContext& context, std::size_t owner);
  std::size_t size() const { return log_.size(); }
  // Drops every witness registered after the first `size` ones.
  void truncate(std::size_t size);
  void clear();
  const std::vector<Witness>& witnesses() const { return log_; }

  struct Key {
    Branch branch;
    Branch tuned;
    std::optional<NodeContext> context;  // strict blocking only

    friend bool operator<(const Key& a, const Key& b);
  };

 private:

  Key key_of(const Branch& b, const Branch& tuned, const NodeContext& context) const;

  bool strict_;
  std::vector<Witness> log_;
  std::vector<Key> keys_;
  std::map<Key, std::size_t> index_;
};

struct Child {
  Role role;
  std::uint32_t atom;
  std::size_t node;
};

struct Node {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  ConceptSet core;   // label without the axiom and cut formulae
  ConceptSet label;  // core ∪ {G} ∪ K_a
  NodeContext context;
  Branch branch;
  Branch tuned;
  std::map<Role, LiiSystem> systems;
  std::map<Role, Solution> solutions;
  std::vector<Child> children;
  std::optional<std::size_t> blocked_by;
};

struct Stats {
  std::uint64_t restarts = 0;
  std::uint64_t nodes = 0;
  std::uint64_t nogoods = 0;
  std::uint64_t lii_solves = 0;
  std::uint64_t max_lambda = 0;
  std::uint64_t wall_ms = 0;
  // Nogood store size at each restart, in order.
  std::vector<std::uint64_t> nogoods_at_restart;
};

enum class Outcome : std::uint8_t { Satisfiable, Unsatisfiable };

struct Verdict {
  Outcome outcome;
  Stats stats;

  bool satisfiable() const { return outcome == Outcome::Satisfiable; }
};

struct Observers {
  // One line per rule application.
  std::function<void(const std::string&)> trace;
  // Every LII system right before it is solved.
  std::function<void(std::size_t node, const LiiSystem&)> lii;
};

class Reasoner {
 public:
  explicit Reasoner(Problem problem, Limits limits = {}, Observers observers = {});

  // Throws ResourceLimitError when a limit is exceeded; no verdict then.
  Verdict decide();

  const Problem& problem() const { return problem_; }
  const NogoodStore& nogoods() const { return nogoods_; }
  // The tree of the last pass. For a satisfiable verdict this is the
  // completed tableau.
  const std::vector<Node>& tree() const { return nodes_; }
  const WitnessStore& witnesses() const { return witnesses_; }

 private:
  enum class Step : std::uint8_t { Completed, Failed, Restart };

  Step expand(std::size_t id);
  Step apply_lii_rule(std::size_t id, const Role& role);
  std::size_t add_node(std::optional<std::size_t> parent, ConceptSet core, NodeContext context);
  bool rejected(const NodeContext& ctx, const ConceptSet& b, const ConceptSet& tuned) const;
  // NewlyAdded becomes Restart; AlreadyKnown becomes Failed.
  Step learn(NogoodTriple t);
  void emit(const std::string& line) const;

  Problem problem_;
  Limits limits_;
  Observers observers_;
  ConceptSet fixed_;  // {G} ∪ K_a
  NogoodStore nogoods_;
  WitnessStore witnesses_;
  std::vector<Node> nodes_;
  std::uint64_t pass_nodes_ = 0;
  Stats stats_;
};

Verdict decide(const Problem& problem, const Limits& limits = {}, Observers observers = {});

}  // namespace alcqi
