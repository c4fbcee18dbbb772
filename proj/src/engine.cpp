#include "alcqi/engine.hpp"

#include <algorithm>
#include <tuple>

#include "alcqi/errors.hpp"

namespace alcqi {

namespace {

std::string context_string(const NodeContext& c) {
  if (c.is_root()) return "cut=- edge=-";
  return "cut=" + to_string(c.cut) + " edge=" + to_string(*c.edge);
}

std::string_view scope_name(NogoodScope s) {
  switch (s) {
    case NogoodScope::Plain: return "plain";
    case NogoodScope::Axiom: return "axiom";
    case NogoodScope::Contextual: return "contextual";
  }
  return "";
}

ConceptSet modal_literals_on(const Branch& b, const Role& role) {
  ConceptSet out;
  for (const auto& lit : b.literals) {
    if (lit.is_modal() && lit.role() == role) out.push_back(lit);
  }
  return out;
}

}  // namespace

std::string to_string(const NogoodTriple& t) {
  return context_string(t.context) + " body=" + to_string(t.body) +
         " scope=" + std::string(scope_name(t.scope));
}

// --- NogoodStore -----------------------------------------------------------

RecordResult NogoodStore::record(const NogoodTriple& t) {
  if (hit(t.context, t.body, t.scope == NogoodScope::Plain)) return RecordResult::AlreadyKnown;
  if (all_.size() >= capacity_) {
    throw ResourceLimitError("nogood store capacity " + std::to_string(capacity_) + " exceeded");
  }
  all_.push_back(t);
  if (t.context.is_root()) {
    context_free_.push_back(all_.size() - 1);
  } else {
    contextual_[{*t.context.edge, t.context.cut}].push_back(all_.size() - 1);
  }
  return RecordResult::NewlyAdded;
}

bool NogoodStore::hit(const NodeContext& context, const ConceptSet& body, bool plain_only) const {
  for (auto i : context_free_) {
    const auto& t = all_[i];
    if (plain_only && t.scope != NogoodScope::Plain) continue;
    if (is_subset(t.body, body)) return true;
  }
  if (plain_only || context.is_root()) return false;
  auto it = contextual_.find({*context.edge, context.cut});
  if (it == contextual_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::size_t i) { return is_subset(all_[i].body, body); });
}

// --- WitnessStore ----------------------------------------------------------

bool operator<(const WitnessStore::Key& a, const WitnessStore::Key& b) {
  if (auto c = a.branch <=> b.branch; c != 0) return c < 0;
  if (auto c = a.tuned <=> b.tuned; c != 0) return c < 0;
  if (a.context.has_value() != b.context.has_value()) return !a.context.has_value();
  if (!a.context) return false;
  if (auto c = a.context->cut <=> b.context->cut; c != 0) return c < 0;
  return a.context->edge < b.context->edge;
}

WitnessStore::Key WitnessStore::key_of(const Branch& b, const Branch& tuned,
                                       const NodeContext& context) const {
  Key k{b, tuned, std::nullopt};
  if (strict_) k.context = context;
  return k;
}

std::optional<std::size_t> WitnessStore::find(const Branch& b, const Branch& tuned,
                                              const NodeContext& context) const {
  auto it = index_.find(key_of(b, tuned, context));
  if (it == index_.end()) return std::nullopt;
  return log_[it->second].owner;
}

void WitnessStore::add(const Branch& b, const Branch& tuned, const NodeContext& context,
                       std::size_t owner) {
  auto key = key_of(b, tuned, context);
  if (index_.contains(key)) return;
  index_.emplace(key, log_.size());
  keys_.push_back(std::move(key));
  log_.push_back({b, tuned, owner});
}

void WitnessStore::truncate(std::size_t size) {
  while (log_.size() > size) {
    index_.erase(keys_.back());
    keys_.pop_back();
    log_.pop_back();
  }
}

void WitnessStore::clear() { truncate(0); }

// --- Reasoner --------------------------------------------------------------

Reasoner::Reasoner(Problem problem, Limits limits, Observers observers)
    : problem_(std::move(problem)),
      limits_(limits),
      observers_(std::move(observers)),
      nogoods_(limits.nogood_capacity),
      witnesses_(limits.strict_blocking) {
  fixed_ = problem_.cut_concepts();
  set_insert(fixed_, problem_.axiom);
}

void Reasoner::emit(const std::string& line) const {
  if (observers_.trace) observers_.trace(line);
}

std::size_t Reasoner::add_node(std::optional<std::size_t> parent, ConceptSet core,
                               NodeContext context) {
  Node n;
  n.id = nodes_.size();
  n.parent = parent;
  n.label = core;
  for (const auto& c : fixed_) set_insert(n.label, c);
  n.core = std::move(core);
  n.context = std::move(context);
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

bool Reasoner::rejected(const NodeContext& ctx, const ConceptSet& b, const ConceptSet& tuned) const {
  // ⟨∅,ε,B⟩ and ⟨C,R,B⟩ both go through hit(ctx, B); the tuned branch only
  // answers to bodies that are unsatisfiable on their own.
  if (nogoods_.hit(ctx, b)) return true;
  return &b != &tuned && nogoods_.hit(ctx, tuned, /*plain_only=*/true);
}

Reasoner::Step Reasoner::learn(NogoodTriple t) {
  // ⊥-3: G and K_a hold everywhere, so they are dropped from the body. A
  // plain body that loses one is only unsatisfiable relative to them.
  const auto before = t.body.size();
  std::erase_if(t.body, [&](const Concept& c) { return set_contains(fixed_, c); });
  if (t.body.size() != before && t.scope == NogoodScope::Plain) t.scope = NogoodScope::Axiom;
  const auto text = to_string(t);
  if (nogoods_.record(t) == RecordResult::AlreadyKnown) return Step::Failed;
  ++stats_.nogoods;
  emit("NOGOOD " + text);
  return Step::Restart;
}

Reasoner::Step Reasoner::expand(std::size_t id) {
  ++stats_.nodes;
  if (++pass_nodes_ > limits_.node_budget) {
    throw ResourceLimitError("node budget of " + std::to_string(limits_.node_budget) +
                             " expansions per pass exceeded");
  }
  const NodeContext ctx = nodes_[id].context;
  if (nogoods_.hit(ctx, nodes_[id].core)) return Step::Failed;

  const bool tunes = !ctx.is_root() && !ctx.cut.empty();
  auto tune = [&](const ConceptSet& lits) {
    return tunes ? fine_tune(Branch{lits}, ctx.cut, *ctx.edge).literals : lits;
  };
  BranchEnumerator branches(nodes_[id].label, [&](const ConceptSet& partial) {
    if (!tunes) return rejected(ctx, partial, partial);
    const auto tuned = tune(partial);
    return rejected(ctx, partial, tuned);
  });

  const auto witness_mark = witnesses_.size();
  std::size_t ordinal = 0;
  while (auto b = branches.next()) {
    Branch tuned{tune(b->literals)};
    if (rejected(ctx, b->literals, tunes ? tuned.literals : b->literals)) continue;
    emit("PB node=" + std::to_string(id) + " branch=" + std::to_string(ordinal++));
    {
      auto& node = nodes_[id];
      node.branch = *b;
      node.tuned = tuned;
      node.systems.clear();
      node.solutions.clear();
      node.children.clear();
    }

    // ⊥-0, ⊥-1 on the branch itself, then ⊥-2 (and clashes created by
    // tuning) on the fine-tuned one.
    if (auto clash = primitive_clash(*b)) {
      if (learn({NodeContext{}, clash->culprits, NogoodScope::Plain}) == Step::Restart) {
        return Step::Restart;
      }
      continue;
    }
    if (auto clash = primitive_clash(tuned)) {
      if (learn({NodeContext{}, clash->culprits, NogoodScope::Plain}) == Step::Restart) {
        return Step::Restart;
      }
      continue;
    }

    if (auto by = witnesses_.find(*b, tuned, ctx)) {
      nodes_[id].blocked_by = *by;
      emit("BLOCKED node=" + std::to_string(id) + " by=" + std::to_string(*by));
      return Step::Completed;
    }
    witnesses_.add(*b, tuned, ctx, id);

    bool ok = true;
    for (const auto& role : modal_roles(tuned)) {
      const auto step = apply_lii_rule(id, role);
      if (step == Step::Restart) return Step::Restart;
      if (step == Step::Failed) {
        ok = false;
        break;
      }
    }
    if (ok) return Step::Completed;
    // Anything registered since this branch was chosen may rest on it.
    witnesses_.truncate(witness_mark);
  }

  // All branches are covered by nogoods: lift to the label (⊥-5 with ⊥-4),
  // stripped of G and K_a (⊥-3).
  const auto scope = ctx.is_root() ? NogoodScope::Axiom : NogoodScope::Contextual;
  return learn({ctx, nodes_[id].core, scope});
}

Reasoner::Step Reasoner::apply_lii_rule(std::size_t id, const Role& role) {
  const std::string where = "node " + std::to_string(id) + " role " + to_string(role);
  auto sys = build_lii(nodes_[id].tuned, role, limits_.lambda_max, where);
  stats_.max_lambda = std::max<std::uint64_t>(stats_.max_lambda, sys.lambda());
  sys = zero_forbidden_atoms(zero_clashed_atoms(std::move(sys)));

  bool child_zeroed = false;
  std::map<std::uint32_t, std::size_t> done;
  while (true) {
    ++stats_.lii_solves;
    if (observers_.lii) observers_.lii(id, sys);
    auto solution = feasible(sys, limits_.solver_node_limit);
    emit("LII node=" + std::to_string(id) + " role=" + to_string(role) +
         " atoms=" + std::to_string(sys.atom_count()) +
         " verdict=" + (solution ? "feasible" : "infeasible"));
    if (!solution) {
      // ⊥-6. Zeroed columns that came from failed successors only hold in
      // this node's context, so the whole branch is recorded against it.
      const auto& node = nodes_[id];
      if (!child_zeroed) {
        return learn({NodeContext{}, modal_literals_on(node.tuned, role), NogoodScope::Plain});
      }
      const auto scope = node.context.is_root() ? NogoodScope::Axiom : NogoodScope::Contextual;
      return learn({node.context, node.branch.literals, scope});
    }

    bool resolve = false;
    for (std::uint32_t atom = 1; atom <= sys.atom_count(); ++atom) {
      if (solution->value(atom) == 0 || done.contains(atom)) continue;
      auto conjuncts = make_set(AtomSet{atom}.conjuncts(sys.fillers()));
      NodeContext child_ctx{cut_set_for_child(nodes_[id].branch, role, problem_.cuts), role};
      const auto child = add_node(id, std::move(conjuncts), std::move(child_ctx));
      const auto step = expand(child);
      if (step == Step::Restart) return Step::Restart;
      if (step == Step::Failed) {
        sys = sys.zero_column(atom);
        child_zeroed = true;
        resolve = true;
        break;
      }
      done.emplace(atom, child);
    }
    if (resolve) continue;

    auto& node = nodes_[id];
    for (const auto& [atom, child] : done) {
      if (solution->value(atom) > 0) node.children.push_back({role, atom, child});
    }
    node.systems.insert_or_assign(role, sys);
    node.solutions.insert_or_assign(role, *solution);
    return Step::Completed;
  }
}

Verdict Reasoner::decide() {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](Outcome o) {
    stats_.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count());
    return Verdict{o, stats_};
  };

  while (true) {
    nodes_.clear();
    witnesses_.clear();
    pass_nodes_ = 0;
    const auto root = add_node(std::nullopt, ConceptSet{problem_.goal}, NodeContext{});
    switch (expand(root)) {
      case Step::Completed: return finish(Outcome::Satisfiable);
      case Step::Failed: return finish(Outcome::Unsatisfiable);
      case Step::Restart:
        ++stats_.restarts;
        stats_.nogoods_at_restart.push_back(nogoods_.size());
        emit("RESTART " + std::to_string(stats_.restarts));
        break;
    }
  }
}

Verdict decide(const Problem& problem, const Limits& limits, Observers observers) {
  Reasoner r(problem, limits, std::move(observers));
  return r.decide();
}

}  // namespace alcqi
