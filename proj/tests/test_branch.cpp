#include <doctest.h>

#include "support/printing.hpp"

#include "alcqi/branch.hpp"
#include "alcqi/parser.hpp"
#include "alcqi/problem.hpp"
#include "support/oracles.hpp"

using namespace alcqi;

namespace {

const Role R{"R", false};
Concept A = Concept::atomic("A");
Concept B = Concept::atomic("B");
Concept C = Concept::atomic("C");
Concept notA = Concept::negated_atomic("A");

std::vector<ConceptSet> all_branches(const ConceptSet& label, BranchEnumerator::Prune prune = {}) {
  BranchEnumerator e(label, std::move(prune));
  std::vector<ConceptSet> out;
  while (auto b = e.next()) out.push_back(b->literals);
  return out;
}

ConceptSet nnf_set(std::initializer_list<const char*> texts) {
  ConceptSet out;
  for (const auto* t : texts) set_insert(out, to_nnf(parse_concept(t)));
  return out;
}

}  // namespace

TEST_SUITE("branch") {
  TEST_CASE("enumeration order") {
    CHECK(all_branches({Concept::disjunction({A, B})}) ==
          std::vector<ConceptSet>{make_set({A}), make_set({B})});

    const auto ex = Concept::at_least(1, R, C);
    CHECK(all_branches({A, Concept::disjunction({B, ex})}) ==
          std::vector<ConceptSet>{make_set({A, B}), make_set({A, ex})});

    // Clashing disjuncts are enumerated; filtering them is the engine's job.
    CHECK(all_branches({A, Concept::disjunction({notA, B})}) ==
          std::vector<ConceptSet>{make_set({A, notA}), make_set({A, B})});
  }

  TEST_CASE("duplicate disjuncts are produced once") {
    // (A ⊔ B) ⊓ (B ⊔ A ⊔ C): {A,B} comes up twice.
    const auto label =
        make_set({Concept::disjunction({A, B}), Concept::disjunction({B, A, C})});
    const auto got = all_branches(label);
    CHECK(got.size() == 5);
    CHECK(std::set<ConceptSet>(got.begin(), got.end()) ==
          std::set<ConceptSet>{make_set({A}), make_set({A, B}), make_set({A, C}), make_set({B}),
                               make_set({B, C})});
  }

  TEST_CASE("pruning discards every completion") {
    const auto label = make_set({Concept::disjunction({A, B}), Concept::disjunction({C, notA})});
    const auto got = all_branches(label, [&](const ConceptSet& p) { return set_contains(p, A); });
    CHECK(got.size() == 2);
    CHECK(std::set<ConceptSet>(got.begin(), got.end()) ==
          std::set<ConceptSet>{make_set({B, C}), make_set({B, notA})});
  }

  TEST_CASE("property: enumeration equals the materialized and truth-table DNF") {
    testing::ConceptGen gen(21);
    int checked = 0;
    for (int k = 0; k < 600; ++k) {
      ConceptSet label;
      for (int n = 0; n < 2; ++n) set_insert(label, to_nnf(gen.raw(3)));
      const auto expected = testing::materialized_dnf(label);
      if (expected.size() > 64) continue;
      ++checked;
      const auto got = all_branches(label);
      CHECK(std::set<ConceptSet>(got.begin(), got.end()) == expected);
      CHECK(std::set<ConceptSet>(got.begin(), got.end()).size() == got.size());

      ConceptSet props;
      for (const auto& c : label) testing::skeleton_atoms(c, props);
      if (props.size() > 10) continue;
      const auto conj = Concept::conjunction(label);
      for (std::uint32_t mask = 0; mask < (1U << props.size()); ++mask) {
        ConceptSet truth;
        for (std::size_t i = 0; i < props.size(); ++i) {
          if ((mask >> i) & 1U) truth.push_back(props[i]);
        }
        const bool covered = std::any_of(got.begin(), got.end(),
                                         [&](const ConceptSet& b) { return is_subset(b, truth); });
        CHECK(covered == testing::skeleton_eval(conj, truth));
      }
    }
    CHECK(checked > 300);
  }

  TEST_CASE("cut_set_for_child") {
    const auto cuts = cut_formulae(Concept::at_least(2, R, C), Concept::top());
    const auto edge = R.inverse();
    const auto with_c = cut_set_for_child(Branch{make_set({C})}, edge, cuts);
    REQUIRE(with_c.entries.size() == 1);
    CHECK(with_c.entries[0].role == R);
    CHECK(with_c.entries[0].filler == C);
    CHECK(with_c.find(R, C) == CutChoice::FillerHolds);

    const auto without_c =
        cut_set_for_child(Branch{make_set({Concept::negated_atomic("C")})}, edge, cuts);
    CHECK(without_c.find(R, C) == CutChoice::FillerNegatedHolds);

    CHECK(cut_set_for_child(Branch{make_set({C})}, R, cuts).empty());

    // Guard chosen and C undetermined: no entry.
    const auto guard = Branch{make_set({cuts[0].guard()})};
    CHECK(cut_set_for_child(guard, edge, cuts).empty());
  }

  TEST_CASE("property: clash-free parents decide every unguarded cut") {
    testing::ConceptGen gen(22);
    for (int k = 0; k < 200; ++k) {
      const auto e = to_nnf(gen.raw(3));
      const auto problem = make_problem(e, {});
      ConceptSet label{e};
      for (const auto& c : problem.cut_concepts()) set_insert(label, c);
      BranchEnumerator branches(label);
      for (int n = 0; n < 5; ++n) {
        const auto b = branches.next();
        if (!b) break;
        // Clashed branches never spawn successors.
        if (primitive_clash(*b)) continue;
        for (const auto& edge : {Role{"R", false}, Role{"R", true}, Role{"S", false}}) {
          const auto cut = cut_set_for_child(*b, edge, problem.cuts);
          for (const auto& kf : problem.cuts) {
            if (kf.guard_role() != edge) continue;
            const bool guard_chosen = set_contains(b->literals, kf.guard());
            const auto found = cut.find(kf.role, kf.filler);
            INFO("branch " << to_string(*b) << " cut " << to_string(kf.formula));
            if (!guard_chosen) CHECK(found.has_value());
            if (found) {
              const auto& lit = *found == CutChoice::FillerHolds ? kf.filler : kf.negated;
              CHECK(set_contains(cut.literals(), lit));
            }
          }
        }
      }
    }
  }

  TEST_CASE("fine_tune") {
    CutSet holds{{{R, C, CutChoice::FillerHolds}}};
    CutSet negated{{{R, C, CutChoice::FillerNegatedHolds}}};
    const auto edge = R.inverse();
    const Branch b{make_set({Concept::at_least(2, R, C)})};
    CHECK(fine_tune(b, holds, edge).literals == make_set({Concept::at_least(1, R, C)}));
    CHECK(fine_tune(b, negated, edge) == b);
    CHECK(fine_tune(Branch{make_set({Concept::at_most(0, R, C)})}, holds, edge).literals ==
          make_set({Concept::at_most(-1, R, C)}));
    CHECK(fine_tune(b, CutSet{}, edge) == b);
    // Constraints on other roles are untouched.
    const Branch other{make_set({Concept::at_least(2, R.inverse(), C)})};
    CHECK(fine_tune(other, holds, edge) == other);
    CHECK(fine_tune(Branch{make_set({Concept::at_least(0, R, C)})}, holds, edge).literals ==
          make_set({Concept::at_least(0, R, C)}));
  }

  TEST_CASE("property: fine_tune lowers bounds on inverse(edge) by 0 or 1") {
    testing::ConceptGen gen(23);
    for (int k = 0; k < 500; ++k) {
      ConceptSet lits;
      CutSet cut;
      for (int n = 0; n < 4; ++n) {
        const auto role = gen.role();
        const auto filler = gen.pick(2) == 0 ? gen.atom() : Concept::top();
        const auto bound = static_cast<std::int64_t>(gen.pick(4));
        set_insert(lits, gen.pick(2) == 0 ? Concept::at_most(bound, role, filler)
                                          : Concept::at_least(bound, role, filler));
        if (gen.pick(2) == 0 && !cut.find(role, filler)) {
          cut.entries.push_back({role, filler,
                                 gen.pick(2) == 0 ? CutChoice::FillerHolds
                                                  : CutChoice::FillerNegatedHolds});
        }
      }
      std::sort(cut.entries.begin(), cut.entries.end());
      const auto edge = gen.role();
      const auto tuned = fine_tune(Branch{lits}, cut, edge);
      CHECK(tuned.literals.size() <= lits.size());
      for (const auto& t : tuned.literals) {
        bool matched = false;
        for (const auto& l : lits) {
          if (l.kind() != t.kind() || l.role() != t.role() || l.filler() != t.filler()) continue;
          const auto diff = l.bound() - t.bound();
          if (diff == 0) matched = true;
          if (diff == 1 && l.role() == edge.inverse()) matched = true;
        }
        CHECK(matched);
      }
    }
  }

  TEST_CASE("primitive_clash") {
    const auto ab = primitive_clash(make_set({A, notA}));
    REQUIRE(ab);
    CHECK(ab->kind == ClashKind::Complementary);
    CHECK(ab->culprits == make_set({A, notA}));

    const auto neg = primitive_clash(make_set({Concept::at_most(-1, R, C)}));
    REQUIRE(neg);
    CHECK(neg->kind == ClashKind::NegativeBound);

    const auto bot = primitive_clash(make_set({A, Concept::bottom()}));
    REQUIRE(bot);
    CHECK(bot->kind == ClashKind::Bottom);
    CHECK(bot->culprits == make_set({Concept::bottom()}));

    CHECK_FALSE(primitive_clash(make_set({A, B, Concept::at_least(2, R, C)})));
    CHECK_FALSE(primitive_clash(make_set({Concept::top(), A})));

    CHECK_FALSE(primitive_clash(nnf_set({"(atleast 2 R C)", "(atmost 2 R C)"})));
    // ∃≤1 R.C is the NNF complement of ∃≥2 R.C.
    const auto compl_modal = primitive_clash(nnf_set({"(atleast 2 R C)", "(atmost 1 R C)"}));
    REQUIRE(compl_modal);
    CHECK(compl_modal->kind == ClashKind::Complementary);
  }
}
