#include <doctest.h>

#include "support/printing.hpp"

#include <chrono>

#include "alcqi/errors.hpp"
#include "alcqi/lii.hpp"
#include "alcqi/parser.hpp"
#include "support/oracles.hpp"

using namespace alcqi;

namespace {

const Role R{"R", false};
const Role S{"S", false};

Branch branch_of(std::initializer_list<const char*> texts) {
  ConceptSet out;
  for (const auto* t : texts) set_insert(out, to_nnf(parse_concept(t)));
  return Branch{out};
}

std::set<ConceptSet> atom_concepts(const std::vector<Concept>& fillers) {
  std::set<ConceptSet> out;
  for (const auto& a : atomic_decomposition(fillers)) out.insert(make_set(a.conjuncts(fillers)));
  return out;
}

LiiSystem single_var(std::vector<LiiRow> rows) {
  return LiiSystem(R, {Concept::atomic("C")}, std::move(rows));
}

}  // namespace

TEST_SUITE("lii") {
  TEST_CASE("collect_fillers") {
    const auto b = branch_of({"(atmost 3 R C1)", "(atleast 2 R C2)", "(atleast 4 R C3)"});
    const auto fillers = collect_fillers(b, R);
    CHECK(make_set(fillers) == make_set({Concept::atomic("C1"), Concept::atomic("C2"),
                                         Concept::atomic("C3")}));
    CHECK(collect_fillers(branch_of({"(atleast 1 R C)", "(atmost 2 R C)"}), R) ==
          std::vector<Concept>{Concept::atomic("C")});
    CHECK(collect_fillers(branch_of({"(atleast 1 S A)"}), R).empty());
  }

  TEST_CASE("atomic_decomposition") {
    const auto a = Concept::atomic("A");
    const auto b = Concept::atomic("B");
    const auto na = Concept::negated_atomic("A");
    const auto nb = Concept::negated_atomic("B");
    CHECK(atom_concepts({Concept::atomic("C")}) == std::set<ConceptSet>{make_set({Concept::atomic("C")})});
    CHECK(atom_concepts({a, b}) ==
          std::set<ConceptSet>{make_set({a, b}), make_set({a, nb}), make_set({na, b})});
    CHECK_THROWS_AS(atomic_decomposition(std::vector<Concept>(11, a), 10), ResourceLimitError);
  }

  TEST_CASE("property: 2^lambda - 1 atoms, all distinct, never all-negative") {
    for (std::size_t lambda = 1; lambda <= 6; ++lambda) {
      std::vector<Concept> fillers;
      for (std::size_t k = 0; k < lambda; ++k) fillers.push_back(Concept::atomic("F" + std::to_string(k)));
      const auto atoms = atomic_decomposition(fillers);
      CHECK(atoms.size() == (std::size_t{1} << lambda) - 1);
      const auto concepts = atom_concepts(fillers);
      CHECK(concepts.size() == atoms.size());
      ConceptSet all_negative;
      for (const auto& f : fillers) set_insert(all_negative, negate(f));
      CHECK_FALSE(concepts.contains(all_negative));
    }
  }

  TEST_CASE("build_lii") {
    const auto one = build_lii(branch_of({"(atleast 2 R C)"}), R);
    CHECK(one.atom_count() == 1);
    REQUIRE(one.rows().size() == 1);
    CHECK(one.rows()[0].sense == Sense::AtLeast);
    CHECK(one.rows()[0].bound == 2);
    CHECK(one.coefficient(0, 1) == 1);

    // Fillers [A, B]: atom 1 = A ⊓ ¬B, 2 = ¬A ⊓ B, 3 = A ⊓ B.
    const auto two = build_lii(branch_of({"(atleast 2 R A)", "(atmost 1 R B)"}), R);
    REQUIRE(two.fillers() == std::vector<Concept>{Concept::atomic("A"), Concept::atomic("B")});
    CHECK(two.atom_count() == 3);
    REQUIRE(two.rows().size() == 2);
    for (std::size_t r = 0; r < 2; ++r) {
      const auto& row = two.rows()[r];
      const bool on_a = two.fillers()[row.filler_index] == Concept::atomic("A");
      CHECK(row.sense == (on_a ? Sense::AtLeast : Sense::AtMost));
      CHECK(two.coefficient(r, 3) == 1);
      CHECK(two.coefficient(r, 1) == (on_a ? 1 : 0));
      CHECK(two.coefficient(r, 2) == (on_a ? 0 : 1));
    }
    CHECK(feasible(two).has_value());
    CHECK_FALSE(feasible(two.zero_column(1)).has_value());
    CHECK(testing::brute_force_feasible(two));
    CHECK_FALSE(testing::brute_force_feasible(two.zero_column(1)));

    CHECK_THROWS_AS(build_lii(Branch{make_set({Concept::at_most(-1, R, Concept::top())})}, R),
                    std::invalid_argument);
  }

  TEST_CASE("guard row forbids successors") {
    auto sys = build_lii(branch_of({"(atmost 0 R top)", "(atleast 1 R D)"}), R);
    CHECK(sys.fillers().size() == 2);
    sys = zero_forbidden_atoms(zero_clashed_atoms(std::move(sys)));
    CHECK(sys.zeroed().size() == 3);
    CHECK_FALSE(feasible(sys).has_value());
    CHECK_FALSE(testing::brute_force_feasible(sys));
  }

  TEST_CASE("clashed atoms are zeroed") {
    // Fillers [A, ¬A]: the atom A ⊓ ¬A clashes.
    auto sys = build_lii(branch_of({"(atleast 2 R A)", "(atleast 2 R (not A))", "(atmost 3 R top)"}), R);
    sys = zero_clashed_atoms(std::move(sys));
    CHECK_FALSE(feasible(sys).has_value());
    CHECK_FALSE(testing::brute_force_feasible(sys));

    auto both = build_lii(branch_of({"(atleast 2 R A)", "(atleast 2 R B)", "(atmost 3 R top)"}), R);
    both = zero_clashed_atoms(std::move(both));
    const auto s = feasible(both);
    REQUIRE(s);
    CHECK(satisfies(both, *s));
    CHECK(testing::brute_force_feasible(both));
  }

  TEST_CASE("feasible") {
    CHECK_FALSE(feasible(single_var({{0, Sense::AtLeast, 2}, {0, Sense::AtMost, 1}})).has_value());
    const auto s = feasible(single_var({{0, Sense::AtLeast, 2}}));
    REQUIRE(s);
    CHECK(s->value(1) == 2);
    CHECK_FALSE(feasible(single_var({{0, Sense::AtLeast, 2}}).zero_column(1)).has_value());
    // No ≥-row covers the column: zeroing it changes nothing.
    const auto slack = single_var({{0, Sense::AtMost, 2}});
    CHECK(feasible(slack).has_value());
    CHECK(feasible(slack.zero_column(1)).has_value());
    CHECK_THROWS_AS(single_var({}).zero_column(2), std::out_of_range);
  }

  TEST_CASE("solutions are deterministic and smallest-first") {
    auto sys = build_lii(branch_of({"(atleast 1 R A)", "(atleast 1 R B)"}), R);
    const auto s = feasible(sys);
    REQUIRE(s);
    CHECK(*s == *feasible(sys));
    CHECK(s->value(1) + s->value(3) >= 1);
    CHECK(s->value(2) + s->value(3) >= 1);
    // Ascending atoms, smallest value first: v1 = 0, v2 = 0, v3 = 1.
    CHECK(s->values == std::vector<std::int64_t>{0, 0, 0, 1});
  }

  TEST_CASE("property: solver agrees with exhaustive enumeration") {
    testing::ConceptGen gen(31);
    for (int k = 0; k < 500; ++k) {
      const auto sys = gen.lii_system();
      const auto s = feasible(sys);
      INFO(sys.dump());
      CHECK(s.has_value() == testing::brute_force_feasible(sys));
      if (s) CHECK(satisfies(sys, *s));
    }
  }

  TEST_CASE("property: zeroing a column never restores feasibility") {
    testing::ConceptGen gen(32);
    for (int k = 0; k < 500; ++k) {
      const auto sys = gen.lii_system();
      if (feasible(sys)) continue;
      for (std::uint32_t j = 1; j <= sys.atom_count(); ++j) {
        CHECK_FALSE(feasible(sys.zero_column(j)).has_value());
      }
    }
  }

  TEST_CASE("property: search effort is independent of the bound magnitude") {
    std::uint64_t first = 0;
    for (std::int64_t n : {2, 10, 1000, 1'000'000}) {
      SolverStats stats;
      const auto start = std::chrono::steady_clock::now();
      CHECK_FALSE(feasible(single_var({{0, Sense::AtLeast, n}, {0, Sense::AtMost, n - 1}}),
                           kDefaultSolverNodeLimit, &stats)
                      .has_value());
      CHECK(std::chrono::steady_clock::now() - start < std::chrono::milliseconds(100));
      if (first == 0) first = stats.nodes;
      CHECK(stats.nodes == first);
    }
  }

  TEST_CASE("dump renders one matrix row per constraint") {
    const auto sys = build_lii(branch_of({"(atleast 2 R A)", "(atmost 1 R B)"}), R);
    const auto text = sys.zero_column(2).dump();
    CHECK(text.find("atoms=3") != std::string::npos);
    CHECK(text.find("zeroed: v2") != std::string::npos);
    CHECK(text.find("] >= 2") != std::string::npos);
    CHECK(text.find("] <= 1") != std::string::npos);
  }
}
