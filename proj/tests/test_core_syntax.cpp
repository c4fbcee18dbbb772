#include <doctest.h>

#include "support/printing.hpp"

#include "alcqi/errors.hpp"
#include "alcqi/oracle.hpp"
#include "alcqi/parser.hpp"
#include "alcqi/problem.hpp"
#include "support/oracles.hpp"

using namespace alcqi;

namespace {

const Role R{"R", false};
const Role S{"S", false};
Concept A = Concept::atomic("A");
Concept B = Concept::atomic("B");
Concept C = Concept::atomic("C");

bool has_raw_negation(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Not: return true;
    case ConceptKind::And:
    case ConceptKind::Or:
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast:
      for (const auto& op : c.operands()) {
        if (has_raw_negation(op)) return true;
      }
      return false;
    default: return false;
  }
}

}  // namespace

TEST_SUITE("core-syntax") {
  TEST_CASE("roles") {
    CHECK(R.inverse().inverse() == R);
    CHECK(R.inverse() != R);
    CHECK(R != S);
    CHECK(Role{"R", true} == R.inverse());
  }

  TEST_CASE("parse_concept maps constructors directly") {
    CHECK(parse_concept("(atleast 2 R C)") == Concept::at_least(2, R, C));
    const auto c = parse_concept("(not (and A B))");
    REQUIRE(c.kind() == ConceptKind::Not);
    CHECK(c.operand().kind() == ConceptKind::And);
    CHECK(parse_concept("(atmost 0 (inv R) top)") ==
          Concept::at_most(0, R.inverse(), Concept::top()));
    CHECK(parse_concept("(atmost 0 (inv (inv R)) top)") == Concept::at_most(0, R, Concept::top()));
    CHECK(parse_concept("bottom") == Concept::bottom());
    CHECK(parse_concept("  A_1 ") == Concept::atomic("A_1"));
  }

  TEST_CASE("conjunctions are canonical sets") {
    CHECK(parse_concept("(and B A)") == parse_concept("(and A B)"));
    CHECK(parse_concept("(and A (and B A))") == parse_concept("(and A B)"));
    CHECK(parse_concept("(or A)") == A);
  }

  TEST_CASE("parse errors name line and column") {
    auto error_at = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
      try {
        parse_concept(text);
      } catch (const ParseError& e) {
        return {e.line(), e.column()};
      }
      return {0, 0};
    };
    CHECK(error_at("(atleast -1 R A)") == std::pair<std::size_t, std::size_t>{1, 10});
    CHECK(error_at("(and A\n  (foo B))").first == 2);
    CHECK(error_at("(and A").first == 1);
    CHECK(error_at("A B").second == 3);
    CHECK(error_at("and").first == 1);
    CHECK(error_at("(atleast 1 top A)").first == 1);
    CHECK_THROWS_WITH_AS(parse_concept("(atleast -1 R A)"), doctest::Contains("negative"),
                         ParseError);
  }

  TEST_CASE("to_nnf") {
    CHECK(to_nnf(Concept::negation(Concept::negation(A))) == A);
    CHECK(to_nnf(Concept::negation(Concept::at_least(3, R, C))) == Concept::at_most(2, R, C));
    CHECK(to_nnf(Concept::negation(Concept::at_most(3, R, C))) == Concept::at_least(4, R, C));
    CHECK(to_nnf(A) == A);
    CHECK(to_nnf(Concept::negation(Concept::at_least(0, R, C))) == Concept::bottom());
    CHECK(to_nnf(Concept::negation(A)) == Concept::negated_atomic("A"));
    CHECK(to_nnf(parse_concept("(atleast 1 R (not (or A B)))")) ==
          Concept::at_least(1, R,
                            Concept::conjunction({Concept::negated_atomic("A"),
                                                  Concept::negated_atomic("B")})));
  }

  TEST_CASE("negate") {
    CHECK(negate(Concept::conjunction({A, B})) ==
          Concept::disjunction({Concept::negated_atomic("A"), Concept::negated_atomic("B")}));
    CHECK(negate(Concept::at_most(3, R, C)) == Concept::at_least(4, R, C));
    CHECK(negate(Concept::top()) == Concept::bottom());
    CHECK(negate(Concept::bottom()) == Concept::top());
  }

  TEST_CASE("internalize") {
    CHECK(internalize({}) == Concept::top());
    const auto c = parse_concept("(atleast 1 R (not A))");
    CHECK(internalize({{Concept::top(), c}}) == to_nnf(c));
    const auto na = Concept::negated_atomic("A");
    const auto nb = Concept::negated_atomic("B");
    CHECK(internalize({{A, B}, {B, C}}) ==
          Concept::conjunction({Concept::disjunction({na, B}), Concept::disjunction({nb, C})}));
    CHECK(internalize({{A, Concept::top()}}) == Concept::top());
  }

  TEST_CASE("modal_subformulae") {
    const auto inner = Concept::at_most(0, S, A);
    const auto e = Concept::at_least(1, R, inner);
    const auto occ = modal_subformulae(e, Concept::top());
    REQUIRE(occ.size() == 2);
    CHECK(occ[0] == ModalOccurrence{R, inner, Sense::AtLeast, 1});
    CHECK(occ[1] == ModalOccurrence{S, A, Sense::AtMost, 0});
    CHECK(modal_subformulae(A, Concept::top()).empty());
    const auto twice = Concept::conjunction({Concept::at_least(2, R, C), Concept::at_most(1, R, C)});
    const auto occ2 = modal_subformulae(twice, Concept::top());
    REQUIRE(occ2.size() == 2);
    CHECK(occ2[0].role == occ2[1].role);
    CHECK(occ2[0].filler == occ2[1].filler);
  }

  TEST_CASE("cut formulae") {
    const auto cuts = cut_formulae(Concept::at_least(2, R, C), Concept::top());
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].formula == Concept::disjunction({Concept::at_most(0, R.inverse(), Concept::top()),
                                                   C, Concept::negated_atomic("C")}));
    CHECK(cut_formulae(A, Concept::top()).empty());

    const auto d = Concept::atomic("D");
    const auto inv = cut_formulae(Concept::at_most(1, S.inverse(), d), Concept::top());
    REQUIRE(inv.size() == 1);
    CHECK(inv[0].guard_role() == S);
    CHECK(inv[0].formula ==
          Concept::disjunction({Concept::at_most(0, S, Concept::top()), d, Concept::negated_atomic("D")}));

    const auto twice = Concept::conjunction({Concept::at_least(2, R, C), Concept::at_most(1, R, C)});
    CHECK(cut_formulae(twice, Concept::top()).size() == 1);
  }

  TEST_CASE("cut formulae: at most one per distinct (role, filler)") {
    testing::ConceptGen gen(11);
    for (int k = 0; k < 300; ++k) {
      const auto e = to_nnf(gen.raw(3));
      const auto g = to_nnf(gen.raw(2));
      std::set<std::pair<Role, Concept>> pairs;
      for (const auto& m : modal_subformulae(e, g)) pairs.insert({m.role, m.filler});
      const auto cuts = cut_formulae(e, g);
      CHECK(cuts.size() <= pairs.size());
      for (const auto& cut : cuts) {
        REQUIRE(cut.formula.kind() == ConceptKind::Or);
        CHECK(set_contains(cut.formula.operands(), cut.guard()));
        CHECK(pairs.contains({cut.role, cut.filler}));
      }
    }
  }

  TEST_CASE("property: nnf is idempotent and free of raw negation") {
    testing::ConceptGen gen(1);
    for (int k = 0; k < 2000; ++k) {
      const auto c = gen.raw(4);
      const auto n = to_nnf(c);
      CHECK(to_nnf(n) == n);
      CHECK_FALSE(has_raw_negation(n));
    }
  }

  TEST_CASE("property: negate is an involution on NNF") {
    testing::ConceptGen gen(2);
    for (int k = 0; k < 2000; ++k) {
      const auto n = to_nnf(gen.raw(4));
      CHECK(negate(negate(n)) == n);
    }
  }

  TEST_CASE("property: evaluation respects NNF and negation") {
    testing::ConceptGen gen(3);
    for (int k = 0; k < 500; ++k) {
      const auto c = gen.raw(3);
      const auto n = to_nnf(c);
      const auto neg = negate(c);
      for (int t = 0; t < 8; ++t) {
        const auto i = gen.interpretation();
        for (int x = 0; x < i.domain_size; ++x) {
          const bool v = eval(i, c, x);
          CHECK(eval(i, n, x) == v);
          CHECK(eval(i, neg, x) == !v);
        }
      }
    }
  }

  TEST_CASE("property: printing round-trips through the parser") {
    testing::ConceptGen gen(4);
    for (int k = 0; k < 1000; ++k) {
      const auto c = gen.raw(4);
      CHECK(parse_concept(to_string(c)) == c);
    }
  }
}
