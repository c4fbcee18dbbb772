#include "alcqi/problem_file.hpp"

#include <optional>
#include <random>

#include "alcqi/errors.hpp"
#include "alcqi/parser.hpp"

namespace alcqi {

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  if (a.query != b.query || a.tbox.size() != b.tbox.size()) return false;
  for (std::size_t k = 0; k < a.tbox.size(); ++k) {
    if (a.tbox[k].lhs != b.tbox[k].lhs || a.tbox[k].rhs != b.tbox[k].rhs) return false;
  }
  return true;
}

namespace {

struct Statement {
  std::string keyword;
  std::vector<Concept> terms;
  std::size_t line;
  std::size_t column;
};

std::vector<Statement> statements(std::string_view text) {
  std::vector<Statement> out;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto eol = text.find('\n');
    auto body = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);

    std::size_t pos = body.find_first_not_of(" \t\r");
    if (pos == std::string_view::npos) continue;
    const auto end = body.find_first_of(" \t\r(", pos);
    Statement st{std::string(body.substr(pos, end - pos)), {}, line, pos + 1};
    if (end != std::string_view::npos) st.terms = parse_concepts(body.substr(end), line, end + 1);

    std::size_t arity = 1;
    if (st.keyword == "gci") {
      arity = 2;
    } else if (st.keyword != "axiom" && st.keyword != "sat") {
      throw ParseError(line, st.column, "unknown statement '" + st.keyword + "'");
    }
    if (st.terms.size() != arity) {
      throw ParseError(line, st.column,
                       "'" + st.keyword + "' takes " + std::to_string(arity) +
                           (arity == 1 ? " concept" : " concepts") + ", found " +
                           std::to_string(st.terms.size()));
    }
    out.push_back(std::move(st));
  }
  return out;
}

Axiom axiom_of(const Statement& st) {
  if (st.keyword == "gci") return {st.terms[0], st.terms[1]};
  return {Concept::top(), st.terms[0]};
}

}  // namespace

ProblemFile parse_problem_file(std::string_view text) {
  ProblemFile out;
  std::optional<std::size_t> sat_line;
  for (const auto& st : statements(text)) {
    if (st.keyword != "sat") {
      out.tbox.push_back(axiom_of(st));
      continue;
    }
    if (sat_line) {
      throw ParseError(st.line, st.column,
                       "second 'sat' line, the first is on line " + std::to_string(*sat_line));
    }
    sat_line = st.line;
    out.query = st.terms[0];
  }
  if (!sat_line) throw ParseError(1, 1, "no 'sat' line");
  return out;
}

std::vector<Axiom> parse_tbox_file(std::string_view text) {
  std::vector<Axiom> out;
  for (const auto& st : statements(text)) {
    if (st.keyword == "sat") throw ParseError(st.line, st.column, "'sat' line in a TBox file");
    out.push_back(axiom_of(st));
  }
  return out;
}

std::string print_problem_file(const ProblemFile& p) {
  std::string out;
  for (const auto& ax : p.tbox) {
    if (ax.lhs.kind() == ConceptKind::Top) {
      out += "axiom " + to_string(ax.rhs) + "\n";
    } else {
      out += "gci " + to_string(ax.lhs) + " " + to_string(ax.rhs) + "\n";
    }
  }
  out += "sat " + to_string(p.query) + "\n";
  return out;
}

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const CorpusProfile& profile) : rng_(seed), profile_(profile) {}

  ProblemFile problem() {
    ProblemFile p;
    const auto n_axioms = pick(profile_.max_axioms + 1);
    for (std::uint64_t k = 0; k < n_axioms; ++k) {
      // Axioms stay shallower than the query so the oracle remains cheap.
      const int depth = std::max(0, profile_.max_depth - 1);
      if (pick(2) == 0) {
        p.tbox.push_back({Concept::top(), term(depth, 2)});
      } else {
        p.tbox.push_back({term(0, 1), term(depth, 2)});
      }
    }
    p.query = term(profile_.max_depth, 3);
    return p;
  }

 private:
  std::uint64_t pick(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

  Concept atom() {
    const auto name = std::string(1, static_cast<char>('A' + pick(profile_.atoms)));
    return pick(3) == 0 ? Concept::negation(Concept::atomic(name)) : Concept::atomic(name);
  }

  Role role() {
    Role r{std::string(1, static_cast<char>('R' + pick(profile_.roles))), false};
    return pick(3) == 0 ? r.inverse() : r;
  }

  // `depth` bounds the nesting of number restrictions, `width` the boolean
  // structure around them.
  Concept term(int depth, int width) {
    const auto choice = pick(10);
    if (width <= 0 || choice < 3) {
      if (depth > 0 && choice == 0) return restriction(depth);
      return pick(12) == 0 ? Concept::top() : atom();
    }
    if (choice < 5 && depth > 0) return restriction(depth);
    if (choice == 5) return Concept::negation(term(depth, width - 1));
    std::vector<Concept> ops;
    const auto n = 2 + pick(2);
    for (std::uint64_t k = 0; k < n; ++k) ops.push_back(term(depth, width - 1));
    return choice < 8 ? Concept::conjunction(std::move(ops)) : Concept::disjunction(std::move(ops));
  }

  Concept restriction(int depth) {
    const auto bound = static_cast<std::int64_t>(pick(static_cast<std::uint64_t>(profile_.max_bound) + 1));
    auto r = role();
    auto filler = term(depth - 1, 1);
    return pick(2) == 0 ? Concept::at_least(bound, std::move(r), std::move(filler))
                        : Concept::at_most(bound, std::move(r), std::move(filler));
  }

  std::mt19937_64 rng_;
  CorpusProfile profile_;
};

}  // namespace

std::vector<ProblemFile> generate_corpus(std::uint64_t seed, std::size_t count,
                                         const CorpusProfile& profile) {
  Generator gen(seed, profile);
  std::vector<ProblemFile> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(gen.problem());
  return out;
}

}  // namespace alcqi
