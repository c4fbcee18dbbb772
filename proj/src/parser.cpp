#include "alcqi/parser.hpp"

#include <cctype>
#include <limits>

#include "alcqi/errors.hpp"

namespace alcqi {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Reader {
 public:
  Reader(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  Concept concept_term() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a concept, found end of input");
    if (peek() == '(') return compound();
    if (!is_name_start(peek())) fail(std::string("unexpected character '") + peek() + "'");
    const auto start_line = line_;
    const auto start_col = column_;
    auto word = name();
    if (word == "top") return Concept::top();
    if (word == "bottom") return Concept::bottom();
    if (is_keyword(word)) {
      throw ParseError(start_line, start_col, "keyword '" + word + "' used as a concept name");
    }
    return Concept::atomic(std::move(word));
  }

 private:
  static bool is_keyword(const std::string& w) {
    return w == "not" || w == "and" || w == "or" || w == "atleast" || w == "atmost" ||
           w == "inv" || w == "top" || w == "bottom";
  }

  Concept compound() {
    expect('(');
    skip_space();
    const auto kw_line = line_;
    const auto kw_col = column_;
    if (pos_ >= text_.size() || !is_name_start(peek())) fail("expected a keyword after '('");
    const auto keyword = name();
    Concept result = Concept::top();
    if (keyword == "not") {
      result = Concept::negation(concept_term());
    } else if (keyword == "and" || keyword == "or") {
      std::vector<Concept> ops;
      ops.push_back(concept_term());
      while (skip_space(), pos_ < text_.size() && peek() != ')') ops.push_back(concept_term());
      result = keyword == "and" ? Concept::conjunction(std::move(ops))
                                : Concept::disjunction(std::move(ops));
    } else if (keyword == "atleast" || keyword == "atmost") {
      const auto n = number();
      auto r = role();
      auto filler = concept_term();
      result = keyword == "atleast" ? Concept::at_least(n, std::move(r), std::move(filler))
                                    : Concept::at_most(n, std::move(r), std::move(filler));
    } else {
      throw ParseError(kw_line, kw_col, "unknown keyword '" + keyword + "'");
    }
    expect(')');
    return result;
  }

  Role role() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a role, found end of input");
    if (peek() == '(') {
      advance();
      skip_space();
      const auto kw_line = line_;
      const auto kw_col = column_;
      if (pos_ >= text_.size() || !is_name_start(peek())) fail("expected 'inv'");
      const auto keyword = name();
      if (keyword != "inv") throw ParseError(kw_line, kw_col, "unknown role keyword '" + keyword + "'");
      auto inner = role();
      expect(')');
      return inner.inverse();
    }
    if (!is_name_start(peek())) fail("expected a role name");
    const auto start_line = line_;
    const auto start_col = column_;
    auto word = name();
    if (is_keyword(word)) {
      throw ParseError(start_line, start_col, "keyword '" + word + "' used as a role name");
    }
    return Role{std::move(word), false};
  }

  std::int64_t number() {
    skip_space();
    if (pos_ < text_.size() && peek() == '-') fail("negative number in a restriction");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a non-negative integer");
    }
    const auto start_line = line_;
    const auto start_col = column_;
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const int digit = peek() - '0';
      if (value > (std::numeric_limits<std::int64_t>::max() / 4 - digit) / 10) {
        throw ParseError(start_line, start_col, "number too large");
      }
      value = value * 10 + digit;
      advance();
    }
    if (pos_ < text_.size() && is_name_char(peek())) fail("malformed number");
    return value;
  }

  std::string name() {
    std::string out;
    while (pos_ < text_.size() && is_name_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "', found end of input");
    if (peek() != c) fail(std::string("expected '") + c + "', found '" + peek() + "'");
    advance();
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, column_, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace

Concept parse_concept(std::string_view text, std::size_t line, std::size_t column) {
  Reader reader(text, line, column);
  auto c = reader.concept_term();
  if (!reader.at_end()) {
    throw ParseError(reader.line(), reader.column(), "trailing input after concept");
  }
  return c;
}

std::vector<Concept> parse_concepts(std::string_view text, std::size_t line, std::size_t column) {
  Reader reader(text, line, column);
  std::vector<Concept> out;
  while (!reader.at_end()) out.push_back(reader.concept_term());
  return out;
}

}  // namespace alcqi
