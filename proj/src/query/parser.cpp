// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "qca/error.hpp"
#include "qca/query.hpp"

namespace qca {

namespace {

enum class Tok { Ident, Int, Float, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier/symbol text, or unescaped string body
  int64_t int_value = 0;
  double float_value = 0;
  size_t pos = 0;
};

[[noreturn]] void syntax_error(size_t pos, const std::string& what) {
  throw Error(Errc::SyntaxError, "at offset " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(std::string_view sql) {
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = sql.size();
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  while (i < n) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.pos = i;
    if (is_ident_start(c)) {
      size_t j = i + 1;
      while (j < n && is_ident_char(sql[j])) ++j;
      tok.kind = Tok::Ident;
      tok.text = std::string(sql.substr(i, j - i));
      i = j;
    } else if (is_digit(c) || ((c == '-' || c == '.') && i + 1 < n &&
                               (is_digit(sql[i + 1]) || (sql[i + 1] == '.' && i + 2 < n && is_digit(sql[i + 2]))))) {
      size_t j = i;
      if (sql[j] == '-') ++j;
      bool is_float = false;
      while (j < n && is_digit(sql[j])) ++j;
      if (j < n && sql[j] == '.') {
        is_float = true;
        ++j;
        while (j < n && is_digit(sql[j])) ++j;
      }
      if (j < n && (sql[j] == 'e' || sql[j] == 'E')) {
        size_t k = j + 1;
        if (k < n && (sql[k] == '+' || sql[k] == '-')) ++k;
        if (k < n && is_digit(sql[k])) {
          is_float = true;
          j = k;
          while (j < n && is_digit(sql[j])) ++j;
        }
      }
      auto text = sql.substr(i, j - i);
      if (is_float) {
        tok.kind = Tok::Float;
        auto res = std::from_chars(text.data(), text.data() + text.size(), tok.float_value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(tok.float_value))
          syntax_error(i, "malformed numeric literal '" + std::string(text) + "'");
      } else {
        tok.kind = Tok::Int;
        auto res = std::from_chars(text.data(), text.data() + text.size(), tok.int_value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
          syntax_error(i, "integer literal out of range '" + std::string(text) + "'");
      }
      tok.text = std::string(text);
      i = j;
    } else if (c == '\'') {
      std::string body;
      size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        if (sql[j] == '\'') {
          if (j + 1 < n && sql[j + 1] == '\'') {
            body.push_back('\'');
            j += 2;
            continue;
          }
          closed = true;
          ++j;
          break;
        }
        body.push_back(sql[j++]);
      }
      if (!closed) syntax_error(i, "unterminated string literal");
      tok.kind = Tok::String;
      tok.text = std::move(body);
      i = j;
    } else {
      tok.kind = Tok::Symbol;
      auto two = sql.substr(i, 2);
      if (two == "<=" || two == ">=" || two == "<>" || two == "!=") {
        tok.text = std::string(two);
        i += 2;
      } else if (std::string_view(",().*;<>=").find(c) != std::string_view::npos) {
        tok.text = std::string(1, c);
        ++i;
      } else {
        syntax_error(i, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::End;
  end.pos = n;
  out.push_back(end);
  return out;
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "select", "from",  "where", "and",   "or",    "limit", "join",  "inner", "on",   "as",
      "order",  "group", "by",    "having", "union", "distinct", "not", "in", "like", "between",
      "left",   "right", "full",  "outer", "cross", "is",    "null",  "exists", "offset"};
  return words;
}

class Parser {
 public:
  explicit Parser(std::string_view sql) : tokens_(tokenize(sql)) {}

  QueryAst parse() {
    expect_keyword("SELECT");
    if (peek_keyword("DISTINCT")) unsupported("DISTINCT");
    parse_projections();
    expect_keyword("FROM");
    parse_sources();
    if (accept_keyword("WHERE")) parse_conditions(/*in_on=*/false);
    reject_trailing_clauses();
    if (accept_keyword("LIMIT")) {
      const auto& t = peek();
      if (t.kind != Tok::Int || t.int_value < 0) syntax_error(t.pos, "expected non-negative integer after LIMIT");
      ast_.limit = static_cast<uint64_t>(t.int_value);
      ++pos_;
      if (peek_keyword("OFFSET")) unsupported("OFFSET");
    }
    reject_trailing_clauses();
    accept_symbol(";");
    if (peek().kind != Tok::End) syntax_error(peek().pos, "expected end of statement, found '" + peek().text + "'");
    if (ast_.has_aggregates()) {
      for (const auto& p : ast_.projections)
        if (std::holds_alternative<ColumnRef>(p))
          syntax_error(0, "mixing aggregates with plain columns needs GROUP BY, which is not supported");
    }
    return std::move(ast_);
  }

 private:
  const Token& peek(size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  bool peek_keyword(std::string_view kw, size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Ident && iequals(t.text, kw);
  }
  bool accept_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) return false;
    ++pos_;
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) syntax_error(peek().pos, "expected " + std::string(kw) + describe_found());
  }
  bool peek_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool accept_symbol(std::string_view s) {
    if (!peek_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) syntax_error(peek().pos, "expected '" + std::string(s) + "'" + describe_found());
  }
  std::string describe_found() const {
    const auto& t = peek();
    if (t.kind == Tok::End) return ", found end of statement";
    return ", found '" + t.text + "'";
  }
  [[noreturn]] void unsupported(const std::string& construct) const {
    syntax_error(peek().pos, construct + " is not supported by this dialect");
  }

  std::string expect_identifier(const char* what) {
    const auto& t = peek();
    if (t.kind != Tok::Ident || reserved_words().count(to_lower(t.text)))
      syntax_error(t.pos, std::string("expected ") + what + describe_found());
    ++pos_;
    return t.text;
  }

  void reject_trailing_clauses() const {
    if (peek_keyword("ORDER")) unsupported("ORDER BY");
    if (peek_keyword("GROUP")) unsupported("GROUP BY");
    if (peek_keyword("HAVING")) unsupported("HAVING");
    if (peek_keyword("UNION")) unsupported("UNION");
    if (peek_keyword("OR")) unsupported("OR");
  }

  ColumnRef parse_column_ref() {
    ColumnRef ref;
    auto first = expect_identifier("column name");
    if (accept_symbol(".")) {
      if (peek_symbol("*")) unsupported("qualified '*' projection");
      ref.qualifier = std::move(first);
      ref.column = expect_identifier("column name after '.'");
    } else {
      ref.column = std::move(first);
    }
    return ref;
  }

  void parse_projections() {
    do {
      if (peek_symbol("*")) unsupported("SELECT *");
      if (peek_symbol("(")) unsupported("parenthesized expression or subquery");
      const auto& t = peek();
      if (t.kind == Tok::Ident && peek(1).kind == Tok::Symbol && peek(1).text == "(") {
        static const std::pair<const char*, AggFunc> funcs[] = {
            {"COUNT", AggFunc::Count}, {"AVG", AggFunc::Avg}, {"MIN", AggFunc::Min}, {"MAX", AggFunc::Max}};
        std::optional<AggFunc> func;
        for (const auto& [name, f] : funcs)
          if (iequals(t.text, name)) func = f;
        if (!func) syntax_error(t.pos, "function '" + t.text + "' is not supported by this dialect");
        pos_ += 2;
        Aggregate agg;
        agg.func = *func;
        if (peek_keyword("DISTINCT")) unsupported("DISTINCT inside aggregate");
        if (accept_symbol("*")) {
          if (*func != AggFunc::Count) syntax_error(peek().pos, "only COUNT accepts '*'");
        } else {
          if (peek_keyword("SELECT") || peek_symbol("(")) unsupported("subquery");
          agg.arg = parse_column_ref();
        }
        expect_symbol(")");
        ast_.projections.emplace_back(std::move(agg));
      } else {
        ast_.projections.emplace_back(parse_column_ref());
      }
      if (peek_keyword("AS")) unsupported("projection alias (AS)");
    } while (accept_symbol(","));
  }

  void parse_source() {
    if (peek_symbol("(")) unsupported("subquery in FROM");
    TableInstance inst;
    inst.table = expect_identifier("table name");
    if (accept_keyword("AS")) {
      inst.alias = expect_identifier("alias after AS");
    } else if (peek().kind == Tok::Ident && !reserved_words().count(to_lower(peek().text))) {
      inst.alias = peek().text;
      ++pos_;
    }
    if (inst.alias) {
      for (const auto& other : ast_.sources)
        if (other.alias && iequals(*other.alias, *inst.alias))
          syntax_error(peek().pos, "duplicate alias '" + *inst.alias + "'");
    }
    ast_.sources.push_back(std::move(inst));
  }

  void parse_sources() {
    parse_source();
    for (;;) {
      if (accept_symbol(",")) {
        parse_source();
        continue;
      }
      if (peek_keyword("LEFT") || peek_keyword("RIGHT") || peek_keyword("FULL")) unsupported("outer join");
      if (peek_keyword("CROSS")) unsupported("CROSS JOIN");
      if (accept_keyword("INNER")) {
        if (!peek_keyword("JOIN")) syntax_error(peek().pos, "expected JOIN after INNER" + describe_found());
      }
      if (accept_keyword("JOIN")) {
        parse_source();
        expect_keyword("ON");
        parse_conditions(/*in_on=*/true);
        continue;
      }
      break;
    }
  }

  struct Operand {
    bool is_column = false;
    ColumnRef column;
    Literal literal;
  };

  Operand parse_operand() {
    const auto& t = peek();
    Operand op;
    switch (t.kind) {
      case Tok::Int:
        op.literal = t.int_value;
        ++pos_;
        return op;
      case Tok::Float:
        op.literal = t.float_value;
        ++pos_;
        return op;
      case Tok::String:
        op.literal = t.text;
        ++pos_;
        return op;
      case Tok::Symbol:
        if (t.text == "(") unsupported("parenthesized expression or subquery");
        syntax_error(t.pos, "expected column or literal" + describe_found());
      case Tok::Ident:
        if (iequals(t.text, "NULL")) unsupported("NULL literal");
        if (iequals(t.text, "NOT")) unsupported("NOT");
        if (iequals(t.text, "EXISTS")) unsupported("EXISTS subquery");
        op.is_column = true;
        op.column = parse_column_ref();
        return op;
      case Tok::End:
        syntax_error(t.pos, "expected column or literal, found end of statement");
    }
    syntax_error(t.pos, "expected column or literal");
  }

  CompareOp parse_operator() {
    const auto& t = peek();
    if (t.kind == Tok::Ident) {
      for (const char* kw : {"IN", "LIKE", "BETWEEN", "IS", "NOT"})
        if (iequals(t.text, kw)) unsupported(std::string(kw) + " predicate");
    }
    if (t.kind != Tok::Symbol) syntax_error(t.pos, "expected comparison operator" + describe_found());
    CompareOp op;
    if (t.text == "<") op = CompareOp::Lt;
    else if (t.text == "<=") op = CompareOp::Le;
    else if (t.text == ">") op = CompareOp::Gt;
    else if (t.text == ">=") op = CompareOp::Ge;
    else if (t.text == "=") op = CompareOp::Eq;
    else if (t.text == "<>" || t.text == "!=") op = CompareOp::Ne;
    else syntax_error(t.pos, "expected comparison operator" + describe_found());
    ++pos_;
    return op;
  }

  void parse_condition(bool in_on) {
    size_t start = peek().pos;
    auto lhs = parse_operand();
    auto op = parse_operator();
    auto rhs = parse_operand();
    if (lhs.is_column && rhs.is_column) {
      if (op != CompareOp::Eq) syntax_error(start, "column-to-column comparisons must be equalities");
      if (ast_.sources.size() < 2 && !in_on)
        syntax_error(start, "column-to-column comparison requires two table instances");
      ast_.join_conditions.push_back({std::move(lhs.column), std::move(rhs.column)});
    } else if (lhs.is_column) {
      ast_.predicates.push_back({std::move(lhs.column), op, std::move(rhs.literal)});
    } else if (rhs.is_column) {
      ast_.predicates.push_back({std::move(rhs.column), flip(op), std::move(lhs.literal)});
    } else {
      syntax_error(start, "comparison between two literals");
    }
  }

  void parse_conditions(bool in_on) {
    do {
      parse_condition(in_on);
    } while (accept_keyword("AND"));
    if (peek_keyword("OR")) unsupported("OR");
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  QueryAst ast_;
};

// Leading identifier-like words; stops at the first other character.
std::vector<std::pair<std::string, size_t>> leading_words(std::string_view sql, size_t count) {
  std::vector<std::pair<std::string, size_t>> words;
  size_t i = 0;
  while (words.size() < count) {
    while (i < sql.size() && std::isspace(static_cast<unsigned char>(sql[i]))) ++i;
    size_t j = i;
    while (j < sql.size() && (std::isalnum(static_cast<unsigned char>(sql[j])) || sql[j] == '_')) ++j;
    if (j == i) break;
    words.emplace_back(std::string(sql.substr(i, j - i)), i);
    i = j;
  }
  return words;
}

}  // namespace

std::string_view agg_name(AggFunc f) noexcept {
  switch (f) {
    case AggFunc::Count: return "COUNT";
    case AggFunc::Avg: return "AVG";
    case AggFunc::Min: return "MIN";
    case AggFunc::Max: return "MAX";
  }
  return "?";
}

std::string_view op_symbol(CompareOp op) noexcept {
  switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "<>";
  }
  return "?";
}

CompareOp flip(CompareOp op) noexcept {
  switch (op) {
    case CompareOp::Lt: return CompareOp::Gt;
    case CompareOp::Le: return CompareOp::Ge;
    case CompareOp::Gt: return CompareOp::Lt;
    case CompareOp::Ge: return CompareOp::Le;
    default: return op;
  }
}

bool QueryAst::has_aggregates() const {
  for (const auto& p : projections)
    if (std::holds_alternative<Aggregate>(p)) return true;
  return false;
}

QueryAst parse_query(std::string_view sql) { return Parser(sql).parse(); }

StatementKind classify_statement(std::string_view sql) {
  auto words = leading_words(sql, 1);
  if (!words.empty()) {
    const auto& first = words.front().first;
    if (iequals(first, "SELECT")) return StatementKind::Query;
    if (iequals(first, "COPY")) return StatementKind::Load;
    if (iequals(first, "TRUNCATE")) return StatementKind::Truncate;
  }
  syntax_error(0, "statement must start with SELECT, COPY, or TRUNCATE");
}

std::string parse_truncate_target(std::string_view sql) {
  auto words = leading_words(sql, 3);
  if (words.empty() || !iequals(words[0].first, "TRUNCATE")) syntax_error(0, "expected TRUNCATE");
  size_t i = 1;
  if (i < words.size() && iequals(words[i].first, "TABLE")) ++i;
  if (i >= words.size()) syntax_error(sql.size(), "expected table name after TRUNCATE");
  return words[i].first;
}

std::string parse_copy_target(std::string_view sql) {
  // Only the target is interpreted; the source path and options stay in the
  // task statement verbatim.
  auto words = leading_words(sql, 2);
  if (words.empty() || !iequals(words[0].first, "COPY")) syntax_error(0, "expected COPY");
  if (words.size() < 2) syntax_error(sql.size(), "expected table name after COPY");
  return words[1].first;
}

}  // namespace qca
