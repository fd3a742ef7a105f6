// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/text_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "urm/error.hpp"

namespace urm {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident(char c) { return is_ident_start(c) || is_digit(c); }

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (true) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (const std::size_t hash = line.find('#'); hash != line.npos) {
      line = line.substr(0, hash);
    }
    lines.push_back({number, line});
    if (nl == text.npos) break;
    text.remove_prefix(nl + 1);
    ++number;
  }
  return lines;
}

// Character cursor over one line; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), base_(column) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return base_ + pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SourceError(line_, column(), message);
  }
  [[noreturn]] void fail_at(std::size_t column,
                            const std::string& message) const {
    throw SourceError(line_, column, message);
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  Natural natural() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a natural number");
    Natural value = 0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("number out of range");
    }
    return value;
  }

  std::int64_t integer() {
    const bool negative = accept("-");
    const std::size_t start = pos_;
    const Natural magnitude = natural();
    if (magnitude > static_cast<Natural>(INT64_MAX / 4)) {
      pos_ = start;
      fail("number out of range");
    }
    const auto v = static_cast<std::int64_t>(magnitude);
    return negative ? -v : v;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
      while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  /// `rI`
  RegisterIndex reg() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != 'r') {
      fail("expected a register such as r1");
    }
    ++pos_;
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) {
      fail("expected a register number after 'r'");
    }
    const std::size_t start = pos_;
    const Natural i = natural();
    if (i == 0) {
      pos_ = start;
      fail("register indices start at 1");
    }
    return RegisterIndex(i);
  }

  Rel rel() {
    // Two-character relations first.
    if (accept("<=")) return Rel::Le;
    if (accept(">=")) return Rel::Ge;
    if (accept("!=")) return Rel::Ne;
    if (accept("<")) return Rel::Lt;
    if (accept(">")) return Rel::Gt;
    if (accept("=")) return Rel::Eq;
    fail("expected one of <, <=, =, >=, >, !=");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

Natural token_natural(const Token& t, std::size_t line) {
  Natural value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  for (const char* c = first; c != last; ++c) {
    if (!is_digit(*c)) {
      throw SourceError(line, t.column,
                        "expected a natural number, got '" +
                            std::string(t.text) + "'");
    }
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw SourceError(line, t.column, "number out of range");
  }
  return value;
}

RegisterIndex token_register(const Token& t, std::size_t line) {
  const Natural v = token_natural(t, line);
  if (v == 0) {
    throw SourceError(line, t.column, "register indices start at 1");
  }
  return RegisterIndex(v);
}

Instruction parse_instruction(const std::vector<Token>& tokens,
                              std::size_t line) {
  const Token& op = tokens.front();
  auto arity = [&](std::size_t expected) {
    if (tokens.size() != expected + 1) {
      const std::size_t column =
          tokens.size() > expected + 1 ? tokens[expected + 1].column
                                       : op.column;
      throw SourceError(line, column,
                        "'" + std::string(op.text) + "' takes " +
                            std::to_string(expected) + " operand" +
                            (expected == 1 ? "" : "s") + ", got " +
                            std::to_string(tokens.size() - 1));
    }
  };
  if (op.text == "Z") {
    arity(1);
    return Zero{token_register(tokens[1], line)};
  }
  if (op.text == "S") {
    arity(1);
    return Succ{token_register(tokens[1], line)};
  }
  if (op.text == "T") {
    arity(2);
    return Transfer{token_register(tokens[1], line),
                    token_register(tokens[2], line)};
  }
  if (op.text == "J") {
    arity(3);
    return Jump{token_register(tokens[1], line),
                token_register(tokens[2], line),
                static_cast<std::size_t>(token_natural(tokens[3], line))};
  }
  throw SourceError(line, op.column,
                    "unknown mnemonic '" + std::string(op.text) + "'");
}

// --- certificates -------------------------------------------------------

struct Entry {
  std::string key;
  std::string_view value;
  std::size_t line;
  std::size_t column;  // of the value
};

class CertParser {
 public:
  explicit CertParser(std::string_view text) {
    for (const Line& l : split_lines(text)) {
      last_line_ = l.number;
      Cursor c(l.text, l.number, 1);
      if (c.at_end()) continue;
      const std::size_t colon = l.text.find(':');
      if (colon == l.text.npos) c.fail("expected 'key: value'");
      Cursor key_cursor(l.text.substr(0, colon), l.number, 1);
      std::string key = key_cursor.identifier();
      key_cursor.expect_end();
      entries_.push_back({std::move(key), l.text.substr(colon + 1), l.number,
                          colon + 2});
    }
  }

  Certificate parse() {
    static const std::set<std::string> kKnown = {
        "kind", "params", "constraint", "init",    "head",
        "invariant", "split", "ranking", "bound"};
    static const std::set<std::string> kRepeatable = {"constraint",
                                                      "invariant"};
    std::map<std::string, const Entry*> single;
    for (const Entry& e : entries_) {
      if (!kKnown.contains(e.key)) {
        throw SourceError(e.line, 1, "unknown key '" + e.key + "'");
      }
      if (!kRepeatable.contains(e.key)) {
        if (single.contains(e.key)) {
          throw SourceError(e.line, 1, "duplicate key '" + e.key + "'");
        }
        single[e.key] = &e;
      }
    }

    const Entry& kind_entry = require(single, "kind");
    Cursor kc = cursor(kind_entry);
    const std::string kind = kc.identifier();
    kc.expect_end();
    if (kind != "diverges" && kind != "terminates") {
      throw SourceError(kind_entry.line, kind_entry.column,
                        "kind must be 'diverges' or 'terminates'");
    }
    const bool terminates = kind == "terminates";
    if (!terminates) {
      for (const char* key : {"split", "ranking"}) {
        if (auto it = single.find(key); it != single.end()) {
          throw SourceError(it->second->line, 1,
                            std::string("'") + key +
                                "' only applies to kind: terminates");
        }
      }
    }

    std::vector<std::string> names;
    if (auto it = single.find("params"); it != single.end()) {
      Cursor c = cursor(*it->second);
      while (!c.at_end()) {
        const std::size_t column = c.column();
        std::string name = c.identifier();
        if (params_.contains(name)) {
          throw SourceError(it->second->line, column,
                            "duplicate parameter '" + name + "'");
        }
        params_[name] = names.size();
        names.push_back(std::move(name));
        c.accept(",");
      }
    }

    ConstraintSet constraints(names);
    std::vector<RegComparison> invariant;
    for (const Entry& e : entries_) {
      if (e.key == "constraint") {
        Cursor c = cursor(e);
        ParamComparison cmp{param_term(c), c.rel(), param_term(c)};
        c.expect_end();
        constraints.add(normalize(cmp));
      } else if (e.key == "invariant") {
        Cursor c = cursor(e);
        RegComparison cmp{reg_term(c), c.rel(), reg_term(c)};
        c.expect_end();
        invariant.push_back(cmp);
      }
    }

    std::vector<SymValue> init;
    {
      Cursor c = cursor(require(single, "init"));
      do {
        init.push_back(param_term(c));
      } while (c.accept(","));
      c.expect_end();
    }
    const std::size_t head = positive(require(single, "head"), "head");
    const std::size_t bound = positive(require(single, "bound"), "bound");

    if (!terminates) {
      return DivergenceCert{std::move(constraints), std::move(init), head,
                            std::move(invariant), bound};
    }

    Cursor sc = cursor(require(single, "split"));
    const RegisterIndex sx = sc.reg();
    sc.expect("-");
    const RegisterIndex sy = sc.reg();
    std::int64_t threshold = 0;
    if (sc.accept(">=")) {
      threshold = sc.integer() - 1;
    } else if (sc.accept(">")) {
      threshold = sc.integer();
    } else {
      sc.fail("split must read 'rX - rY > k' or 'rX - rY >= k'");
    }
    sc.expect_end();

    Cursor rc = cursor(require(single, "ranking"));
    const RegisterIndex rx = rc.reg();
    rc.expect("-");
    const RegisterIndex ry = rc.reg();
    rc.expect_end();

    return TerminationCert{std::move(constraints), std::move(init), head,
                           std::move(invariant), Split{sx, sy, threshold},
                           Ranking{rx, ry}, bound};
  }

 private:
  const Entry& require(const std::map<std::string, const Entry*>& single,
                       const std::string& key) const {
    auto it = single.find(key);
    if (it == single.end()) {
      throw SourceError(std::max<std::size_t>(last_line_, 1), 1,
                        "missing '" + key + ":' line");
    }
    return *it->second;
  }

  static Cursor cursor(const Entry& e) {
    return Cursor(e.value, e.line, e.column);
  }

  std::size_t positive(const Entry& e, const std::string& key) const {
    Cursor c = cursor(e);
    const std::size_t column = c.column();
    const Natural v = c.natural();
    c.expect_end();
    if (v == 0) throw SourceError(e.line, column, key + " must be >= 1");
    return static_cast<std::size_t>(v);
  }

  // param | param+nat | nat
  SymValue param_term(Cursor& c) {
    if (is_digit(c.peek())) return SymValue::constant(c.natural());
    const std::size_t column = c.column();
    const std::string name = c.identifier();
    auto it = params_.find(name);
    if (it == params_.end()) {
      c.fail_at(column, "undeclared parameter '" + name + "'");
    }
    Natural offset = 0;
    if (c.accept("+")) offset = c.natural();
    return SymValue::var_plus(it->second, offset);
  }

  // rI | rI+nat | nat
  static RegTerm reg_term(Cursor& c) {
    if (is_digit(c.peek())) return RegTerm{std::nullopt, c.natural()};
    RegTerm t{c.reg(), 0};
    if (c.accept("+")) t.offset = c.natural();
    return t;
  }

  std::vector<Entry> entries_;
  std::map<std::string, VarId> params_;
  std::size_t last_line_ = 1;
};

}  // namespace

Program parse_program(std::string_view text) {
  std::vector<Instruction> instructions;
  std::size_t last_line = 1;
  for (const Line& l : split_lines(text)) {
    last_line = l.number;
    const std::vector<Token> tokens = tokenize(l.text);
    if (tokens.empty()) continue;
    instructions.push_back(parse_instruction(tokens, l.number));
  }
  if (instructions.empty()) {
    throw SourceError(last_line, 1, "program has no instructions");
  }
  return Program(std::move(instructions));
}

std::string print_program(const Program& p) {
  std::string out;
  for (const Instruction& instr : p.instructions()) {
    if (!out.empty()) out += '\n';
    out += to_string(instr);
  }
  return out;
}

FiniteConfig parse_config(std::string_view text) {
  std::vector<Natural> values;
  const std::vector<Line> lines = split_lines(text);
  bool expect_value = true;
  for (const Line& l : lines) {
    Cursor c(l.text, l.number, 1);
    while (!c.at_end()) {
      if (!expect_value) {
        c.expect(",");
        expect_value = true;
        continue;
      }
      values.push_back(c.natural());
      expect_value = false;
    }
  }
  if (values.empty()) {
    throw SourceError(1, 1, "configuration must list at least one value");
  }
  if (expect_value) {
    const Line& l = lines.back();
    throw SourceError(l.number, l.text.size() + 1,
                      "expected a value after ','");
  }
  return FiniteConfig(std::move(values));
}

Certificate parse_cert(std::string_view text) {
  return CertParser(text).parse();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace urm
