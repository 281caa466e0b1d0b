// Copyright 2026 The scenmon Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenmon/stl/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "scenmon/errors.hpp"

namespace scenmon::stl
{

namespace
{

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kNot,
  kAnd,
  kOr,
  kCmp,
};

struct Token
{
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  CmpOp cmp = CmpOp::kGt;
  std::size_t pos = 0;
};

class Lexer
{
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next()
  {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    Token t;
    t.pos = pos_;
    if (pos_ >= src_.size()) {
      return t;
    }
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      t.kind = k;
      return t;
    };
    switch (c) {
      case '(':
        return single(Tok::kLParen);
      case ')':
        return single(Tok::kRParen);
      case '[':
        return single(Tok::kLBracket);
      case ']':
        return single(Tok::kRBracket);
      case ',':
        return single(Tok::kComma);
      case '!':
      case '~':
        return single(Tok::kNot);
      case '&':
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '&') {
          ++pos_;
        }
        t.kind = Tok::kAnd;
        return t;
      case '|':
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '|') {
          ++pos_;
        }
        t.kind = Tok::kOr;
        return t;
      case '>':
      case '<': {
        ++pos_;
        const bool eq = pos_ < src_.size() && src_[pos_] == '=';
        if (eq) {
          ++pos_;
        }
        t.kind = Tok::kCmp;
        t.cmp = c == '>' ? (eq ? CmpOp::kGe : CmpOp::kGt) : (eq ? CmpOp::kLe : CmpOp::kLt);
        return t;
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      return number(t);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      {
        ++end;
      }
      t.kind = Tok::kIdent;
      t.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return t;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

private:
  Token number(Token t)
  {
    const char * begin = src_.data() + pos_;
    const char * end = src_.data() + src_.size();
    const char * p = begin;
    if (*p == '+') {
      ++p;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || ptr == p) {
      throw SyntaxError("malformed number", pos_);
    }
    pos_ += static_cast<std::size_t>(ptr - begin);
    t.kind = Tok::kNumber;
    t.number = value;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser
{
public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Formula parse_all()
  {
    if (cur_.kind == Tok::kEnd) {
      throw SyntaxError("empty formula", cur_.pos);
    }
    Formula f = until_expr();
    if (cur_.kind != Tok::kEnd) {
      throw SyntaxError("unexpected trailing input", cur_.pos);
    }
    return f;
  }

private:
  void advance() { cur_ = lexer_.next(); }

  bool is_keyword(const char * kw) const { return cur_.kind == Tok::kIdent && cur_.text == kw; }

  void expect(Tok kind, const char * what)
  {
    if (cur_.kind != kind) {
      throw SyntaxError(std::string("expected ") + what, cur_.pos);
    }
    advance();
  }

  Formula until_expr()
  {
    Formula lhs = or_expr();
    if (is_keyword("U")) {
      advance();
      TimeInterval j = optional_interval();
      Formula rhs = until_expr();
      return Formula::until(std::move(lhs), std::move(rhs), j);
    }
    return lhs;
  }

  Formula or_expr()
  {
    Formula lhs = and_expr();
    while (cur_.kind == Tok::kOr) {
      advance();
      lhs = Formula::disjunction(std::move(lhs), and_expr());
    }
    return lhs;
  }

  Formula and_expr()
  {
    Formula lhs = unary();
    while (cur_.kind == Tok::kAnd) {
      advance();
      lhs = Formula::conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary()
  {
    if (cur_.kind == Tok::kNot) {
      advance();
      return Formula::negation(unary());
    }
    if (is_keyword("G") || is_keyword("F")) {
      const bool globally = cur_.text == "G";
      advance();
      TimeInterval j = optional_interval();
      Formula body = unary();
      return globally ? Formula::globally(std::move(body), j) : Formula::finally(std::move(body), j);
    }
    return primary();
  }

  TimeInterval optional_interval()
  {
    if (cur_.kind != Tok::kLBracket) {
      return {};
    }
    const std::size_t open = cur_.pos;
    advance();
    const double lo = bound();
    expect(Tok::kComma, "',' in interval");
    const double hi = bound();
    expect(Tok::kRBracket, "']' closing interval");
    if (lo < 0.0 || lo > hi || lo == kInfinity) {
      throw MalformedInterval("interval bounds must satisfy 0 <= lo <= hi", open);
    }
    return {lo, hi};
  }

  double bound()
  {
    if (cur_.kind == Tok::kNumber) {
      const double v = cur_.number;
      advance();
      return v;
    }
    if (is_keyword("inf") || is_keyword("infinity")) {
      advance();
      return kInfinity;
    }
    throw SyntaxError("expected interval bound", cur_.pos);
  }

  Formula primary()
  {
    if (cur_.kind == Tok::kLParen) {
      advance();
      Formula f = until_expr();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (cur_.kind != Tok::kIdent) {
      throw SyntaxError("expected formula", cur_.pos);
    }
    if (cur_.text == "true") {
      advance();
      return Formula::top();
    }
    if (cur_.text == "false") {
      advance();
      return Formula::bottom();
    }
    if (cur_.text == "U") {
      throw SyntaxError("'U' needs a left operand", cur_.pos);
    }
    std::string name = cur_.text;
    advance();
    std::vector<AtomArg> args;
    if (cur_.kind == Tok::kLParen) {
      advance();
      if (cur_.kind != Tok::kRParen) {
        while (true) {
          if (cur_.kind == Tok::kIdent) {
            args.emplace_back(cur_.text);
          } else if (cur_.kind == Tok::kNumber) {
            args.emplace_back(cur_.number);
          } else {
            throw SyntaxError("expected atom argument", cur_.pos);
          }
          advance();
          if (cur_.kind == Tok::kComma) {
            advance();
            continue;
          }
          break;
        }
      }
      expect(Tok::kRParen, "')' closing argument list");
    }
    std::optional<Comparison> cmp;
    if (cur_.kind == Tok::kCmp) {
      const CmpOp op = cur_.cmp;
      advance();
      if (cur_.kind != Tok::kNumber) {
        throw SyntaxError("expected number after comparison", cur_.pos);
      }
      cmp = Comparison{op, cur_.number};
      advance();
    }
    return Formula::atom(std::move(name), std::move(args), cmp);
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace scenmon::stl
