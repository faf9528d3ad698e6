#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/kernel/errors.hpp"
#include "pmc/kernel/gaussian_rational.hpp"

namespace pmc::expr {

/// Parse failure at a byte offset, with the tokens that would have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::set<std::string> expected, const std::string& found)
      : Error(message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string message(std::size_t offset, const std::set<std::string>& expected, const std::string& found) {
    std::string out = "syntax error at offset " + std::to_string(offset) + ": found " + found + ", expected ";
    bool first = true;
    for (const auto& e : expected) {
      out += (first ? "" : " | ") + e;
      first = false;
    }
    return out;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

enum class Kind { Number, I, Var, Call, Neg, Binary, Paren };
enum class VarName { alpha, a, abar, rho, b };
enum class Func { sin, cos, cot, conj };

inline const char* var_text(VarName v) {
  switch (v) {
    case VarName::alpha: return "alpha";
    case VarName::a: return "a";
    case VarName::abar: return "abar";
    case VarName::rho: return "rho";
    case VarName::b: return "b";
  }
  return "?";
}

inline const char* func_text(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::cot: return "cot";
    case Func::conj: return "conj";
  }
  return "?";
}

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
  Kind kind;
  std::size_t offset = 0;
  Rational number;          // Number
  VarName var{};            // Var
  Func func{};              // Call
  char op = 0;              // Binary: + - * / ^
  long exponent = 0;        // Binary '^'
  std::vector<NodePtr> kids;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  static constexpr int kMaxDepth = 256;
  static constexpr long kMaxExponent = 4096;

  struct Depth {
    explicit Depth(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) throw SyntaxError(p.pos_, {"shallower nesting"}, "nesting deeper than 256");
    }
    ~Depth() { --p.depth_; }
    Parser& p;
  };

  NodePtr node(Kind k, std::size_t at) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->offset = at;
    return n;
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  std::string found() const {
    if (pos_ >= text_.size()) return "end of input";
    unsigned char ch = static_cast<unsigned char>(text_[pos_]);
    if (ch < 0x20 || ch >= 0x7f) {
      const char* hex = "0123456789abcdef";
      return std::string("byte 0x") + hex[ch >> 4] + hex[ch & 15];
    }
    return "'" + std::string(1, text_[pos_]) + "'";
  }

  [[noreturn]] void fail(std::set<std::string> expected) { throw SyntaxError(pos_, std::move(expected), found()); }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail({std::string("'") + ch + "'"});
  }

  NodePtr binary(char op, NodePtr l, NodePtr r, std::size_t at) {
    auto n = node(Kind::Binary, at);
    n->op = op;
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return n;
  }

  NodePtr expr() {
    Depth guard(*this);
    NodePtr l = term();
    for (;;) {
      skip_space();
      std::size_t at = pos_;
      if (accept('+')) l = binary('+', std::move(l), term(), at);
      else if (accept('-')) l = binary('-', std::move(l), term(), at);
      else return l;
    }
  }

  NodePtr term() {
    NodePtr l = factor();
    for (;;) {
      skip_space();
      std::size_t at = pos_;
      if (accept('*')) l = binary('*', std::move(l), factor(), at);
      else if (accept('/')) l = binary('/', std::move(l), factor(), at);
      else return l;
    }
  }

  // factor := '-' factor | base ('^' int)?
  NodePtr factor() {
    Depth guard(*this);
    skip_space();
    std::size_t at = pos_;
    if (accept('-')) {
      auto n = node(Kind::Neg, at);
      n->kids.push_back(factor());
      return n;
    }
    NodePtr b = base();
    skip_space();
    at = pos_;
    if (accept('^')) {
      auto n = node(Kind::Binary, at);
      n->op = '^';
      n->exponent = integer_exponent();
      n->kids.push_back(std::move(b));
      return n;
    }
    return b;
  }

  long integer_exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer exponent"});
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6 || std::stol(digits) > kMaxExponent) {
      pos_ = start;
      throw DomainError("exponent at offset " + std::to_string(start) + " exceeds " + std::to_string(kMaxExponent));
    }
    if (paren) expect(')');
    long e = std::stol(digits);
    return neg ? -e : e;
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    std::string den = "1";
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t frac = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (frac == pos_) fail({"digit"});
      digits += text_.substr(frac, pos_ - frac);
      den += std::string(pos_ - frac, '0');
    }
    auto n = node(Kind::Number, start);
    n->number = Rational(mpz_class(digits, 10), mpz_class(den, 10));
    n->number.canonicalize();
    return n;
  }

  std::string ident() {
    std::size_t start = pos_;
    if (text_.substr(pos_, 2) == "\xCE\xB1") {  // Greek small alpha
      pos_ += 2;
      return "alpha";
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  NodePtr base() {
    skip_space();
    std::size_t at = pos_;
    if (pos_ >= text_.size()) fail(base_first());
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return number();
    if (ch == '(') {
      ++pos_;
      auto n = node(Kind::Paren, at);
      n->kids.push_back(expr());
      expect(')');
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch)) && text_.substr(pos_, 2) != "\xCE\xB1") fail(base_first());
    std::string id = ident();
    if (id == "i") return node(Kind::I, at);
    static const std::pair<const char*, VarName> vars[] = {
        {"alpha", VarName::alpha}, {"a", VarName::a}, {"abar", VarName::abar}, {"rho", VarName::rho}, {"b", VarName::b}};
    for (const auto& [name, v] : vars)
      if (id == name) {
        auto n = node(Kind::Var, at);
        n->var = v;
        return n;
      }
    static const std::pair<const char*, Func> funcs[] = {
        {"sin", Func::sin}, {"cos", Func::cos}, {"cot", Func::cot}, {"conj", Func::conj}};
    for (const auto& [name, f] : funcs)
      if (id == name) {
        auto n = node(Kind::Call, at);
        n->func = f;
        expect('(');
        n->kids.push_back(expr());
        expect(')');
        return n;
      }
    pos_ = at;
    fail(base_first());
  }

  static std::set<std::string> base_first() {
    return {"number", "i", "alpha", "a", "abar", "rho", "b", "sin", "cos", "cot", "conj", "'('", "'-'"};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

/// Parses the expression grammar; throws SyntaxError on malformed input.
inline NodePtr parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace pmc::expr
