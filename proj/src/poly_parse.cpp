#include <cctype>

#include "hfree/error.hpp"
#include "hfree/poly.hpp"

namespace hfree {

namespace {

// expr  := term (('+' | '-') term)*
// term  := unary ('*' unary)*
// unary := ('+' | '-') unary | power
// power := atom ('^' INT)?
// atom  := INT ('/' INT)? | 'b' | 'h' INT | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  Poly parse() {
    Poly out = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const std::string e = digits();
      if (e.size() > 4) throw ParseError(at, "exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string num = digits();
      if (accept('/')) {
        const std::size_t at = pos_;
        const std::string den = digits();
        if (mpz_class(den) == 0) throw ParseError(at, "zero denominator");
        Rational r{mpz_class(num), mpz_class(den)};
        r.canonicalize();
        return Poly::constant(rank_, r);
      }
      return Poly::constant(rank_, Rational(mpz_class(num)));
    }
    if (c == 'b') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        fail("unknown identifier");
      }
      return Poly::param(rank_);
    }
    if (c == 'h') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError(at, "expected h<index>");
      }
      const std::string idx = digits();
      const long i = idx.size() > 6 ? -1 : std::stol(idx);
      if (i < 1 || i > rank_) {
        throw ParseError(at, "variable h" + idx + " outside h1..h" + std::to_string(rank_));
      }
      return Poly::h(rank_, static_cast<int>(i));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int rank) { return PolyParser(text, rank).parse(); }

}  // namespace hfree
