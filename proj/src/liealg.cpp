#include "hfree/liealg.hpp"

#include <cctype>
#include <sstream>

#include "hfree/error.hpp"

namespace hfree {

std::string BasisElement::str() const {
  if (is_h()) return "h(" + std::to_string(row) + ")";
  return "e(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

void validate(const BasisElement& x, int n) {
  if (x.is_h()) {
    if (x.row < 1 || x.row > n) throw Error(Errc::index_out_of_range, x.str() + " is not in sl_" + std::to_string(n + 1));
    return;
  }
  if (x.row < 1 || x.row > n + 1 || x.col < 1 || x.col > n + 1 || x.row == x.col) {
    throw Error(Errc::index_out_of_range, x.str() + " is not in sl_" + std::to_string(n + 1));
  }
}

std::vector<BasisElement> basis(int n) {
  std::vector<BasisElement> out;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = 1; j <= n + 1; ++j) {
      if (i != j) out.push_back(BasisElement::e(i, j));
    }
  }
  for (int k = 1; k <= n; ++k) out.push_back(BasisElement::h(k));
  return out;
}

Rational AlgebraVector::coefficient(const BasisElement& x) const {
  const auto it = terms_.find(x);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraVector::add(const BasisElement& x, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& other) {
  for (const auto& [x, c] : other.terms_) add(x, c);
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& other) {
  for (const auto& [x, c] : other.terms_) add(x, -c);
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [x, coeff] : terms_) coeff *= c;
  return *this;
}

AlgebraVector AlgebraVector::operator-() const {
  AlgebraVector out = *this;
  out *= Rational(-1);
  return out;
}

std::string AlgebraVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << x.str();
    first = false;
  }
  return os.str();
}

namespace {

// e(k,k) - (1/(n+1)) * identity: h_k for k <= n, and -hbar for k = n+1.
AlgebraVector traceless_diagonal(int k, int n) {
  AlgebraVector out;
  if (k <= n) {
    out.add(BasisElement::h(k), 1);
  } else {
    for (int m = 1; m <= n; ++m) out.add(BasisElement::h(m), -1);
  }
  return out;
}

}  // namespace

AlgebraVector diagonal_difference(int i, int j, int n) {
  return traceless_diagonal(i, n) - traceless_diagonal(j, n);
}

AlgebraVector bracket(const BasisElement& x, const BasisElement& y, int n) {
  validate(x, n);
  validate(y, n);
  if (x.is_h() && y.is_h()) return {};
  if (x.is_h()) {
    const int k = x.row;
    const int weight = (k == y.row ? 1 : 0) - (k == y.col ? 1 : 0);
    return AlgebraVector(y, weight);
  }
  if (y.is_h()) return -bracket(y, x, n);

  const int i = x.row, j = x.col, ip = y.row, jp = y.col;
  if (j == ip && i == jp) return diagonal_difference(i, j, n);
  AlgebraVector out;
  if (j == ip) out.add(BasisElement::e(i, jp), 1);
  if (i == jp) out.add(BasisElement::e(ip, j), -1);
  return out;
}

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y, int n) {
  AlgebraVector out;
  for (const auto& [bx, cx] : x.terms()) {
    for (const auto& [by, cy] : y.terms()) {
      AlgebraVector piece = bracket(bx, by, n);
      piece *= cx * cy;
      out += piece;
    }
  }
  return out;
}

Poly hbar(int n) {
  if (n < 1) throw Error(Errc::precondition, "hbar needs n >= 1");
  Poly out(n);
  for (int i = 1; i <= n; ++i) out += Poly::h(n, i);
  return out;
}

std::string UWord::str() const {
  std::string body;
  for (const auto& x : letters) {
    if (!body.empty()) body += "*";
    body += x.str();
  }
  if (body.empty()) return coeff.get_str();
  if (coeff == 1) return body;
  if (coeff == -1) return "-" + body;
  return coeff.get_str() + "*" + body;
}

UExpression UExpression::word(std::vector<BasisElement> letters, const Rational& c) {
  UExpression out;
  out.words.push_back(UWord{c, std::move(letters)});
  return out;
}

UExpression& UExpression::operator+=(const UExpression& other) {
  words.insert(words.end(), other.words.begin(), other.words.end());
  return *this;
}

UExpression& UExpression::operator-=(const UExpression& other) {
  for (const auto& w : other.words) words.push_back(UWord{-w.coeff, w.letters});
  return *this;
}

UExpression operator*(const UExpression& lhs, const UExpression& rhs) {
  UExpression out;
  for (const auto& a : lhs.words) {
    for (const auto& b : rhs.words) {
      UWord w{a.coeff * b.coeff, a.letters};
      w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
      out.words.push_back(std::move(w));
    }
  }
  return out;
}

UExpression operator*(const Rational& c, UExpression u) {
  for (auto& w : u.words) w.coeff *= c;
  return u;
}

std::string UExpression::str() const {
  if (words.empty()) return "0";
  std::string out;
  for (const auto& w : words) {
    std::string piece = w.str();
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

UExpression casimir_sl2(int n) {
  if (n != 1) throw Error(Errc::precondition, "the sl2 Casimir element needs n = 1");
  const auto h = BasisElement::h(1);
  const auto e12 = BasisElement::e(1, 2);
  const auto e21 = BasisElement::e(2, 1);
  return UExpression::word({h, h}, 2) + UExpression::word({e12, e21}) + UExpression::word({e21, e12});
}

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := RATIONAL | 'e' '(' INT ',' INT ')' | 'h' '(' INT ')'
class WordParser {
 public:
  WordParser(std::string_view text, int n) : text_(text), n_(n) {}

  UExpression expression() {
    UExpression out;
    Rational sign = accept('-') ? -1 : 1;
    if (sign == 1) accept('+');
    for (;;) {
      UWord w = term();
      w.coeff *= sign;
      out.words.push_back(std::move(w));
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        break;
      }
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

  BasisElement single() {
    BasisElement x = letter();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after basis element");
    return x;
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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an index");
    if (pos_ - start > 6) throw ParseError(start, "index too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  BasisElement letter() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('e')) {
      expect('(');
      const int i = integer();
      expect(',');
      const int j = integer();
      expect(')');
      const auto x = BasisElement::e(i, j);
      check(x, at);
      return x;
    }
    if (accept('h')) {
      expect('(');
      const int k = integer();
      expect(')');
      const auto x = BasisElement::h(k);
      check(x, at);
      return x;
    }
    fail("expected e(i,j) or h(k)");
  }

  void check(const BasisElement& x, std::size_t at) const {
    try {
      validate(x, n_);
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }

  UWord term() {
    UWord w;
    do {
      skip_ws();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
          ++pos_;
        }
        try {
          w.coeff *= parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
          throw ParseError(start, e.what());
        }
      } else {
        w.letters.push_back(letter());
      }
    } while (accept('*'));
    return w;
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

BasisElement parse_basis_element(std::string_view text, int n) { return WordParser(text, n).single(); }

UExpression parse_uexpression(std::string_view text, int n) { return WordParser(text, n).expression(); }

}  // namespace hfree
