#pragma once

// sl_{n+1} in the basis {e(i,j) : i != j} together with h1..hn, where
// h_k = e(k,k) - (1/(n+1)) * identity. Enveloping-algebra elements are kept
// as unreduced lists of words.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hfree/poly.hpp"
#include "hfree/rational.hpp"

namespace hfree {

struct BasisElement {
  enum class Kind { E, H };
  Kind kind = Kind::H;
  int row = 1;  // e: row index; h: the index k
  int col = 0;  // e: column index; h: unused (0)

  static BasisElement e(int i, int j) { return {Kind::E, i, j}; }
  static BasisElement h(int k) { return {Kind::H, k, 0}; }

  bool is_e() const { return kind == Kind::E; }
  bool is_h() const { return kind == Kind::H; }

  /// "e(i,j)" or "h(k)".
  std::string str() const;

  /// Canonical order: every e before every h; e by (row, col), h by index.
  friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Throws index_out_of_range unless x is a basis element of sl_{n+1}.
void validate(const BasisElement& x, int n);

/// All basis elements of sl_{n+1} in canonical order.
std::vector<BasisElement> basis(int n);

class AlgebraVector {
 public:
  using TermMap = std::map<BasisElement, Rational>;

  AlgebraVector() = default;
  explicit AlgebraVector(const BasisElement& x, const Rational& c = 1) { add(x, c); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const BasisElement& x) const;

  void add(const BasisElement& x, const Rational& c);

  AlgebraVector& operator+=(const AlgebraVector& other);
  AlgebraVector& operator-=(const AlgebraVector& other);
  AlgebraVector& operator*=(const Rational& c);
  AlgebraVector operator-() const;
  friend AlgebraVector operator+(AlgebraVector lhs, const AlgebraVector& rhs) { return lhs += rhs; }
  friend AlgebraVector operator-(AlgebraVector lhs, const AlgebraVector& rhs) { return lhs -= rhs; }
  friend AlgebraVector operator*(const Rational& c, AlgebraVector v) { return v *= c; }

  std::string str() const;

  friend bool operator==(const AlgebraVector&, const AlgebraVector&) = default;

 private:
  TermMap terms_;
};

/// The diagonal matrix e(i,i) - e(j,j) written in h1..hn (1 <= i, j <= n+1).
AlgebraVector diagonal_difference(int i, int j, int n);

/// Lie bracket of two basis elements of sl_{n+1}.
AlgebraVector bracket(const BasisElement& x, const BasisElement& y, int n);
/// Bilinear extension.
AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y, int n);

/// h1 + ... + hn as a polynomial of rank n.
Poly hbar(int n);

/// A coefficient times an ordered product of basis elements; the empty product is 1.
struct UWord {
  Rational coeff = 1;
  std::vector<BasisElement> letters;

  std::string str() const;
  friend bool operator==(const UWord&, const UWord&) = default;
};

/// A finite sum of words, kept without any normal ordering.
struct UExpression {
  std::vector<UWord> words;

  static UExpression word(std::vector<BasisElement> letters, const Rational& c = 1);
  static UExpression identity() { return word({}); }

  UExpression& operator+=(const UExpression& other);
  UExpression& operator-=(const UExpression& other);
  friend UExpression operator+(UExpression lhs, const UExpression& rhs) { return lhs += rhs; }
  friend UExpression operator-(UExpression lhs, const UExpression& rhs) { return lhs -= rhs; }
  /// Concatenation of words (product in the enveloping algebra).
  friend UExpression operator*(const UExpression& lhs, const UExpression& rhs);
  friend UExpression operator*(const Rational& c, UExpression u);

  std::string str() const;
};

/// 2h^2 + e(1,2)e(2,1) + e(2,1)e(1,2). Throws precondition unless n == 1.
UExpression casimir_sl2(int n = 1);

/// Parses a basis element "e(i,j)" or "h(k)" and validates it against rank n.
BasisElement parse_basis_element(std::string_view text, int n);

/// Parses sums of products such as "2*h(1)*h(1) + e(1,2)*e(2,1) - 1/2*e(2,1)".
/// A bare rational is a multiple of the empty word.
UExpression parse_uexpression(std::string_view text, int n);

}  // namespace hfree
