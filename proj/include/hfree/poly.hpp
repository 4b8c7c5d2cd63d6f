#pragma once

// Exact sparse polynomials over Q in the parameter b and the Cartan
// generators h1..hn, together with the shift automorphisms sigma_i, the
// involution tau, the h_i-gradings and the sigma-difference solver.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hfree/rational.hpp"

namespace hfree {

/// A ring variable: the scalar parameter b, or h_i with 1 <= i <= n.
struct VarId {
  enum class Kind { Param, H };
  Kind kind = Kind::Param;
  int index = 0;

  static constexpr VarId param() { return {Kind::Param, 0}; }
  static constexpr VarId h(int i) { return {Kind::H, i}; }

  /// Position in an exponent tuple: b is slot 0, h_i is slot i.
  constexpr int slot() const { return kind == Kind::Param ? 0 : index; }

  friend constexpr bool operator==(const VarId&, const VarId&) = default;
};

/// Exponent tuple (e_b, e_1, ..., e_n).
using Exponents = std::vector<int>;

/// Graded-lexicographic order with b < h1 < ... < hn.
struct GrlexLess {
  bool operator()(const Exponents& lhs, const Exponents& rhs) const;
};

/// Steps (v_1..v_n) of the composite shift sigma_1^{v_1} ... sigma_n^{v_n}.
class ShiftVector {
 public:
  ShiftVector() = default;
  explicit ShiftVector(int rank) : steps_(static_cast<std::size_t>(rank), 0) {}
  explicit ShiftVector(std::vector<int> steps) : steps_(std::move(steps)) {}

  /// s * e_i.
  static ShiftVector unit(int rank, int i, int s = 1);

  int rank() const { return static_cast<int>(steps_.size()); }
  /// 1-based.
  int step(int i) const { return steps_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& steps() const { return steps_; }
  bool is_zero() const;

  ShiftVector operator+(const ShiftVector& other) const;
  ShiftVector operator-() const;

  std::string str() const;

  friend auto operator<=>(const ShiftVector&, const ShiftVector&) = default;
  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;

 private:
  std::vector<int> steps_;
};

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  /// Zero polynomial of rank 0. Prefer Poly(rank).
  Poly() = default;
  explicit Poly(int rank) : rank_(rank) {}

  static Poly constant(int rank, const Rational& c);
  static Poly var(int rank, VarId v);
  static Poly h(int rank, int i) { return var(rank, VarId::h(i)); }
  static Poly param(int rank) { return var(rank, VarId::param()); }
  /// c * b^{e_0} h1^{e_1} ... ; zero coefficients are dropped.
  static Poly monomial(int rank, Exponents exps, const Rational& c = 1);

  int rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// True when no variable (b included) occurs.
  bool is_constant() const;
  /// Value of a constant polynomial, nullopt otherwise.
  std::optional<Rational> constant_value() const;
  /// True when no h_i occurs (b may occur).
  bool is_h_free() const;
  bool depends_on(VarId v) const;

  int total_degree() const;  // -1 for zero
  int degree_in(VarId v) const;  // -1 for zero

  /// Coefficient of the monomial with exactly these exponents.
  Rational coefficient(const Exponents& exps) const;
  /// Coefficient of v^k as a polynomial free of v.
  Poly coefficient_of(VarId v, int k) const;
  /// Homogeneous component of the given total degree.
  Poly homogeneous_part(int degree) const;
  /// Leading term in grlex order. Requires nonzero.
  std::pair<Exponents, Rational> leading_term() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
  friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }

  Poly pow(unsigned exponent) const;

  /// Same polynomial viewed in another rank. Throws if a dropped h_i occurs.
  Poly with_rank(int rank) const;

  /// Canonical serialization: terms in descending grlex order.
  std::string str() const;

  friend bool operator==(const Poly& lhs, const Poly& rhs) {
    return lhs.rank_ == rhs.rank_ && lhs.terms_ == rhs.terms_;
  }

  /// Adds c * monomial, removing the entry if it cancels.
  void add_term(const Exponents& exps, const Rational& c);

 private:
  void check_rank(const Poly& other) const;

  int rank_ = 0;
  TermMap terms_;
};

/// Total order on polynomials (descending-term lexicographic); used for canonical sorting.
bool poly_less(const Poly& lhs, const Poly& rhs);

std::ostream& operator<<(std::ostream& os, const Poly& f);

// ---------------------------------------------------------------------------
// Ring automorphisms and gradings.

/// sigma_i^{steps}(f): substitutes h_i -> h_i - steps. b is fixed.
Poly shift(const Poly& f, int i, int steps);
/// sigma^v(f) for a composite shift.
Poly shift(const Poly& f, const ShiftVector& v);
/// Substitutes h_i -> h_i + offset for a rational offset (half-shifts included).
Poly substitute_affine(const Poly& f, int i, const Rational& offset);
/// tau(f)(h) = f(-h); b is fixed.
Poly tau(const Poly& f);
/// Substitutes a rational value for the parameter b.
Poly evaluate_param(const Poly& f, const Rational& value);
/// Replaces b by an arbitrary polynomial g (g may itself involve b and the h's).
Poly substitute_param(const Poly& f, const Poly& g);

/// Degree in h_i alone; -1 for the zero polynomial.
int deg(const Poly& f, int i);
/// Leading coefficient with respect to deg_i: an element of P_i. Throws on zero input.
Poly leading_coeff(const Poly& f, int i);

/// q with f = q * g if it exists. Throws on g = 0.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

/// Result of splitting into affine-linear factors.
struct AffineFactorization {
  Rational constant;
  /// Factors with leading coefficient 1 in their highest variable, sorted in descending canonical order.
  std::vector<std::pair<Poly, int>> factors;

  Poly expand(int rank) const;
};

/// Splits f into a constant times affine-linear forms. nullopt means
/// not-affine-factorable within the candidate set; throws on zero input.
///
/// Candidate linear parts have coefficient 1 on their highest variable and
/// coefficients in {-1, 0, 1} elsewhere, which covers every p_i and q_i that
/// can occur for a module of the family studied here.
std::optional<AffineFactorization> factor_affine(const Poly& f);

/// The particular solution of sigma_i(f) - f = g whose expansion in powers of
/// h_i has zero h_i^0 coefficient (unique with that pinning).
Poly solve_shift_equation(int i, const Poly& g);

// ---------------------------------------------------------------------------
// Text form.

/// Parses the polynomial grammar: identifiers b, h1..hN; integer and p/q
/// literals; + - * ^ and parentheses. Throws ParseError with a position.
Poly parse_poly(std::string_view text, int rank);

}  // namespace hfree
