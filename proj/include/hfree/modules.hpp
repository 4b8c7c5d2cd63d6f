#pragma once

// Rank-one U(h)-free modules given by a (p, q) tuple, their action as shift
// operators, the twisting functors and the exact bracket verifier.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hfree/liealg.hpp"
#include "hfree/poly.hpp"

namespace hfree {

/// A finite sum of f_v * sigma^v, acting by g -> sum f_v * sigma^v(g).
class ShiftOperator {
 public:
  using TermMap = std::map<ShiftVector, Poly>;

  explicit ShiftOperator(int rank = 0) : rank_(rank) {}

  static ShiftOperator identity(int rank);
  static ShiftOperator multiplication(const Poly& f);
  static ShiftOperator term(const Poly& f, const ShiftVector& v);

  int rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient at shift v (zero polynomial when absent).
  Poly coefficient(const ShiftVector& v) const;

  void add_term(const ShiftVector& v, const Poly& f);

  ShiftOperator& operator+=(const ShiftOperator& other);
  ShiftOperator& operator-=(const ShiftOperator& other);
  ShiftOperator operator-() const;
  friend ShiftOperator operator+(ShiftOperator lhs, const ShiftOperator& rhs) { return lhs += rhs; }
  friend ShiftOperator operator-(ShiftOperator lhs, const ShiftOperator& rhs) { return lhs -= rhs; }
  /// Left multiplication of every coefficient.
  friend ShiftOperator operator*(const Poly& f, const ShiftOperator& op);
  friend ShiftOperator operator*(const Rational& c, const ShiftOperator& op);

  Poly apply(const Poly& g) const;

  /// "(f)*s[v1,...,vn] + ...", terms in ascending shift order.
  std::string str() const;

  friend bool operator==(const ShiftOperator& lhs, const ShiftOperator& rhs) {
    return lhs.rank_ == rhs.rank_ && lhs.terms_ == rhs.terms_;
  }

 private:
  int rank_;
  TermMap terms_;
};

/// (A o B)(f) = A(B(f)).
ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b);

struct ModuleSpec {
  int n = 1;
  std::vector<Poly> p;  // p_i = e(i,n+1) . 1
  std::vector<Poly> q;  // q_j = e(n+1,j) . 1

  /// Throws bad_spec on wrong lengths, wrong ranks or zero entries.
  void validate() const;

  std::string str() const;

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

/// Scalar b: a rational value, or nullopt for the symbolic parameter.
using ParamValue = std::optional<Rational>;

/// b as a polynomial of rank n.
Poly param_poly(const ParamValue& b, int n);
std::string to_string(const ParamValue& b);

/// Sorted subset of {1..n}.
using IndexSet = std::set<int>;
std::string to_string(const IndexSet& s);

ShiftOperator action_operator(const ModuleSpec& m, const BasisElement& x);
ShiftOperator action_operator(const ModuleSpec& m, const AlgebraVector& x);
ShiftOperator action_operator(const ModuleSpec& m, const UExpression& u);

/// u . f with each word applied right to left.
Poly act(const ModuleSpec& m, const UExpression& u, const Poly& f);
Poly act(const ModuleSpec& m, const BasisElement& x, const Poly& f);

ModuleSpec make_MbS(int n, const IndexSet& S, const ParamValue& b = std::nullopt);
/// Same, with b any h-free polynomial of rank n.
ModuleSpec make_MbS(int n, const IndexSet& S, const Poly& b);

enum class Sl2Kind { M, Mprime };
const char* to_string(Sl2Kind kind);

/// M: (h+b, -(h-b)); Mprime: (1, -(h+b+1)(h-b)).
ModuleSpec make_sl2(Sl2Kind kind, const ParamValue& b = std::nullopt);

/// Substitutes a rational value for b in every entry.
ModuleSpec evaluate_param(const ModuleSpec& m, const Rational& b);

/// Scaling data a = (a_1, ..., a_{n+1}), all entries nonzero.
struct TwistData {
  std::vector<Rational> a;

  static TwistData identity(int n);
  int n() const { return static_cast<int>(a.size()) - 1; }
  /// Throws precondition on a zero entry or fewer than two entries.
  void validate() const;
  /// Representative with a_{n+1} = 1.
  TwistData canonical() const;
  TwistData inverse() const;
  /// Componentwise product.
  TwistData operator*(const TwistData& other) const;
  std::string str() const;

  friend bool operator==(const TwistData&, const TwistData&) = default;
};

/// p_i -> (a_i/a_{n+1}) p_i and q_j -> (a_{n+1}/a_j) q_j.
ModuleSpec twist_Fa(const ModuleSpec& m, const TwistData& a);
/// p_i -> -tau(q_i) and q_i -> -tau(p_i).
ModuleSpec twist_tau(const ModuleSpec& m);

struct Violation {
  BasisElement x;
  BasisElement y;
  /// [A_x, A_y] - A_{[x,y]}; nonzero.
  ShiftOperator difference;
};

struct Verdict {
  std::optional<Violation> violation;
  bool valid() const { return !violation.has_value(); }
};

/// Checks [A_x, A_y] = A_{[x,y]} for every ordered pair of distinct basis
/// elements other than two h's, reporting the first failure in canonical order.
Verdict verify_module(const ModuleSpec& m);
/// Every failing ordered pair, in canonical order.
std::vector<Violation> all_violations(const ModuleSpec& m);

/// Spec file text: {"n": 2, "p": ["..."], "q": ["..."]}. Throws ParseError or bad_spec.
ModuleSpec parse_spec_json(std::string_view text);
std::string spec_to_json(const ModuleSpec& m);

}  // namespace hfree
