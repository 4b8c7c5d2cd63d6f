#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hfree/error.hpp"
#include "hfree/liealg.hpp"

using namespace hfree;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Defining (n+1)-dimensional matrix of a basis element.
Matrix matrix_of(const BasisElement& x, int n) {
  const int d = n + 1;
  Matrix m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
  if (x.is_e()) {
    m[static_cast<std::size_t>(x.row - 1)][static_cast<std::size_t>(x.col - 1)] = 1;
  } else {
    for (int t = 0; t < d; ++t) m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] = Rational(-1, d);
    m[static_cast<std::size_t>(x.row - 1)][static_cast<std::size_t>(x.row - 1)] += 1;
  }
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix out(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return out;
}

// Reads a traceless matrix back in the basis: off-diagonal entries are e(i,j)
// coefficients and the h_k coefficient is m[k][k] - m[n+1][n+1].
AlgebraVector from_matrix(const Matrix& m, int n) {
  AlgebraVector out;
  const std::size_t d = m.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) out.add(BasisElement::e(static_cast<int>(i) + 1, static_cast<int>(j) + 1), m[i][j]);
  for (int k = 1; k <= n; ++k) {
    out.add(BasisElement::h(k), m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k - 1)] - m[d - 1][d - 1]);
  }
  return out;
}

}  // namespace

TEST_CASE("bracket examples") {
  const auto b12 = bracket(BasisElement::e(1, 2), BasisElement::e(2, 1), 1);
  CHECK(b12 == AlgebraVector(BasisElement::h(1), 2));
  CHECK(bracket(BasisElement::h(1), BasisElement::h(2), 2).is_zero());
  CHECK(bracket(BasisElement::e(1, 3), BasisElement::e(3, 2), 2) == AlgebraVector(BasisElement::e(1, 2)));
  // [e(i,n+1), e(n+1,i)] = h_i + hbar
  const auto d = bracket(BasisElement::e(1, 3), BasisElement::e(3, 1), 2);
  AlgebraVector expected;
  expected.add(BasisElement::h(1), 2);
  expected.add(BasisElement::h(2), 1);
  CHECK(d == expected);
}

TEST_CASE("bracket agrees with matrix commutators for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& x : basis(n)) {
      for (const auto& y : basis(n)) {
        const auto oracle = from_matrix(commutator(matrix_of(x, n), matrix_of(y, n)), n);
        CHECK_MESSAGE(bracket(x, y, n) == oracle, x.str() << " " << y.str());
      }
    }
  }
}

TEST_CASE("antisymmetry and Jacobi") {
  for (int n = 1; n <= 3; ++n) {
    const auto B = basis(n);
    for (const auto& x : B)
      for (const auto& y : B) CHECK(bracket(x, y, n) == -bracket(y, x, n));
    for (const auto& x : B) {
      for (const auto& y : B) {
        for (const auto& z : B) {
          const AlgebraVector X(x), Y(y), Z(z);
          const auto jac = bracket(X, bracket(Y, Z, n), n) + bracket(Y, bracket(Z, X, n), n) +
                           bracket(Z, bracket(X, Y, n), n);
          CHECK(jac.is_zero());
        }
      }
    }
  }
}

TEST_CASE("h_k weights on e(i,n+1)") {
  for (int n = 1; n <= 3; ++n) {
    AlgebraVector hsum;
    for (int k = 1; k <= n; ++k) hsum.add(BasisElement::h(k), 1);
    for (int i = 1; i <= n; ++i) {
      const auto e = BasisElement::e(i, n + 1);
      for (int k = 1; k <= n; ++k) {
        CHECK(bracket(BasisElement::h(k), e, n) == AlgebraVector(e, k == i ? 1 : 0));
      }
      CHECK(bracket(hsum, AlgebraVector(e), n) == AlgebraVector(e));
    }
  }
}

TEST_CASE("hbar") {
  CHECK(hbar(1) == Poly::h(1, 1));
  CHECK(hbar(3) == parse_poly("h1+h2+h3", 3));
  CHECK_THROWS_AS(hbar(0), Error);
}

TEST_CASE("Casimir element") {
  const auto c = casimir_sl2(1);
  CHECK(c.words.size() == 3);
  CHECK(c.str() == "2*h(1)*h(1) + e(1,2)*e(2,1) + e(2,1)*e(1,2)");
  CHECK_THROWS_AS(casimir_sl2(2), Error);
}

TEST_CASE("text syntax") {
  CHECK(parse_basis_element("e(2,4)", 3) == BasisElement::e(2, 4));
  CHECK(parse_basis_element(" h(3) ", 3) == BasisElement::h(3));
  CHECK_THROWS_AS(parse_basis_element("e(2,2)", 3), ParseError);
  CHECK_THROWS_AS(parse_basis_element("h(4)", 3), ParseError);
  const auto u = parse_uexpression("2*h(1)*h(1) + e(1,2)*e(2,1) - 1/2*e(2,1)", 1);
  REQUIRE(u.words.size() == 3);
  CHECK(u.words[0].coeff == 2);
  CHECK(u.words[2].coeff == Rational(-1, 2));
  CHECK(u.words[2].letters == std::vector<BasisElement>{BasisElement::e(2, 1)});
  const auto one = parse_uexpression("3", 1);
  REQUIRE(one.words.size() == 1);
  CHECK(one.words[0].letters.empty());
  try {
    parse_uexpression("e(1,2) + q", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
}
