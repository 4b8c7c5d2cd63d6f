#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hfree/error.hpp"
#include "hfree/modules.hpp"
#include "support.hpp"

using namespace hfree;
using hfree::testing::random_poly;

namespace {

Poly P(const char* text, int rank = 1) { return parse_poly(text, rank); }

std::vector<IndexSet> all_subsets(int n) {
  std::vector<IndexSet> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    IndexSet s;
    for (int i = 1; i <= n; ++i)
      if ((mask >> (i - 1)) & 1) s.insert(i);
    out.push_back(s);
  }
  return out;
}

ShiftOperator random_operator(std::mt19937& rng, int rank) {
  std::uniform_int_distribution<int> step(-2, 2);
  ShiftOperator op(rank);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> v(static_cast<std::size_t>(rank));
    for (auto& s : v) s = step(rng);
    op.add_term(ShiftVector(v), random_poly(rng, rank, 2));
  }
  return op;
}

}  // namespace

TEST_CASE("operator composition") {
  const int n = 1;
  const auto s = ShiftOperator::term(P("1"), ShiftVector::unit(n, 1, 1));
  const auto sinv = ShiftOperator::term(P("1"), ShiftVector::unit(n, 1, -1));
  CHECK(compose(s, sinv) == ShiftOperator::identity(n));
  const auto hs = ShiftOperator::term(P("h1"), ShiftVector::unit(n, 1, 1));
  CHECK(compose(hs, s) == ShiftOperator::term(P("h1"), ShiftVector::unit(n, 1, 2)));

  std::mt19937 rng(41);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_operator(rng, 2);
    const auto b = random_operator(rng, 2);
    const Poly f = random_poly(rng, 2, 3);
    CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
  }
  CHECK_THROWS_AS(compose(ShiftOperator(1), ShiftOperator(2)), Error);
}

TEST_CASE("action table") {
  const auto mb = make_sl2(Sl2Kind::M);
  CHECK(action_operator(mb, BasisElement::e(1, 2)) ==
        ShiftOperator::term(P("h1+b"), ShiftVector::unit(1, 1, 1)));
  const auto m2 = make_MbS(2, {1});
  CHECK(action_operator(m2, BasisElement::h(2)) == ShiftOperator::multiplication(P("h2", 2)));
  const auto empty = make_MbS(2, {});
  CHECK(action_operator(empty, BasisElement::e(1, 2)) ==
        ShiftOperator::term(P("h1-b-1", 2), ShiftVector({1, -1})));
}

TEST_CASE("e(i,j) agrees with the case-by-case table for every S") {
  for (int n = 2; n <= 3; ++n) {
    for (const auto& S : all_subsets(n)) {
      const auto m = make_MbS(n, S);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          const bool in_i = S.count(i) != 0, in_j = S.count(j) != 0;
          const Poly left = in_i ? Poly::constant(n, 1) : Poly::h(n, i) - Poly::param(n) - Poly::constant(n, 1);
          const Poly right = in_j ? Poly::h(n, j) - Poly::param(n) : Poly::constant(n, 1);
          const auto expected =
              ShiftOperator::term(left * right, ShiftVector::unit(n, i, 1) + ShiftVector::unit(n, j, -1));
          CHECK(action_operator(m, BasisElement::e(i, j)) == expected);
        }
      }
    }
  }
  // the special case written out for S empty: e(i,j) . f = (h_i - b - 1) f(.., h_i - 1, .., h_j + 1, ..)
  const auto m = make_MbS(3, {});
  CHECK(action_operator(m, BasisElement::e(3, 1)) ==
        ShiftOperator::term(P("h3-b-1", 3), ShiftVector({-1, 0, 1})));
}

TEST_CASE("act on words") {
  const auto mb = make_sl2(Sl2Kind::M);
  CHECK(act(mb, UExpression::word({BasisElement::e(1, 2)}), P("1")) == P("h1+b"));
  const Poly f = P("h1^3 - 2*b*h1 + 5");
  CHECK(act(mb, UExpression::identity(), f) == f);
  const auto e12 = BasisElement::e(1, 2), e21 = BasisElement::e(2, 1);
  const auto comm = UExpression::word({e12, e21}) - UExpression::word({e21, e12});
  CHECK(act(mb, comm, f) == P("2*h1") * f);
  CHECK(action_operator(mb, comm).apply(f) == act(mb, comm, f));
}

TEST_CASE("constructors") {
  const auto m = make_MbS(2, {1, 2});
  CHECK(m.p[0] == P("h1+h2+b", 2));
  CHECK(m.p[1] == P("h1+h2+b", 2));
  CHECK(m.q[0] == P("-h1+b", 2));
  CHECK(m.q[1] == P("-h2+b", 2));
  const auto e = make_MbS(2, {});
  CHECK(e.p[0] == P("(h1+h2+b)*(h1-b-1)", 2));
  CHECK(e.q[1] == P("-1", 2));
  CHECK(make_MbS(1, {1}) == make_sl2(Sl2Kind::M));
  const auto m0 = make_sl2(Sl2Kind::M, Rational(0));
  CHECK(m0.p[0] == P("h1"));
  CHECK(m0.q[0] == P("-h1"));
  CHECK(make_sl2(Sl2Kind::Mprime).q[0] == P("-(h1+b+1)*(h1-b)"));
  CHECK(make_MbS(2, {1}, Rational(1, 3)) == evaluate_param(make_MbS(2, {1}), Rational(1, 3)));
  CHECK_THROWS_AS(make_MbS(2, {3}), Error);
}

TEST_CASE("twists") {
  const auto mb = make_sl2(Sl2Kind::M);
  CHECK(twist_Fa(mb, TwistData::identity(1)) == mb);
  const auto t = twist_Fa(mb, TwistData{{Rational(3), Rational(1)}});
  CHECK(t.p[0] == P("3*h1+3*b"));
  CHECK(t.q[0] == P("-1/3*h1+1/3*b"));
  const TwistData a{{Rational(2), Rational(-5, 3), Rational(7)}};
  const auto m = make_MbS(2, {2});
  CHECK(twist_Fa(twist_Fa(m, a), a.inverse()) == m);
  CHECK(twist_Fa(m, a) == twist_Fa(m, a.canonical()));
  CHECK(a.canonical().a.back() == 1);
  CHECK_THROWS_AS(twist_Fa(m, TwistData{{Rational(0), Rational(1), Rational(1)}}), Error);

  const auto tt = twist_tau(mb);
  CHECK(tt.p[0] == P("-h1-b"));
  CHECK(tt.q[0] == P("h1-b"));
  CHECK(twist_tau(tt) == mb);
  CHECK(verify_module(tt).valid());
  CHECK(twist_tau(make_MbS(1, {})) == make_sl2(Sl2Kind::Mprime));
}

TEST_CASE("verify_module on the normal forms") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& S : all_subsets(n)) {
      const auto m = make_MbS(n, S);
      CHECK_MESSAGE(verify_module(m).valid(), "n=" << n << " S=" << to_string(S));
      CHECK(verify_module(twist_tau(m)).valid());
    }
  }
  CHECK(verify_module(make_sl2(Sl2Kind::Mprime)).valid());
}

TEST_CASE("verify_module agrees with a polynomial-action oracle") {
  // x.(y.f) - y.(x.f) - [x,y].f on sample polynomials, without operator composition
  std::mt19937 rng(8);
  auto broken = make_MbS(2, {}, Rational(1));
  broken.p[0] = Poly::constant(2, 1);
  const auto verdict = verify_module(broken);
  REQUIRE_FALSE(verdict.valid());
  const auto& v = *verdict.violation;
  bool witnessed = false;
  for (int t = 0; t < 10 && !witnessed; ++t) {
    const Poly f = random_poly(rng, 2, 3, false) + Poly::constant(2, 1);
    Poly lhs = act(broken, v.x, act(broken, v.y, f)) - act(broken, v.y, act(broken, v.x, f));
    const auto br = bracket(v.x, v.y, 2);
    lhs -= action_operator(broken, br).apply(f);
    witnessed = !lhs.is_zero();
    CHECK(lhs == v.difference.apply(f));
  }
  CHECK(witnessed);

  const auto good = make_MbS(2, {1}, Rational(2, 7));
  for (const auto& x : basis(2)) {
    for (const auto& y : basis(2)) {
      const Poly f = random_poly(rng, 2, 3, false);
      const Poly lhs = act(good, x, act(good, y, f)) - act(good, y, act(good, x, f));
      CHECK(lhs == action_operator(good, bracket(x, y, 2)).apply(f));
    }
  }
}

TEST_CASE("pairwise-sharing triple is rejected") {
  const Poly alpha = P("h1+h2-1/2", 3), beta = P("h1+h3-1/2", 3), gamma = P("h2+h3-1/2", 3);
  const Poly minus_one = Poly::constant(3, -1);
  const ModuleSpec m{3, {alpha * beta, alpha * gamma, beta * gamma}, {minus_one, minus_one, minus_one}};
  CHECK_FALSE(verify_module(m).valid());
  bool found = false;
  for (const auto& v : all_violations(m)) found = found || (v.x == BasisElement::e(2, 4) && v.y == BasisElement::e(1, 3));
  CHECK(found);
  const auto e24 = BasisElement::e(2, 4), e13 = BasisElement::e(1, 3);
  const Poly one = Poly::constant(3, 1);
  CHECK_FALSE((act(m, e24, act(m, e13, one)) - act(m, e13, act(m, e24, one))).is_zero());
}

TEST_CASE("spec file round trip") {
  const auto m = make_MbS(2, {1});
  CHECK(parse_spec_json(spec_to_json(m)) == m);
  CHECK_THROWS_AS(parse_spec_json("{\"n\": 2, \"p\": [\"h1\"], \"q\": [\"1\", \"1\"]}"), Error);
  CHECK_THROWS_AS(parse_spec_json("{\"n\": 1, \"p\": [\"h1 +\"], \"q\": [\"1\"]}"), ParseError);
  CHECK_THROWS_AS(parse_spec_json("{\"n\": 1, "), ParseError);
  CHECK_THROWS_AS(parse_spec_json("{\"n\": 1, \"p\": [\"0\"], \"q\": [\"1\"]}"), Error);
}
