#pragma once

// Shared helpers for the unit tests: seeded random polynomials and a
// point-evaluation oracle that does not go through the library's algebra.

#include <random>
#include <vector>

#include "hfree/classify.hpp"
#include "hfree/poly.hpp"

namespace hfree::testing {

/// Random polynomial with small rational coefficients and total degree <= max_degree.
inline Poly random_poly(std::mt19937& rng, int rank, int max_degree, bool with_param = true) {
  std::uniform_int_distribution<int> term_count(0, 5);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> slot(with_param ? 0 : 1, rank);
  std::uniform_int_distribution<int> degree(0, max_degree);
  Poly out(rank);
  const int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    Exponents e(static_cast<std::size_t>(rank) + 1, 0);
    const int d = degree(rng);
    for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(slot(rng))];
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out.add_term(e, c);
  }
  return out;
}

/// f evaluated at point = (b, h1, ..., hn), computed term by term.
inline Rational eval_at(const Poly& f, const std::vector<Rational>& point) {
  Rational acc = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (int j = 0; j < e[k]; ++j) term *= point[k];
    }
    acc += term;
  }
  return acc;
}

inline Rational random_nonzero(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 4);
  int p = 0;
  while (p == 0) p = num(rng);
  Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

/// Random (a, b, S, tau) with a_{n+1} = 1.
inline NormalForm random_normal_form(std::mt19937& rng, int n, bool symbolic) {
  NormalForm nf;
  nf.a = TwistData::identity(n);
  for (int i = 0; i < n; ++i) nf.a.a[static_cast<std::size_t>(i)] = random_nonzero(rng);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> bnum(-12, 12);
  std::uniform_int_distribution<int> bden(1, 6);
  if (symbolic) {
    nf.b = Poly::param(n);
  } else {
    Rational b(bnum(rng), bden(rng));
    b.canonicalize();
    nf.b = Poly::constant(n, b);
  }
  for (int i = 1; i <= n; ++i)
    if (coin(rng)) nf.S.insert(i);
  nf.tau = coin(rng) == 1;
  return nf;
}

/// The label the classifier should return for nf. For n = 1 two tuple-level
/// coincidences apply: tau(M_b) = F_{(-1,1)}(M_b), and M'_b = M'_{-b-1}, where
/// the label with b >= -1/2 is kept.
inline NormalForm expected_label(NormalForm nf) {
  if (nf.n() != 1) return nf;
  if (!nf.S.empty() && nf.tau) {
    nf.a.a[0] = -nf.a.a[0];
    nf.tau = false;
  }
  if (nf.S.empty()) {
    if (const auto v = nf.b.constant_value(); v && *v * 2 < -1) nf.b = Poly::constant(1, -*v - 1);
  }
  return nf;
}

}  // namespace hfree::testing
