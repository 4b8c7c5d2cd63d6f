#include <algorithm>
#include <functional>
#include <map>

#include "hfree/error.hpp"
#include "hfree/poly.hpp"

namespace hfree {

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000;

// Prime factorization by trial division; a leftover cofactor that passes the
// probable-prime test is kept as a prime. nullopt if the cofactor is composite.
std::optional<std::vector<std::pair<mpz_class, int>>> factor_integer(mpz_class n) {
  std::vector<std::pair<mpz_class, int>> out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; p <= kTrialDivisionLimit && n > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_class(p) * p > n) break;
    int mult = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      ++mult;
    }
    if (mult > 0) out.emplace_back(mpz_class(p), mult);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return std::nullopt;
    out.emplace_back(n, 1);
  }
  return out;
}

std::optional<std::vector<mpz_class>> divisors(const mpz_class& n) {
  auto fac = factor_integer(n);
  if (!fac) return std::nullopt;
  std::vector<mpz_class> divs{mpz_class(1)};
  for (const auto& [p, mult] : *fac) {
    const std::size_t existing = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= mult; ++k) {
      pk *= p;
      for (std::size_t j = 0; j < existing; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& t) {
  Rational acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
  return acc;
}

// Rational roots of sum coeffs[k] t^k (distinct values).
std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  if (coeffs.size() <= 1) return roots;
  if (coeffs.front() == 0) {
    roots.emplace_back(0);
    std::size_t shift = 0;
    while (coeffs[shift] == 0) ++shift;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(shift));
    if (coeffs.size() <= 1) return roots;
  }
  mpz_class lcm = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  const mpz_class a0 = mpz_class(coeffs.front() * lcm);
  const mpz_class am = mpz_class(coeffs.back() * lcm);
  const auto num_divs = divisors(a0);
  const auto den_divs = divisors(am);
  if (!num_divs || !den_divs) return roots;
  for (const auto& p : *num_divs) {
    for (const auto& q : *den_divs) {
      for (int sign : {1, -1}) {
        Rational cand(sign * p, q);
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (horner(coeffs, cand) == 0) roots.push_back(cand);
      }
    }
  }
  return roots;
}

// Coefficients in t of f restricted to: slot x -> t, other slots -> point[slot].
std::vector<Rational> restrict_to_line(const Poly& f, std::size_t x, const std::vector<Rational>& point) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(f.degree_in(x == 0 ? VarId::param()
                                                                                   : VarId::h(static_cast<int>(x))),
                                                                  0)) + 1,
                               Rational(0));
  for (const auto& [e, c] : f.terms()) {
    Rational value = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k == x) continue;
      for (int j = 0; j < e[k]; ++j) value *= point[k];
    }
    coeffs[static_cast<std::size_t>(e[x])] += value;
  }
  return coeffs;
}

std::vector<std::vector<Rational>> probe_points(std::size_t slots) {
  std::vector<std::vector<Rational>> points;
  points.emplace_back(slots, Rational(0));
  for (int attempt = 1; attempt <= 12; ++attempt) {
    std::vector<Rational> p(slots);
    for (std::size_t k = 0; k < slots; ++k) {
      p[k] = Rational(static_cast<long>((attempt * 7 + static_cast<int>(k) * 13 + attempt * static_cast<int>(k) * 5) % 17) - 8);
    }
    points.push_back(std::move(p));
  }
  return points;
}

Poly slot_var(int rank, std::size_t slot) {
  return slot == 0 ? Poly::param(rank) : Poly::h(rank, static_cast<int>(slot));
}

// Finds one affine factor of rem (total degree >= 1) or nullopt.
std::optional<Poly> find_affine_factor(const Poly& rem) {
  const int rank = rem.rank();
  const std::size_t slots = static_cast<std::size_t>(rank) + 1;
  std::vector<std::size_t> present;
  for (std::size_t k = 0; k < slots; ++k) {
    const VarId v = k == 0 ? VarId::param() : VarId::h(static_cast<int>(k));
    if (rem.degree_in(v) > 0) present.push_back(k);
  }
  const Poly top = rem.homogeneous_part(rem.total_degree());
  const auto points = probe_points(slots);

  for (std::size_t lead_pos = present.size(); lead_pos-- > 0;) {
    const std::size_t x = present[lead_pos];
    const std::size_t lower = lead_pos;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < lower; ++k) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      Poly linear = slot_var(rank, x);
      std::vector<Rational> lin_coeff(slots, Rational(0));
      std::size_t rest = code;
      for (std::size_t k = 0; k < lower; ++k) {
        const int c = static_cast<int>(rest % 3) - 1;
        rest /= 3;
        if (c == 0) continue;
        lin_coeff[present[k]] = c;
        linear += Rational(c) * slot_var(rank, present[k]);
      }
      if (!divide_exact(top, linear)) continue;

      for (const auto& point : points) {
        const auto u = restrict_to_line(rem, x, point);
        if (std::all_of(u.begin(), u.end(), [](const Rational& c) { return c == 0; })) continue;
        Rational offset = 0;  // value of linear - x at the point
        for (std::size_t k = 0; k < slots; ++k) offset += lin_coeff[k] * point[k];
        for (const auto& root : rational_roots(u)) {
          const Poly candidate = linear + Poly::constant(rank, -root - offset);
          if (divide_exact(rem, candidate)) return candidate;
        }
        break;  // a nonzero restriction already exposes every factor with this linear part
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Poly AffineFactorization::expand(int rank) const {
  Poly out = Poly::constant(rank, constant);
  for (const auto& [factor, mult] : factors) out = out * factor.pow(static_cast<unsigned>(mult));
  return out;
}

std::optional<AffineFactorization> factor_affine(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::zero_input, "factor_affine of the zero polynomial");
  std::map<Poly, int, std::function<bool(const Poly&, const Poly&)>> found(poly_less);
  Poly rem = f;
  while (rem.total_degree() > 0) {
    auto factor = find_affine_factor(rem);
    if (!factor) return std::nullopt;
    rem = *divide_exact(rem, *factor);
    ++found[*factor];
  }
  AffineFactorization out;
  out.constant = *rem.constant_value();
  for (auto it = found.rbegin(); it != found.rend(); ++it) out.factors.emplace_back(it->first, it->second);
  return out;
}

}  // namespace hfree
