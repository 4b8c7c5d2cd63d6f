#include "hfree/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hfree/error.hpp"

namespace hfree {

namespace {

int exps_total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_h_index(int rank, int i) {
  if (i < 1 || i > rank) {
    throw Error(Errc::index_out_of_range,
                "variable index h" + std::to_string(i) + " outside 1.." + std::to_string(rank));
  }
}

// Binomial coefficients C(e, k), k = 0..e.
std::vector<mpz_class> binomial_row(int e) {
  std::vector<mpz_class> row(static_cast<std::size_t>(e) + 1);
  for (int k = 0; k <= e; ++k) mpz_bin_uiui(row[k].get_mpz_t(), e, k);
  return row;
}

}  // namespace

bool GrlexLess::operator()(const Exponents& lhs, const Exponents& rhs) const {
  const int dl = exps_total(lhs);
  const int dr = exps_total(rhs);
  if (dl != dr) return dl < dr;
  for (std::size_t k = lhs.size(); k-- > 0;) {
    if (lhs[k] != rhs[k]) return lhs[k] < rhs[k];
  }
  return false;
}

// ---------------------------------------------------------------------------

ShiftVector ShiftVector::unit(int rank, int i, int s) {
  check_h_index(rank, i);
  ShiftVector v(rank);
  v.steps_[static_cast<std::size_t>(i - 1)] = s;
  return v;
}

bool ShiftVector::is_zero() const {
  return std::all_of(steps_.begin(), steps_.end(), [](int s) { return s == 0; });
}

ShiftVector ShiftVector::operator+(const ShiftVector& other) const {
  if (other.rank() != rank()) throw Error(Errc::rank_mismatch, "shift vectors of different rank");
  ShiftVector out(*this);
  for (std::size_t k = 0; k < steps_.size(); ++k) out.steps_[k] += other.steps_[k];
  return out;
}

ShiftVector ShiftVector::operator-() const {
  ShiftVector out(*this);
  for (int& s : out.steps_) s = -s;
  return out;
}

std::string ShiftVector::str() const {
  std::string out;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    if (steps_[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += "s" + std::to_string(k + 1);
    if (steps_[k] != 1) out += "^" + std::to_string(steps_[k]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------

Poly Poly::constant(int rank, const Rational& c) {
  Poly p(rank);
  p.add_term(Exponents(static_cast<std::size_t>(rank) + 1, 0), c);
  return p;
}

Poly Poly::var(int rank, VarId v) {
  if (v.kind == VarId::Kind::H) check_h_index(rank, v.index);
  Exponents e(static_cast<std::size_t>(rank) + 1, 0);
  e[static_cast<std::size_t>(v.slot())] = 1;
  return monomial(rank, std::move(e));
}

Poly Poly::monomial(int rank, Exponents exps, const Rational& c) {
  if (exps.size() != static_cast<std::size_t>(rank) + 1) {
    throw Error(Errc::rank_mismatch, "exponent tuple length does not match rank");
  }
  Poly p(rank);
  p.add_term(exps, c);
  return p;
}

void Poly::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_rank(const Poly& other) const {
  if (other.rank_ != rank_) {
    throw Error(Errc::rank_mismatch,
                "polynomial rank mismatch: " + std::to_string(rank_) + " vs " + std::to_string(other.rank_));
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exps_total(terms_.begin()->first) == 0);
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

bool Poly::is_h_free() const {
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 1; k < e.size(); ++k) {
      if (e[k] != 0) return false;
    }
  }
  return true;
}

bool Poly::depends_on(VarId v) const { return degree_in(v) > 0; }

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return exps_total(terms_.rbegin()->first);
}

int Poly::degree_in(VarId v) const {
  if (terms_.empty()) return -1;
  const auto slot = static_cast<std::size_t>(v.slot());
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(slot));
  return d;
}

Rational Poly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::coefficient_of(VarId v, int k) const {
  const auto slot = static_cast<std::size_t>(v.slot());
  Poly out(rank_);
  for (const auto& [e, c] : terms_) {
    if (e[slot] != k) continue;
    Exponents reduced = e;
    reduced[slot] = 0;
    out.add_term(reduced, c);
  }
  return out;
}

Poly Poly::homogeneous_part(int degree) const {
  Poly out(rank_);
  for (const auto& [e, c] : terms_) {
    if (exps_total(e) == degree) out.terms_.emplace(e, c);
  }
  return out;
}

std::pair<Exponents, Rational> Poly::leading_term() const {
  if (terms_.empty()) throw Error(Errc::zero_input, "leading term of the zero polynomial");
  return *terms_.rbegin();
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational scale = c;
  scale.canonicalize();
  for (auto& [e, coeff] : terms_) coeff *= scale;
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  lhs.check_rank(rhs);
  Poly out(lhs.rank_);
  Exponents e(static_cast<std::size_t>(lhs.rank_) + 1);
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = el[k] + er[k];
      out.add_term(e, cl * cr);
    }
  }
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(rank_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::with_rank(int rank) const {
  Poly out(rank);
  for (const auto& [e, c] : terms_) {
    Exponents re(static_cast<std::size_t>(rank) + 1, 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k < re.size()) {
        re[k] = e[k];
      } else if (e[k] != 0) {
        throw Error(Errc::rank_mismatch, "cannot drop h" + std::to_string(k) + " from " + str());
      }
    }
    out.add_term(re, c);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += k == 0 ? std::string("b") : "h" + std::to_string(k);
      if (e[k] != 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << "*" << mono;
    }
  }
  return os.str();
}

bool poly_less(const Poly& lhs, const Poly& rhs) {
  if (lhs.rank() != rhs.rank()) return lhs.rank() < rhs.rank();
  auto li = lhs.terms().rbegin();
  auto ri = rhs.terms().rbegin();
  const GrlexLess less;
  for (; li != lhs.terms().rend() && ri != rhs.terms().rend(); ++li, ++ri) {
    if (li->first != ri->first) return less(li->first, ri->first);
    if (li->second != ri->second) return li->second < ri->second;
  }
  return li == lhs.terms().rend() && ri != rhs.terms().rend();
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.str(); }

// ---------------------------------------------------------------------------

Poly substitute_affine(const Poly& f, int i, const Rational& offset) {
  check_h_index(f.rank(), i);
  if (offset == 0) return f;
  const auto slot = static_cast<std::size_t>(i);
  Poly out(f.rank());
  for (const auto& [e, c] : f.terms()) {
    const int d = e[slot];
    if (d == 0) {
      out.add_term(e, c);
      continue;
    }
    // (h_i + r)^d = sum_k C(d,k) r^(d-k) h_i^k
    const auto row = binomial_row(d);
    Exponents term = e;
    Rational rpow = 1;
    for (int k = d; k >= 0; --k) {
      term[slot] = k;
      out.add_term(term, c * Rational(row[static_cast<std::size_t>(k)]) * rpow);
      rpow *= offset;
    }
  }
  return out;
}

Poly shift(const Poly& f, int i, int steps) { return substitute_affine(f, i, Rational(-steps)); }

Poly shift(const Poly& f, const ShiftVector& v) {
  if (v.rank() != f.rank()) throw Error(Errc::rank_mismatch, "shift vector rank differs from polynomial rank");
  Poly out = f;
  for (int i = 1; i <= v.rank(); ++i) {
    if (v.step(i) != 0) out = shift(out, i, v.step(i));
  }
  return out;
}

Poly tau(const Poly& f) {
  Poly out(f.rank());
  for (const auto& [e, c] : f.terms()) {
    int hdeg = 0;
    for (std::size_t k = 1; k < e.size(); ++k) hdeg += e[k];
    out.add_term(e, hdeg % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

Poly evaluate_param(const Poly& f, const Rational& value) {
  Poly out(f.rank());
  for (const auto& [e, c] : f.terms()) {
    Exponents reduced = e;
    Rational factor = 1;
    for (int k = 0; k < e[0]; ++k) factor *= value;
    reduced[0] = 0;
    out.add_term(reduced, c * factor);
  }
  return out;
}

Poly substitute_param(const Poly& f, const Poly& g) {
  if (g.rank() != f.rank()) throw Error(Errc::rank_mismatch, "substitute_param rank mismatch");
  const int top = f.degree_in(VarId::param());
  std::vector<Poly> powers;
  powers.push_back(Poly::constant(f.rank(), 1));
  for (int k = 1; k <= top; ++k) powers.push_back(powers.back() * g);
  Poly out(f.rank());
  for (const auto& [e, c] : f.terms()) {
    Exponents reduced = e;
    reduced[0] = 0;
    out += Poly::monomial(f.rank(), reduced, c) * powers[static_cast<std::size_t>(e[0])];
  }
  return out;
}

int deg(const Poly& f, int i) {
  check_h_index(f.rank(), i);
  return f.degree_in(VarId::h(i));
}

Poly leading_coeff(const Poly& f, int i) {
  check_h_index(f.rank(), i);
  if (f.is_zero()) throw Error(Errc::zero_input, "leading coefficient of the zero polynomial");
  return f.coefficient_of(VarId::h(i), deg(f, i));
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(Errc::division_by_zero, "division by the zero polynomial");
  if (f.rank() != g.rank()) throw Error(Errc::rank_mismatch, "divide_exact rank mismatch");
  const auto [glead, gcoeff] = g.leading_term();
  Poly quotient(f.rank());
  Poly rem = f;
  Exponents qe(glead.size());
  while (!rem.is_zero()) {
    const auto [rlead, rcoeff] = rem.leading_term();
    for (std::size_t k = 0; k < qe.size(); ++k) {
      qe[k] = rlead[k] - glead[k];
      if (qe[k] < 0) return std::nullopt;
    }
    const Poly step = Poly::monomial(f.rank(), qe, rcoeff / gcoeff);
    quotient += step;
    rem -= step * g;
  }
  return quotient;
}

// ---------------------------------------------------------------------------

namespace {

// Solutions F_k(x) of F(x-1) - F(x) = x^k with zero constant term, as
// coefficient vectors in x, built by the degree recursion F_0 = -x,
// F_k = -x^{k+1}/(k+1) - (solution for the lower-order remainder).
class ShiftSolutionTable {
 public:
  const std::vector<Rational>& get(int k) {
    while (static_cast<int>(table_.size()) <= k) extend();
    return table_[static_cast<std::size_t>(k)];
  }

 private:
  void extend() {
    const int k = static_cast<int>(table_.size());
    if (k == 0) {
      table_.push_back({Rational(0), Rational(-1)});
      return;
    }
    // lead(x) = -x^{k+1}/(k+1); residual = lead(x-1) - lead(x) - x^k, degree < k.
    std::vector<Rational> residual(static_cast<std::size_t>(k), Rational(0));
    const Rational scale = Rational(-1, k + 1);
    mpz_class binom;
    for (int j = 0; j < k; ++j) {
      // (x-1)^{k+1} coefficient at x^j is C(k+1,j)(-1)^{k+1-j}
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(j));
      Rational c = Rational(binom) * scale;
      if ((k + 1 - j) % 2 != 0) c = -c;
      residual[static_cast<std::size_t>(j)] = c;
    }
    // coefficient at x^k of lead(x-1)-lead(x) is scale * (-(k+1)) = 1, cancelled by -x^k.
    std::vector<Rational> sol(static_cast<std::size_t>(k) + 2, Rational(0));
    sol[static_cast<std::size_t>(k) + 1] = scale;
    for (int j = 0; j < k; ++j) {
      const Rational& r = residual[static_cast<std::size_t>(j)];
      if (r == 0) continue;
      const auto& fj = get(j);
      for (std::size_t m = 0; m < fj.size(); ++m) sol[m] -= r * fj[m];
    }
    table_.push_back(std::move(sol));
  }

  std::vector<std::vector<Rational>> table_;
};

}  // namespace

Poly solve_shift_equation(int i, const Poly& g) {
  check_h_index(g.rank(), i);
  ShiftSolutionTable table;
  const auto slot = static_cast<std::size_t>(i);
  Poly out(g.rank());
  for (const auto& [e, c] : g.terms()) {
    const auto& fk = table.get(e[slot]);
    Exponents term = e;
    for (std::size_t m = 0; m < fk.size(); ++m) {
      if (fk[m] == 0) continue;
      term[slot] = static_cast<int>(m);
      out.add_term(term, c * fk[m]);
    }
  }
  return out;
}

}  // namespace hfree
