#include "hfree/modules.hpp"

#include <sstream>

#include "hfree/error.hpp"

namespace hfree {

ShiftOperator ShiftOperator::identity(int rank) { return multiplication(Poly::constant(rank, 1)); }

ShiftOperator ShiftOperator::multiplication(const Poly& f) { return term(f, ShiftVector(f.rank())); }

ShiftOperator ShiftOperator::term(const Poly& f, const ShiftVector& v) {
  ShiftOperator op(f.rank());
  op.add_term(v, f);
  return op;
}

Poly ShiftOperator::coefficient(const ShiftVector& v) const {
  const auto it = terms_.find(v);
  return it == terms_.end() ? Poly(rank_) : it->second;
}

void ShiftOperator::add_term(const ShiftVector& v, const Poly& f) {
  if (f.rank() != rank_ || v.rank() != rank_) throw Error(Errc::rank_mismatch, "shift operator term of wrong rank");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(v, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ShiftOperator& ShiftOperator::operator+=(const ShiftOperator& other) {
  if (other.rank_ != rank_) throw Error(Errc::rank_mismatch, "shift operator rank mismatch");
  for (const auto& [v, f] : other.terms_) add_term(v, f);
  return *this;
}

ShiftOperator& ShiftOperator::operator-=(const ShiftOperator& other) {
  if (other.rank_ != rank_) throw Error(Errc::rank_mismatch, "shift operator rank mismatch");
  for (const auto& [v, f] : other.terms_) add_term(v, -f);
  return *this;
}

ShiftOperator ShiftOperator::operator-() const {
  ShiftOperator out(rank_);
  for (const auto& [v, f] : terms_) out.terms_.emplace(v, -f);
  return out;
}

ShiftOperator operator*(const Poly& f, const ShiftOperator& op) {
  ShiftOperator out(op.rank());
  for (const auto& [v, g] : op.terms()) out.add_term(v, f * g);
  return out;
}

ShiftOperator operator*(const Rational& c, const ShiftOperator& op) {
  ShiftOperator out(op.rank());
  for (const auto& [v, g] : op.terms()) out.add_term(v, c * g);
  return out;
}

Poly ShiftOperator::apply(const Poly& g) const {
  if (g.rank() != rank_) throw Error(Errc::rank_mismatch, "operator applied to polynomial of wrong rank");
  Poly out(rank_);
  for (const auto& [v, f] : terms_) out += f * shift(g, v);
  return out;
}

std::string ShiftOperator::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [v, f] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + f.str() + ")*s" + v.str();
  }
  return out;
}

ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b) {
  if (a.rank() != b.rank()) throw Error(Errc::rank_mismatch, "composing operators of different rank");
  ShiftOperator out(a.rank());
  for (const auto& [v, f] : a.terms()) {
    for (const auto& [w, g] : b.terms()) out.add_term(v + w, f * shift(g, v));
  }
  return out;
}

void ModuleSpec::validate() const {
  if (n < 1) throw Error(Errc::bad_spec, "rank n must be at least 1");
  if (p.size() != static_cast<std::size_t>(n) || q.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::bad_spec, "p and q must each have n entries");
  }
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (p[idx].rank() != n || q[idx].rank() != n) throw Error(Errc::bad_spec, "entry of wrong rank");
    if (p[idx].is_zero()) throw Error(Errc::bad_spec, "p" + std::to_string(i + 1) + " is zero");
    if (q[idx].is_zero()) throw Error(Errc::bad_spec, "q" + std::to_string(i + 1) + " is zero");
  }
}

std::string ModuleSpec::str() const {
  std::ostringstream os;
  os << "n=" << n << "; p=[";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i].str();
  os << "]; q=[";
  for (std::size_t i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i].str();
  os << "]";
  return os.str();
}

Poly param_poly(const ParamValue& b, int n) { return b ? Poly::constant(n, *b) : Poly::param(n); }

std::string to_string(const ParamValue& b) { return b ? b->get_str() : "b"; }

std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (int i : s) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

ShiftOperator action_operator(const ModuleSpec& m, const BasisElement& x) {
  const int n = m.n;
  validate(x, n);
  if (x.is_h()) return ShiftOperator::multiplication(Poly::h(n, x.row));
  const int i = x.row, j = x.col;
  if (j == n + 1) return ShiftOperator::term(m.p[static_cast<std::size_t>(i - 1)], ShiftVector::unit(n, i, 1));
  if (i == n + 1) return ShiftOperator::term(m.q[static_cast<std::size_t>(j - 1)], ShiftVector::unit(n, j, -1));
  const Poly& pi = m.p[static_cast<std::size_t>(i - 1)];
  const Poly& qj = m.q[static_cast<std::size_t>(j - 1)];
  const Poly coeff = pi * shift(qj, i, 1) - qj * shift(pi, j, -1);
  return ShiftOperator::term(coeff, ShiftVector::unit(n, i, 1) + ShiftVector::unit(n, j, -1));
}

ShiftOperator action_operator(const ModuleSpec& m, const AlgebraVector& x) {
  ShiftOperator out(m.n);
  for (const auto& [e, c] : x.terms()) out += c * action_operator(m, e);
  return out;
}

ShiftOperator action_operator(const ModuleSpec& m, const UExpression& u) {
  ShiftOperator out(m.n);
  for (const auto& w : u.words) {
    ShiftOperator word = ShiftOperator::identity(m.n);
    for (const auto& x : w.letters) word = compose(word, action_operator(m, x));
    out += w.coeff * word;
  }
  return out;
}

Poly act(const ModuleSpec& m, const UExpression& u, const Poly& f) {
  Poly out(m.n);
  for (const auto& w : u.words) {
    Poly v = f;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = action_operator(m, *it).apply(v);
    out += w.coeff * v;
  }
  return out;
}

Poly act(const ModuleSpec& m, const BasisElement& x, const Poly& f) { return action_operator(m, x).apply(f); }

ModuleSpec make_MbS(int n, const IndexSet& S, const ParamValue& b) {
  if (n < 1) throw Error(Errc::precondition, "M_b^S needs n >= 1");
  return make_MbS(n, S, param_poly(b, n));
}

ModuleSpec make_MbS(int n, const IndexSet& S, const Poly& b) {
  if (n < 1) throw Error(Errc::precondition, "M_b^S needs n >= 1");
  if (b.rank() != n || !b.is_h_free()) throw Error(Errc::precondition, "b must be free of h and of rank n");
  for (int i : S) {
    if (i < 1 || i > n) throw Error(Errc::index_out_of_range, "S must be a subset of 1..n");
  }
  const Poly one = Poly::constant(n, 1);
  const Poly hb = hbar(n) + b;
  ModuleSpec m;
  m.n = n;
  for (int i = 1; i <= n; ++i) {
    const Poly hi = Poly::h(n, i);
    if (S.count(i) != 0) {
      m.p.push_back(hb);
      m.q.push_back(-(hi - b));
    } else {
      m.p.push_back(hb * (hi - b - one));
      m.q.push_back(-one);
    }
  }
  return m;
}

const char* to_string(Sl2Kind kind) { return kind == Sl2Kind::M ? "M" : "Mprime"; }

ModuleSpec make_sl2(Sl2Kind kind, const ParamValue& b) {
  const Poly h = Poly::h(1, 1);
  const Poly bp = param_poly(b, 1);
  const Poly one = Poly::constant(1, 1);
  if (kind == Sl2Kind::M) return ModuleSpec{1, {h + bp}, {-(h - bp)}};
  return ModuleSpec{1, {one}, {-((h + bp + one) * (h - bp))}};
}

ModuleSpec evaluate_param(const ModuleSpec& m, const Rational& b) {
  ModuleSpec out = m;
  for (auto& f : out.p) f = evaluate_param(f, b);
  for (auto& f : out.q) f = evaluate_param(f, b);
  return out;
}

TwistData TwistData::identity(int n) { return TwistData{std::vector<Rational>(static_cast<std::size_t>(n) + 1, Rational(1))}; }

void TwistData::validate() const {
  if (a.size() < 2) throw Error(Errc::precondition, "twist data needs n+1 >= 2 entries");
  for (const auto& x : a) {
    if (x == 0) throw Error(Errc::precondition, "twist data entries must be nonzero");
  }
}

TwistData TwistData::canonical() const {
  validate();
  TwistData out = *this;
  const Rational last = a.back();
  for (auto& x : out.a) x /= last;
  return out;
}

TwistData TwistData::inverse() const {
  validate();
  TwistData out = *this;
  for (auto& x : out.a) x = 1 / x;
  return out;
}

TwistData TwistData::operator*(const TwistData& other) const {
  if (a.size() != other.a.size()) throw Error(Errc::rank_mismatch, "twist data of different length");
  TwistData out = *this;
  for (std::size_t k = 0; k < a.size(); ++k) out.a[k] *= other.a[k];
  return out;
}

std::string TwistData::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < a.size(); ++k) out += (k ? "," : "") + a[k].get_str();
  return out + ")";
}

ModuleSpec twist_Fa(const ModuleSpec& m, const TwistData& a) {
  a.validate();
  if (a.n() != m.n) throw Error(Errc::rank_mismatch, "twist data length must be n+1");
  ModuleSpec out = m;
  const Rational& last = a.a.back();
  for (std::size_t i = 0; i < out.p.size(); ++i) {
    out.p[i] *= a.a[i] / last;
    out.q[i] *= last / a.a[i];
  }
  return out;
}

ModuleSpec twist_tau(const ModuleSpec& m) {
  ModuleSpec out = m;
  for (std::size_t i = 0; i < out.p.size(); ++i) {
    out.p[i] = -tau(m.q[i]);
    out.q[i] = -tau(m.p[i]);
  }
  return out;
}

namespace {

std::vector<Violation> scan(const ModuleSpec& m, bool stop_at_first) {
  m.validate();
  const auto elements = basis(m.n);
  std::map<BasisElement, ShiftOperator> ops;
  for (const auto& x : elements) ops.emplace(x, action_operator(m, x));
  std::vector<Violation> out;
  for (const auto& x : elements) {
    for (const auto& y : elements) {
      if (x == y || (x.is_h() && y.is_h())) continue;
      const ShiftOperator& ax = ops.at(x);
      const ShiftOperator& ay = ops.at(y);
      ShiftOperator diff = compose(ax, ay) - compose(ay, ax);
      const AlgebraVector br = bracket(x, y, m.n);
      for (const auto& [z, c] : br.terms()) diff -= c * ops.at(z);
      if (!diff.is_zero()) {
        out.push_back(Violation{x, y, std::move(diff)});
        if (stop_at_first) return out;
      }
    }
  }
  return out;
}

}  // namespace

Verdict verify_module(const ModuleSpec& m) {
  auto found = scan(m, true);
  if (found.empty()) return {};
  return Verdict{std::move(found.front())};
}

std::vector<Violation> all_violations(const ModuleSpec& m) { return scan(m, false); }

}  // namespace hfree
