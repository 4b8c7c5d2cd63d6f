#include "hfree/tensor.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "hfree/error.hpp"
#include "hfree/structure.hpp"

namespace hfree {

namespace {

const BasisElement kE12 = BasisElement::e(1, 2);
const BasisElement kE21 = BasisElement::e(2, 1);
const BasisElement kH = BasisElement::h(1);

RationalMatrix zero_matrix(int d) {
  return RationalMatrix(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
}

RationalMatrix mul(const RationalMatrix& a, const RationalMatrix& b) {
  const auto d = a.size();
  RationalMatrix out = zero_matrix(static_cast<int>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

RationalMatrix combine(const RationalMatrix& a, const RationalMatrix& b, const Rational& cb) {
  RationalMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += cb * b[i][j];
  return out;
}

OperatorMatrix zero_ops(int d) {
  return OperatorMatrix(static_cast<std::size_t>(d), std::vector<ShiftOperator>(static_cast<std::size_t>(d), ShiftOperator(1)));
}

OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b) {
  const auto d = a.size();
  OperatorMatrix out = zero_ops(static_cast<int>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!b[l][j].is_zero()) out[i][j] += compose(a[i][l], b[l][j]);
    }
  return out;
}

Poly sigma(const Poly& f) { return shift(f, 1, 1); }
Poly sigma_inv(const Poly& f) { return shift(f, 1, -1); }
Poly half_up(const Poly& f) { return substitute_affine(f, 1, Rational(1, 2)); }
Poly half_down(const Poly& f) { return substitute_affine(f, 1, Rational(-1, 2)); }

Poly hpoly() { return Poly::h(1, 1); }
Poly cst(const Rational& c) { return Poly::constant(1, c); }
Poly mono(int e) { return Poly::monomial(1, {0, e}); }

// Sparse vectors over Q keyed by (coordinate, exponent of h) and a row echelon
// basis in which every row's pivot is its smallest key.
using Key = std::pair<int, int>;
using SparseVec = std::map<Key, Rational>;

void add_poly(SparseVec& v, int component, const Poly& f) {
  for (const auto& [e, c] : f.terms()) {
    if (e[0] != 0) throw Error(Errc::precondition, "linear algebra needs numeric b");
    Rational& slot = v[{component, e[1]}];
    slot += c;
    if (slot == 0) v.erase({component, e[1]});
  }
}

SparseVec flatten(const TensorVector& t, int offset = 0) {
  SparseVec v;
  for (std::size_t i = 0; i < t.size(); ++i) add_poly(v, offset + static_cast<int>(i), t[i]);
  return v;
}

class EchelonBasis {
 public:
  SparseVec reduce(SparseVec v) const {
    auto it = v.begin();
    while (it != v.end()) {
      const Key key = it->first;
      const auto row = rows_.find(key);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Rational c = it->second;
      for (const auto& [k, x] : row->second) {
        Rational& slot = v[k];
        slot -= c * x;
        if (slot == 0) v.erase(k);
      }
      it = v.upper_bound(key);
    }
    return v;
  }

  /// Returns false when v already lies in the span.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const Rational lead = r.begin()->second;
    for (auto& [k, x] : r) x /= lead;
    rows_.emplace(r.begin()->first, std::move(r));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

 private:
  std::map<Key, SparseVec> rows_;
};

std::string module_label(Sl2Kind kind, const Rational& b) { return std::string(to_string(kind)) + "_" + to_string(b); }

bool split_verified(const SplitCertificate& c) {
  return c.intertwining1 && c.intertwining2 && c.directness_scalar != 0 && c.images_independent && c.generates;
}

}  // namespace

const RationalMatrix& FinDimModule::matrix(const BasisElement& x) const {
  if (x == kE12) return e12;
  if (x == kE21) return e21;
  if (x == kH) return h;
  throw Error(Errc::index_out_of_range, "not a basis element of sl2: " + x.str());
}

FinDimModule make_L(int k) {
  if (k < 0) throw Error(Errc::precondition, "L(k) needs k >= 0");
  FinDimModule L;
  L.k = k;
  L.e12 = L.e21 = L.h = zero_matrix(k + 1);
  for (int j = 0; j <= k; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    L.h[uj][uj] = Rational(k - 2 * j, 2);
    L.h[uj][uj].canonicalize();
    if (j < k) L.e21[uj + 1][uj] = 1;
    if (j > 0) L.e12[uj - 1][uj] = j * (k - j + 1);
  }
  return L;
}

bool relations_hold(const FinDimModule& L) {
  for (const auto& x : basis(1))
    for (const auto& y : basis(1)) {
      const RationalMatrix lhs = combine(mul(L.matrix(x), L.matrix(y)), mul(L.matrix(y), L.matrix(x)), Rational(-1));
      RationalMatrix rhs = zero_matrix(L.dim());
      const AlgebraVector br = bracket(x, y, 1);
      for (const auto& [z, c] : br.terms()) rhs = combine(rhs, L.matrix(z), c);
      if (lhs != rhs) return false;
    }
  return true;
}

OperatorMatrix tensor_operator(const ModuleSpec& m, const FinDimModule& L, const BasisElement& x) {
  if (m.n != 1) throw Error(Errc::precondition, "tensor products are implemented for sl2 (n = 1)");
  const ShiftOperator base = action_operator(m, x);
  const RationalMatrix& mat = L.matrix(x);
  OperatorMatrix out = zero_ops(L.dim());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i == j) out[i][j] += base;
      if (mat[i][j] != 0) out[i][j] += mat[i][j] * ShiftOperator::identity(1);
    }
  return out;
}

TensorVector apply_tensor(const OperatorMatrix& op, const TensorVector& v) {
  if (op.size() != v.size()) throw Error(Errc::rank_mismatch, "tensor vector has the wrong number of coordinates");
  TensorVector out(v.size(), Poly(1));
  for (std::size_t i = 0; i < op.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!op[i][j].is_zero()) out[i] += op[i][j].apply(v[j]);
  return out;
}

bool tensor_relations_hold(const ModuleSpec& m, const FinDimModule& L) {
  std::map<BasisElement, OperatorMatrix> ops;
  for (const auto& x : basis(1)) ops.emplace(x, tensor_operator(m, L, x));
  for (const auto& x : basis(1))
    for (const auto& y : basis(1)) {
      if (x == y) continue;
      OperatorMatrix lhs = mul(ops.at(x), ops.at(y));
      const OperatorMatrix yx = mul(ops.at(y), ops.at(x));
      OperatorMatrix rhs = zero_ops(L.dim());
      const AlgebraVector br = bracket(x, y, 1);
      for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < lhs.size(); ++j) {
          lhs[i][j] -= yx[i][j];
          for (const auto& [z, c] : br.terms()) rhs[i][j] += c * ops.at(z)[i][j];
        }
      if (lhs != rhs) return false;
    }
  return true;
}

TensorVector tensor_action(Sl2Kind kind, const ParamValue& b, const BasisElement& x, const TensorVector& v) {
  if (v.size() != 2) throw Error(Errc::rank_mismatch, "an element of N (x) L(1) has two coordinates");
  const Poly h = hpoly();
  const Poly bp = param_poly(b, 1);
  const Poly half = cst(Rational(1, 2));
  const Poly& f = v[0];
  const Poly& g = v[1];
  if (x == kH) return {(h + half) * f, (h - half) * g};
  if (kind == Sl2Kind::M) {
    if (x == kE12) return {(h + bp) * sigma(f) + g, (h + bp) * sigma(g)};
    if (x == kE21) return {-(h - bp) * sigma_inv(f), -(h - bp) * sigma_inv(g) + f};
  } else {
    const Poly c = (h + bp + cst(1)) * (h - bp);
    if (x == kE12) return {sigma(f) + g, sigma(g)};
    if (x == kE21) return {-c * sigma_inv(f), -c * sigma_inv(g) + f};
  }
  throw Error(Errc::index_out_of_range, "not a basis element of sl2: " + x.str());
}

TensorVector PhiMap::operator()(const Poly& f) const { return {first * half_up(f), second * half_down(f)}; }

bool intertwines(Sl2Kind kind, const Rational& b, const PhiMap& phi, int degree_bound) {
  const ModuleSpec source = make_sl2(kind, phi.source_b);
  for (const auto& x : basis(1))
    for (int e = 0; e <= degree_bound; ++e) {
      const Poly f = mono(e);
      if (tensor_action(kind, b, x, phi(f)) != phi(act(source, x, f))) return false;
    }
  return true;
}

L1Decomposition decompose_L1(Sl2Kind kind, const Rational& b, int degree_bound) {
  if (degree_bound < 0) throw Error(Errc::precondition, "degree bound must be nonnegative");
  L1Decomposition out;
  out.kind = kind;
  out.b = b;
  out.degree_bound = degree_bound;
  const Poly h = hpoly();
  const Poly bc = cst(b);
  const Rational lo = b - Rational(1, 2);
  const Rational hi = b + Rational(1, 2);

  PhiMap phi1, phi2;
  if (kind == Sl2Kind::M) {
    phi1 = PhiMap{hi, cst(1), cst(1)};
    phi2 = PhiMap{lo, h - bc, h + bc};
  } else {
    phi1 = PhiMap{lo, h - bc, cst(1)};
    phi2 = PhiMap{hi, h + bc + cst(1), cst(1)};
  }

  if (2 * b != -1) {
    SplitCertificate c;
    c.summand_shifts = {Rational(-1, 2), Rational(1, 2)};
    c.summands = {lo, hi};
    c.phi1 = phi1;
    c.phi2 = phi2;
    c.generator1 = phi1(cst(1));
    c.generator2 = phi2(cst(1));
    c.intertwining1 = intertwines(kind, b, phi1, degree_bound);
    c.intertwining2 = intertwines(kind, b, phi2, degree_bound);
    c.directness_scalar = 2 * b + 1;

    EchelonBasis images;
    bool independent = true;
    for (int e = 0; e <= degree_bound + 1; ++e) {
      independent = images.insert(flatten(phi1(mono(e)))) && independent;
      independent = images.insert(flatten(phi2(mono(e)))) && independent;
    }
    c.images_independent = independent;
    bool generates = true;
    for (int e = 0; e <= degree_bound && generates; ++e) {
      generates = images.contains(flatten({mono(e), Poly(1)})) && images.contains(flatten({Poly(1), mono(e)}));
    }
    c.generates = generates;
    out.split = std::move(c);
    return out;
  }

  // b = -1/2: the two candidate summands collapse onto one submodule.
  NonsplitCertificate c;
  c.sub_b = Rational(0);
  c.quotient_b = Rational(-1);
  c.phi = phi1.source_b == c.sub_b ? phi1 : phi2;
  const PhiMap& other = phi1.source_b == c.sub_b ? phi2 : phi1;
  c.sub_intertwining = intertwines(kind, b, c.phi, degree_bound);
  if (kind == Sl2Kind::Mprime) {
    c.generators_coincide = c.phi(cst(1)) == other(cst(1));
  } else {
    bool inside = true;
    for (int e = 0; e <= degree_bound && inside; ++e) inside = other(mono(e)) == c.phi(mono(e + 1));
    c.second_inside_first = inside;
  }

  // (f, g) -> f - alpha sigma^{-1}(g) kills the image of phi; the half shift
  // turns the induced h-action into multiplication by h.
  const Poly alpha = kind == Sl2Kind::M ? cst(1) : h + bc + cst(1);
  auto quotient = [&](const TensorVector& v) { return half_down(v[0] - alpha * sigma_inv(v[1])); };
  auto lift = [&](const Poly& f) { return TensorVector{half_up(f), Poly(1)}; };

  const TensorVector unit{cst(1), Poly(1)};
  c.quotient_spec = ModuleSpec{1, {quotient(tensor_action(kind, b, kE12, unit))}, {quotient(tensor_action(kind, b, kE21, unit))}};
  const ModuleSpec target = make_sl2(kind, c.quotient_b);
  bool matches = c.quotient_spec == target && quotient(unit) == cst(1);
  for (int e = 0; e <= degree_bound && matches; ++e) {
    if (!quotient(c.phi(mono(e))).is_zero()) matches = false;
    for (const auto& x : basis(1))
      if (quotient(tensor_action(kind, b, x, lift(mono(e)))) != act(target, x, mono(e))) matches = false;
  }
  c.quotient_matches = matches;

  // A section s is fixed by s(1) = (u, w), subject to
  //   e12.(u,w) = s(p'), e21.(u,w) = s(q'), quotient(u,w) = 1,
  // where s(r) = (r(h+1/2) u, r(h-1/2) w). Solve for deg u, deg w <= bound.
  const Poly& pq = target.p[0];
  const Poly& qq = target.q[0];
  auto residual = [&](const TensorVector& s) {
    const TensorVector up = tensor_action(kind, b, kE12, s);
    const TensorVector down = tensor_action(kind, b, kE21, s);
    TensorVector r{up[0] - half_up(pq) * s[0], up[1] - half_down(pq) * s[1],
                   down[0] - half_up(qq) * s[0], down[1] - half_down(qq) * s[1], quotient(s)};
    return flatten(r);
  };
  EchelonBasis columns;
  for (int e = 0; e <= degree_bound; ++e) {
    columns.insert(residual({mono(e), Poly(1)}));
    columns.insert(residual({Poly(1), mono(e)}));
  }
  SparseVec rhs;
  rhs[{4, 0}] = 1;
  c.no_section = !columns.contains(rhs);

  if (kind == Sl2Kind::M) {
    const auto sub = sl2_submodule(c.sub_b);
    if (sub.quotient_dim == 1) c.jordan_holder.push_back("L(0)");
    c.jordan_holder.push_back(module_label(kind, -c.sub_b - 1));
    c.jordan_holder.push_back(module_label(kind, c.quotient_b));
  } else {
    c.jordan_holder = {module_label(kind, c.sub_b), module_label(kind, c.quotient_b)};
  }
  out.nonsplit = std::move(c);
  return out;
}

LkDecomposition decompose_Lk(Sl2Kind kind, const Rational& b, int k, int degree_bound) {
  if (k < 0) throw Error(Errc::precondition, "L(k) needs k >= 0");
  const Rational twice = 2 * b;
  if (k == 1 && twice == -1) throw Error(Errc::precondition, "b = -1/2 gives a nonsplit product with L(1)");
  if (k >= 2 && is_integer(twice)) throw Error(Errc::precondition, "decomposition with L(k), k >= 2, needs 2b not an integer");

  LkDecomposition out;
  out.guard = k == 0 ? "none" : k == 1 ? "2b != -1" : "2b not an integer";
  for (int i = 0; i <= k; ++i) {
    Rational c = b + Rational(k - 2 * i, 2);
    c.canonicalize();
    out.summands.push_back(c);
  }
  if (k > 4) return out;

  out.iterated_checked = true;
  bool certified = true;
  auto times_L1 = [&](const std::vector<Rational>& parts) {
    std::vector<Rational> next;
    for (const auto& c : parts) {
      const auto d = decompose_L1(kind, c, degree_bound);
      if (!d.split || !split_verified(*d.split)) {
        certified = false;
        continue;
      }
      next.insert(next.end(), d.split->summands.begin(), d.split->summands.end());
    }
    std::sort(next.begin(), next.end());
    return next;
  };
  std::vector<Rational> prev;
  std::vector<Rational> cur{b};
  for (int step = 0; step < k; ++step) {
    std::vector<Rational> next = times_L1(cur);
    // L(j) (x) L(1) = L(j+1) + L(j-1), so the L(j-1) part is removed.
    for (const auto& c : prev) {
      const auto it = std::find(next.begin(), next.end(), c);
      if (it == next.end()) {
        certified = false;
        continue;
      }
      next.erase(it);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  out.iterated = cur;
  std::vector<Rational> expected = out.summands;
  std::sort(expected.begin(), expected.end());
  out.iterated_matches = certified && expected == out.iterated;
  return out;
}

}  // namespace hfree
