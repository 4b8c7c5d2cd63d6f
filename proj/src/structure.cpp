#include "hfree/structure.hpp"

#include <deque>
#include <functional>
#include <numeric>

#include "hfree/error.hpp"

namespace hfree {

std::string to_string(const HBasisIndex& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
  return out + ")";
}

namespace {

// prod_{j=0}^{k} (h_i - b + j) for a polynomial b of rank n.
Poly factorial_factor(int n, int i, int k, const Poly& b) {
  Poly out = Poly::constant(n, 1);
  for (int j = 0; j <= k; ++j) out = out * (Poly::h(n, i) - b + Poly::constant(n, j));
  return out;
}

void check_index(const HBasisIndex& k, int n) {
  if (static_cast<int>(k.size()) != n) throw Error(Errc::rank_mismatch, "H-basis index must have n entries");
  for (int x : k) {
    if (x < -1) throw Error(Errc::precondition, "H-basis index entries must be >= -1");
  }
}

void expand_recursive(const Poly& f, int var, const Poly& b, HBasisIndex& prefix,
                      std::map<HBasisIndex, Rational>& out) {
  const int n = f.rank();
  if (var > n) {
    auto& slot = out[prefix];
    slot += *f.constant_value();
    return;
  }
  Poly rem = f;
  while (!rem.is_zero()) {
    const int d = deg(rem, var);
    const Poly c = rem.coefficient_of(VarId::h(var), d);
    rem -= c * factorial_factor(n, var, d - 1, b);
    prefix.push_back(d - 1);
    expand_recursive(c, var + 1, b, prefix, out);
    prefix.pop_back();
  }
}

// All indices with entries >= -1 and entry sum <= max_sum.
std::vector<HBasisIndex> indices_up_to(int n, long max_sum) {
  std::vector<HBasisIndex> out;
  HBasisIndex cur;
  std::function<void(long)> rec = [&](long budget) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    // remaining entries each contribute at least -1
    const long rest = n - static_cast<long>(cur.size()) - 1;
    for (long k = -1; k <= budget + rest; ++k) {
      cur.push_back(static_cast<int>(k));
      rec(budget - k);
      cur.pop_back();
    }
  };
  rec(max_sum);
  return out;
}

long index_sum(const HBasisIndex& k) { return std::accumulate(k.begin(), k.end(), 0L); }

IndexSet full_set(int n) {
  IndexSet s;
  for (int i = 1; i <= n; ++i) s.insert(i);
  return s;
}

Rational concrete_b(const NormalForm& nf) {
  const auto b = nf.b_value();
  if (!b) throw Error(Errc::precondition, "a concrete rational b is required");
  return *b;
}

}  // namespace

Poly h_basis_poly(const ParamValue& b, const HBasisIndex& k) {
  const int n = static_cast<int>(k.size());
  if (n < 1) throw Error(Errc::precondition, "H-basis index must be nonempty");
  check_index(k, n);
  const Poly bp = param_poly(b, n);
  Poly out = Poly::constant(n, 1);
  for (int i = 1; i <= n; ++i) out = out * factorial_factor(n, i, k[static_cast<std::size_t>(i - 1)], bp);
  return out;
}

std::map<HBasisIndex, Rational> expand_h_basis(const Poly& f, const Rational& b) {
  if (f.depends_on(VarId::param())) throw Error(Errc::precondition, "H-basis expansion needs a concrete b");
  std::map<HBasisIndex, Rational> out;
  HBasisIndex prefix;
  expand_recursive(f, 1, Poly::constant(f.rank(), b), prefix, out);
  std::erase_if(out, [](const auto& entry) { return entry.second == 0; });
  return out;
}

MbSData recognise_MbS(const ModuleSpec& m) {
  const NormalForm nf = classify(m);
  const auto b = nf.b_value();
  if (nf.tau || nf.a != TwistData::identity(m.n) || !b) {
    throw Error(Errc::precondition, "spec is not M_b^S with a rational b");
  }
  return MbSData{m.n, nf.S, *b};
}

ShiftOperator A_operator(const ModuleSpec& m, int i) {
  const MbSData data = recognise_MbS(m);
  if (i < 1 || i > data.n) throw Error(Errc::index_out_of_range, "A_i needs 1 <= i <= n");
  const int n = data.n;
  const Poly shifted = Poly::h(n, i) - Poly::constant(n, data.b);
  const ShiftOperator lower = action_operator(m, BasisElement::e(n + 1, i));
  if (data.S.count(i) != 0) return lower + ShiftOperator::multiplication(shifted);
  return shifted * (lower + ShiftOperator::identity(n));
}

bool SubmoduleReport::in_submodule(const HBasisIndex& k) const { return index_sum(k) >= threshold; }

SimplicityReport is_simple(const NormalForm& nf) {
  const Rational b = concrete_b(nf);
  const int n = nf.n();
  SimplicityReport report;
  if (static_cast<int>(nf.S.size()) != n) {
    report.reason = (n == 1) ? "sl2-Mprime" : "S-proper";
    return report;
  }
  if (is_natural(Rational(b * (n + 1)))) {
    report.simple = false;
    report.reason = "reducible";
    report.submodule = proper_submodule(nf);
    return report;
  }
  report.reason = "generic-b";
  return report;
}

SubmoduleReport proper_submodule(const NormalForm& nf, int closure_bound) {
  const Rational b = concrete_b(nf);
  const int n = nf.n();
  const Rational scaled = b * (n + 1);
  if (static_cast<int>(nf.S.size()) != n || !is_natural(scaled)) {
    throw Error(Errc::precondition, "a proper submodule exists only for S = {1..n} and (n+1)b in N_0");
  }
  const long N = scaled.get_num().get_si();
  SubmoduleReport r;
  r.n = n;
  r.b = b;
  r.threshold = N - (n - 1);

  for (const auto& k : indices_up_to(n, r.threshold - 1)) {
    if (!r.in_submodule(k)) ++r.quotient_dim;
  }
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(N + n), static_cast<unsigned long>(n));
  r.quotient_binomial = binom.get_si();

  const ModuleSpec m = make_MbS(n, full_set(n), b);
  const auto in_w = [&](const Poly& f) {
    for (const auto& [k, c] : expand_h_basis(f, b)) {
      if (!r.in_submodule(k)) return false;
    }
    return true;
  };

  // lowest weight vector v = H_{N-1, -1, ..., -1}
  r.lowest_weight_vector = HBasisIndex(static_cast<std::size_t>(n), -1);
  r.lowest_weight_vector[0] = static_cast<int>(N - 1);
  for (int i = 1; i <= n; ++i) r.lowest_weight.push_back(i == 1 ? b - scaled : b);
  const Poly v = h_basis_poly(b, r.lowest_weight_vector);
  bool ok = !r.in_submodule(r.lowest_weight_vector);
  for (int i = 1; i <= n; ++i) {
    const Poly weight_defect = (Poly::h(n, i) - Poly::constant(n, r.lowest_weight[static_cast<std::size_t>(i - 1)])) * v;
    ok = ok && in_w(weight_defect);
    ok = ok && in_w(act(m, BasisElement::e(n + 1, i), v));
    for (int j = 1; j < i; ++j) ok = ok && in_w(act(m, BasisElement::e(i, j), v));
  }
  r.lowest_weight_verified = ok;

  r.closure_bound = closure_bound < 0 ? static_cast<int>(N + 3) : closure_bound;
  std::vector<ShiftOperator> ops;
  for (const auto& x : basis(n)) ops.push_back(action_operator(m, x));
  bool closed = true;
  for (const auto& k : indices_up_to(n, r.closure_bound)) {
    if (!r.in_submodule(k)) continue;
    const Poly hk = h_basis_poly(b, k);
    for (const auto& op : ops) {
      closed = closed && in_w(op.apply(hk));
      ++r.closure_checked;
    }
  }
  r.closure_holds = closed;
  return r;
}

Sl2SubmoduleReport sl2_submodule(const Rational& b) {
  const Rational twice = b * 2;
  if (!is_natural(twice)) throw Error(Errc::precondition, "the sl2 submodule needs 2b in N_0");
  const long top = twice.get_num().get_si();
  Sl2SubmoduleReport r;
  r.b = b;
  const Poly h = Poly::h(1, 1);
  const Poly one = Poly::constant(1, 1);
  const Poly bc = Poly::constant(1, b);
  r.generator = one;
  for (long j = 0; j <= top; ++j) r.generator = r.generator * (h + bc - Poly::constant(1, Rational(j)));
  r.highest_weight_vector = one;
  for (long j = 0; j < top; ++j) r.highest_weight_vector = r.highest_weight_vector * (h + bc - Poly::constant(1, Rational(j)));

  const ModuleSpec m = make_sl2(Sl2Kind::M, b);
  const ShiftOperator mult_q = ShiftOperator::multiplication(r.generator);
  const ShiftOperator raise = action_operator(m, BasisElement::e(1, 2));
  const ShiftOperator lower = action_operator(m, BasisElement::e(2, 1));
  const ShiftOperator raise_target = ShiftOperator::term(h - bc - one, ShiftVector::unit(1, 1, 1));
  const ShiftOperator lower_target = ShiftOperator::term(-((h + bc + one)), ShiftVector::unit(1, 1, -1));
  r.raising_identity = compose(raise, mult_q) == compose(mult_q, raise_target);
  r.lowering_identity = compose(lower, mult_q) == compose(mult_q, lower_target);

  const Poly& v = r.highest_weight_vector;
  r.highest_weight_verified = !divide_exact(v, r.generator).has_value() &&
                              divide_exact(raise.apply(v), r.generator).has_value() &&
                              divide_exact((h - bc) * v, r.generator).has_value();
  r.matches_h_basis = r.generator == h_basis_poly(b, {static_cast<int>(top)});
  r.quotient_dim = top + 1;
  return r;
}

Poly central_character_sl2(const ModuleSpec& m) {
  if (m.n != 1) throw Error(Errc::precondition, "the sl2 central character needs n = 1");
  m.validate();
  if (!verify_module(m).valid()) throw Error(Errc::precondition, "spec is not a module");
  const Poly value = act(m, casimir_sl2(1), Poly::constant(1, 1));
  if (!value.is_h_free()) throw Error(Errc::precondition, "c2 does not act by a scalar: " + value.str());
  return value;
}

Rational lowering_coefficient(const HBasisIndex& k, int i, const Rational& b) {
  const int n = static_cast<int>(k.size());
  Rational inner = b * (n + 1) - k[static_cast<std::size_t>(i - 1)];
  for (int j = 1; j <= n; ++j) {
    if (j != i) inner -= k[static_cast<std::size_t>(j - 1)] + 1;
  }
  return -(k[static_cast<std::size_t>(i - 1)] + 1) * inner;
}

bool ReachabilityTrace::all_coefficients_match() const {
  return std::all_of(steps.begin(), steps.end(), [](const ReductionStep& s) { return s.claimed == s.recomputed; });
}

ReachabilityTrace reachability_witness(const NormalForm& nf, const HBasisIndex& start, int step_bound) {
  const Rational b = concrete_b(nf);
  const int n = nf.n();
  check_index(start, n);
  if (!is_simple(nf).simple) throw Error(Errc::precondition, "reachability witnesses need a simple module");

  // candidate moves out of k, with their closed-form coefficients
  const auto moves = [&](const HBasisIndex& k) {
    std::vector<ReductionStep> out;
    for (int i = 1; i <= n; ++i) {
      const int ki = k[static_cast<std::size_t>(i - 1)];
      if (ki < 0) continue;
      HBasisIndex down = k;
      --down[static_cast<std::size_t>(i - 1)];
      if (nf.S.count(i) != 0) {
        out.push_back({"lower", i, 0, k, down, lowering_coefficient(k, i, b), 0});
        for (int j = 1; j <= n; ++j) {
          if (j == i) continue;
          HBasisIndex side = down;
          ++side[static_cast<std::size_t>(j - 1)];
          out.push_back({"lateral", i, j, k, side, Rational(-(ki + 1)), 0});
        }
      } else {
        out.push_back({"lower-out", i, 0, k, down, Rational(-(ki + 1)), 0});
      }
    }
    std::erase_if(out, [](const ReductionStep& s) { return s.claimed == 0; });
    return out;
  };

  const HBasisIndex target(static_cast<std::size_t>(n), -1);
  std::map<HBasisIndex, std::pair<ReductionStep, int>> parent;  // step into the key and its depth
  std::deque<HBasisIndex> queue{start};
  parent.emplace(start, std::make_pair(ReductionStep{}, 0));
  bool found = start == target;
  while (!queue.empty() && !found) {
    const HBasisIndex k = queue.front();
    queue.pop_front();
    const int depth = parent.at(k).second;
    if (depth >= step_bound) continue;
    for (auto& step : moves(k)) {
      if (parent.count(step.to) != 0) continue;
      const HBasisIndex to = step.to;
      parent.emplace(to, std::make_pair(std::move(step), depth + 1));
      if (to == target) {
        found = true;
        break;
      }
      queue.push_back(to);
    }
  }
  if (!found) throw Error(Errc::not_found, "no reduction to 1 within " + std::to_string(step_bound) + " steps");

  ReachabilityTrace trace;
  for (HBasisIndex k = target; k != start; k = parent.at(k).first.from) trace.steps.push_back(parent.at(k).first);
  std::reverse(trace.steps.begin(), trace.steps.end());

  const ModuleSpec m = make_MbS(n, nf.S, b);
  for (auto& step : trace.steps) {
    ShiftOperator op = step.move == "lower-out"
                           ? action_operator(m, BasisElement::e(n + 1, step.i)) + ShiftOperator::identity(n)
                           : action_operator(m, BasisElement::e(step.i, n + 1));
    const auto coords = expand_h_basis(op.apply(h_basis_poly(b, step.from)), b);
    const auto it = coords.find(step.to);
    step.recomputed = it == coords.end() ? Rational(0) : it->second;
  }
  return trace;
}

}  // namespace hfree
