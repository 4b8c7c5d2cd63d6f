#pragma once

// Simplicity and submodules of the normal forms M_b^S, through the factorial
// basis H_k = prod_i prod_{j=0}^{k_i} (h_i - b + j) on which the operators A_i
// act diagonally. Everything here works on the untwisted representative
// M_b^S of a normal form; the twists F_a and F_tau are equivalences.

#include <map>
#include <string>
#include <vector>

#include "hfree/classify.hpp"

namespace hfree {

/// (k_1, ..., k_n) with every k_i >= -1.
using HBasisIndex = std::vector<int>;

std::string to_string(const HBasisIndex& k);

/// prod_i prod_{j=0}^{k_i} (h_i - b + j) with n = k.size().
Poly h_basis_poly(const ParamValue& b, const HBasisIndex& k);

/// Coordinates of f (free of the parameter) in the H-basis for the value b.
std::map<HBasisIndex, Rational> expand_h_basis(const Poly& f, const Rational& b);

/// A concrete M_b^S recognised from a spec.
struct MbSData {
  int n = 1;
  IndexSet S;
  Rational b;
};

/// Throws precondition unless m equals make_MbS(n, S, b) for some S and rational b.
MbSData recognise_MbS(const ModuleSpec& m);

/// A_i = e(n+1,i) + (h_i - b) for i in S and (h_i - b)(e(n+1,i) + 1) otherwise.
ShiftOperator A_operator(const ModuleSpec& m, int i);

struct SubmoduleReport {
  int n = 1;
  Rational b;
  /// W is spanned by the H_k with sum(k) >= threshold = (n+1)b - (n-1).
  long threshold = 0;
  long quotient_dim = 0;       // lattice count of indices outside W
  long quotient_binomial = 0;  // C((n+1)b + n, n)
  std::vector<Rational> lowest_weight;
  HBasisIndex lowest_weight_vector;
  bool lowest_weight_verified = false;
  int closure_bound = 0;  // closure of W checked for all indices with sum(k) <= bound
  long closure_checked = 0;
  bool closure_holds = false;

  bool in_submodule(const HBasisIndex& k) const;
};

struct SimplicityReport {
  bool simple = true;
  /// "generic-b", "S-proper", "sl2-Mprime" or "reducible".
  std::string reason;
  std::optional<SubmoduleReport> submodule;
};

/// Throws precondition when b is symbolic.
SimplicityReport is_simple(const NormalForm& nf);

/// Requires S = {1..n} and (n+1)b in N_0. closure_bound < 0 selects (n+1)b + 3.
SubmoduleReport proper_submodule(const NormalForm& nf, int closure_bound = -1);

struct Sl2SubmoduleReport {
  Rational b;
  Poly generator;  // Q = prod_{j=0}^{2b} (h + b - j)
  Poly highest_weight_vector;
  bool raising_identity = false;   // e12 o Q = Q o (h-b-1) sigma
  bool lowering_identity = false;  // e21 o Q = Q o (-(h+b+1) sigma^{-1})
  bool highest_weight_verified = false;
  bool matches_h_basis = false;    // Q equals H_{2b}
  long quotient_dim = 0;           // 2b + 1
};

/// The submodule Q * C[h] of M_b, isomorphic to M_{-b-1}. Requires 2b in N_0.
Sl2SubmoduleReport sl2_submodule(const Rational& b);

/// act(m, c2, 1) for a verified rank-1 spec. Throws precondition if the
/// result depends on h.
Poly central_character_sl2(const ModuleSpec& m);

struct ReductionStep {
  /// "lower" (by e(i,n+1)), "lateral" (by e(i,n+1)) or "lower-out" (by e(n+1,i) + 1).
  std::string move;
  int i = 0;
  int j = 0;  // target index of a lateral move
  HBasisIndex from;
  HBasisIndex to;
  Rational claimed;     // closed form
  Rational recomputed;  // coefficient of H_to after applying the operator to H_from
};

struct ReachabilityTrace {
  std::vector<ReductionStep> steps;
  bool all_coefficients_match() const;
};

/// A chain of moves from H_start down to H_{-1,...,-1} = 1 in the untwisted
/// representative. Throws precondition unless the module is simple and
/// not_found if no chain of at most step_bound moves exists.
ReachabilityTrace reachability_witness(const NormalForm& nf, const HBasisIndex& start, int step_bound = 64);

/// -(k_i+1)((n+1)b - k_i - sum_{j != i}(k_j+1)) (i is 1-based).
Rational lowering_coefficient(const HBasisIndex& k, int i, const Rational& b);

}  // namespace hfree
