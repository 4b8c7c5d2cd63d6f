#pragma once

// Tensor products of rank-one sl2-modules N_b (N = M or Mprime) with the
// finite-dimensional simple modules L(k).

#include <optional>
#include <string>
#include <vector>

#include "hfree/modules.hpp"

namespace hfree {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// L(k) on the weight basis v_0..v_k: h v_j = ((k-2j)/2) v_j, e21 v_j = v_{j+1},
/// e12 v_j = j(k-j+1) v_{j-1}. Column j of a matrix is the image of v_j.
struct FinDimModule {
  int k = 0;
  RationalMatrix e12, e21, h;

  int dim() const { return k + 1; }
  const RationalMatrix& matrix(const BasisElement& x) const;
};

FinDimModule make_L(int k);

/// [e12,e21] = 2h, [h,e12] = e12 and [h,e21] = -e21 as exact matrix identities.
bool relations_hold(const FinDimModule& L);

/// Coordinates (f_0, ..., f_k) of sum_j f_j (x) v_j; for L(1) this is the pair (f, g).
using TensorVector = std::vector<Poly>;

/// Operator matrix of x on N (x) L: entry (i,j) maps the v_j coordinate to the v_i coordinate.
using OperatorMatrix = std::vector<std::vector<ShiftOperator>>;

OperatorMatrix tensor_operator(const ModuleSpec& m, const FinDimModule& L, const BasisElement& x);
TensorVector apply_tensor(const OperatorMatrix& op, const TensorVector& v);

/// The sl2 relations on N (x) L as exact identities between operator matrices.
bool tensor_relations_hold(const ModuleSpec& m, const FinDimModule& L);

/// Componentwise formulas for N_b (x) L(1) written out directly.
TensorVector tensor_action(Sl2Kind kind, const ParamValue& b, const BasisElement& x, const TensorVector& v);

/// F -> (first * F(h+1/2), second * F(h-1/2)) from N_{source_b} into N_b (x) L(1).
struct PhiMap {
  Rational source_b;
  Poly first;
  Poly second;

  TensorVector operator()(const Poly& f) const;
};

/// x . Phi(h^e) = Phi(x . h^e) for x in {h, e12, e21} and every e <= degree_bound.
bool intertwines(Sl2Kind kind, const Rational& b, const PhiMap& phi, int degree_bound);

struct SplitCertificate {
  std::vector<Rational> summand_shifts;  // {-1/2, +1/2}
  std::vector<Rational> summands;        // {b - 1/2, b + 1/2}
  PhiMap phi1, phi2;
  TensorVector generator1, generator2;   // phi1(1), phi2(1)
  bool intertwining1 = false, intertwining2 = false;
  Rational directness_scalar;            // 2b + 1
  bool images_independent = false;       // phi1, phi2 images up to the bound are jointly independent
  bool generates = false;                // (h^e, 0) and (0, h^e), e <= bound, lie in the sum of the images
};

struct NonsplitCertificate {
  Rational sub_b;       // 0
  Rational quotient_b;  // -1
  PhiMap phi;           // N_0 -> N_{-1/2} (x) L(1)
  bool sub_intertwining = false;
  bool generators_coincide = false;  // Mprime: both candidate generators agree
  bool second_inside_first = false;  // M: phi2(f) = phi1(h f)
  ModuleSpec quotient_spec;          // action induced on the quotient
  bool quotient_matches = false;     // quotient_spec == N_{-1} and the map intertwines up to the bound
  bool no_section = false;           // no module section N_{-1} -> N_{-1/2} (x) L(1) up to the bound
  std::vector<std::string> jordan_holder;
};

struct L1Decomposition {
  Sl2Kind kind = Sl2Kind::M;
  Rational b;
  int degree_bound = 8;
  std::optional<SplitCertificate> split;        // 2b != -1
  std::optional<NonsplitCertificate> nonsplit;  // 2b == -1
};

L1Decomposition decompose_L1(Sl2Kind kind, const Rational& b, int degree_bound = 8);

struct LkDecomposition {
  std::vector<Rational> summands;  // b + (k-2i)/2, i = 0..k
  /// The hypothesis that was enforced. For k >= 2 it is 2b not an integer, which
  /// implies both 2b not in N_0 and b + (k-2i)/2 not an integer for every i.
  std::string guard;
  bool iterated_checked = false;   // k <= 4
  std::vector<Rational> iterated;  // sorted multiset from the L(1) recursion
  bool iterated_matches = false;
};

/// Requires 2b not an integer for k >= 2 and 2b != -1 for k = 1.
LkDecomposition decompose_Lk(Sl2Kind kind, const Rational& b, int k, int degree_bound = 8);

}  // namespace hfree
