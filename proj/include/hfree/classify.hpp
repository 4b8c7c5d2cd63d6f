#pragma once

// Normal forms (a, b, S, tau) of verified module specs and the isomorphism test.

#include <string>

#include "hfree/modules.hpp"

namespace hfree {

struct NormalForm {
  TwistData a;  // canonical: a_{n+1} = 1
  Poly b;       // free of h; a rational constant or an expression in the parameter
  IndexSet S;
  bool tau = false;

  int n() const { return a.n(); }
  /// Rational value of b, or nullopt when b involves the parameter.
  ParamValue b_value() const;
  std::string str() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// make_MbS(n, S, b), twisted by tau first when the flag is set, then by F_a.
ModuleSpec reconstruct(const NormalForm& nf);

/// Throws precondition on input that fails verify_module, and internal if the
/// recovered normal form does not reproduce the input.
NormalForm classify(const ModuleSpec& m);

/// True iff both verified specs have identical (p, q) tuples.
bool isomorphic(const ModuleSpec& m1, const ModuleSpec& m2);

}  // namespace hfree
