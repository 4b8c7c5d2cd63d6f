#include "hfree/classify.hpp"

#include "hfree/error.hpp"

namespace hfree {

ParamValue NormalForm::b_value() const { return b.constant_value(); }

std::string NormalForm::str() const {
  return "a=" + a.str() + " b=" + b.str() + " S=" + to_string(S) + " tau=" + (tau ? "true" : "false");
}

ModuleSpec reconstruct(const NormalForm& nf) {
  ModuleSpec m = make_MbS(nf.n(), nf.S, nf.b);
  if (nf.tau) m = twist_tau(m);
  return twist_Fa(m, nf.a);
}

namespace {

// The h-linear part of an affine polynomial (terms of degree one in some h_i).
Poly h_part(const Poly& f) {
  Poly out(f.rank());
  for (const auto& [e, c] : f.terms()) {
    if (e[0] == 0 && Poly::monomial(f.rank(), e).total_degree() == 1) out.add_term(e, c);
  }
  return out;
}

Poly normalized(const Poly& f) { return (1 / f.leading_term().second) * f; }

// Candidate without scaling; the scaling is fitted afterwards.
struct Candidate {
  Poly b;
  IndexSet S;
  bool tau;
  TwistData a;
};

std::optional<NormalForm> fit(const ModuleSpec& w, const Candidate& cand) {
  NormalForm nf{cand.a, cand.b, cand.S, cand.tau};
  const ModuleSpec x = reconstruct(nf);
  TwistData c = TwistData::identity(w.n);
  for (int i = 0; i < w.n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (w.p[idx].is_zero() || x.p[idx].is_zero()) return std::nullopt;
    c.a[idx] = w.p[idx].leading_term().second / x.p[idx].leading_term().second;
  }
  nf.a = (c * cand.a).canonical();
  if (reconstruct(nf) != w) return std::nullopt;
  return nf;
}

// b and -b-1 label the same n = 1 module with S empty; prefer b >= -1/2, or a
// positive leading coefficient when b is symbolic.
bool preferred_label(const Poly& b) {
  if (const auto v = b.constant_value()) return *v * 2 >= -1;
  return b.leading_term().second > 0;
}

// Classifies a spec in which every p_i has positive degree in h_i.
NormalForm classify_untwisted(const ModuleSpec& w) {
  const int n = w.n;
  IndexSet S;
  for (int i = 1; i <= n; ++i) {
    if (deg(w.p[static_cast<std::size_t>(i - 1)], i) == 1) S.insert(i);
  }
  const Poly hb = hbar(n);
  std::vector<Candidate> candidates;
  if (!S.empty()) {
    const int i = *S.begin();
    const Poly pi = normalized(w.p[static_cast<std::size_t>(i - 1)]);
    if (pi.total_degree() == 1) {
      const Poly hp = h_part(pi);
      if (hp == hb) {
        candidates.push_back({pi - hb, S, false, TwistData::identity(n)});
      } else if (hp == Poly::h(n, i) && n > 1) {
        TwistData flip = TwistData::identity(n);
        for (int k = 0; k < n; ++k) flip.a[static_cast<std::size_t>(k)] = -1;
        IndexSet all;
        for (int k = 1; k <= n; ++k) all.insert(k);
        candidates.push_back({pi - Poly::h(n, i), all, true, flip});
      }
    }
  } else if (const auto fac = factor_affine(w.p[0])) {
    for (const auto& [factor, mult] : fac->factors) {
      if (h_part(factor) == hb) candidates.push_back({factor - hb, S, false, TwistData::identity(n)});
    }
  }

  std::vector<NormalForm> fits;
  for (const auto& cand : candidates) {
    if (auto nf = fit(w, cand)) fits.push_back(std::move(*nf));
  }
  if (fits.empty()) throw Error(Errc::internal, "no normal form reproduces the spec " + w.str());
  for (const auto& nf : fits) {
    if (n != 1 || !nf.S.empty() || preferred_label(nf.b)) return nf;
  }
  return fits.front();
}

}  // namespace

NormalForm classify(const ModuleSpec& m) {
  m.validate();
  const Verdict verdict = verify_module(m);
  if (!verdict.valid()) {
    throw Error(Errc::precondition, "not a module: bracket of " + verdict.violation->x.str() + " and " +
                                        verdict.violation->y.str() + " fails");
  }
  bool flipped = false;
  for (int k = 1; k <= m.n; ++k) flipped = flipped || deg(m.p[static_cast<std::size_t>(k - 1)], k) == 0;
  const ModuleSpec w = flipped ? twist_tau(m) : m;
  for (int k = 1; k <= w.n; ++k) {
    if (deg(w.p[static_cast<std::size_t>(k - 1)], k) < 1) throw Error(Errc::internal, "degree pattern outside the classified family");
  }
  NormalForm nf = classify_untwisted(w);
  if (flipped) {
    // tau F_a = F_{1/a} tau on tuples
    nf.a = nf.a.inverse().canonical();
    nf.tau = !nf.tau;
  }
  if (reconstruct(nf) != m) throw Error(Errc::internal, "normal form does not reproduce the spec");
  return nf;
}

bool isomorphic(const ModuleSpec& m1, const ModuleSpec& m2) {
  for (const auto* m : {&m1, &m2}) {
    m->validate();
    if (!verify_module(*m).valid()) throw Error(Errc::precondition, "isomorphic() needs verified specs");
  }
  return m1 == m2;
}

}  // namespace hfree
