#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hfree/classify.hpp"
#include "hfree/error.hpp"
#include "hfree/structure.hpp"
#include "hfree/tensor.hpp"

namespace hfree::cli {

namespace {

using Report = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::vector<std::string> mbs;
  std::string sl2;
  std::string b = "sym";
  std::string x;
  std::string f = "1";
  std::string kind;
  int k = 1;
  int degree_bound = 8;
  int closure_bound = -1;
  bool json = false;
};

// Failures that are not raised by the library itself.
struct InputFailure {
  std::string reason;
  std::string message;
};

void emit(const Report& r, bool json, std::ostream& out) {
  if (json) {
    out << r.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : r.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

int fail(Report r, int status, const std::string& reason, const std::string& message, bool json, std::ostream& out) {
  r["status"] = "error";
  r["reason"] = reason;
  r["message"] = message;
  emit(r, json, out);
  return status;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error(Errc::parse_error, what + ": not an integer: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

ParamValue parse_param(const std::string& text) {
  if (text == "sym") return std::nullopt;
  return parse_rational(text);
}

Sl2Kind parse_kind(const std::string& text) {
  if (text == "M") return Sl2Kind::M;
  if (text == "Mprime" || text == "M'") return Sl2Kind::Mprime;
  throw Error(Errc::bad_spec, "kind must be M or Mprime, got '" + text + "'");
}

// "n=2 S=1,2 b=sym", optionally with "a=a1,...,a_{n+1}" and "tau=1".
ModuleSpec spec_from_mbs(const std::vector<std::string>& raw) {
  std::vector<std::string> tokens;
  for (const auto& r : raw)
    for (const auto& t : split(r, ' '))
      if (!t.empty()) tokens.push_back(t);

  std::optional<int> n;
  std::string S_text, a_text;
  std::string b_text = "sym";
  bool tau = false;
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(Errc::bad_spec, "expected key=value in --mbs, got '" + t + "'");
    const std::string key = t.substr(0, eq);
    const std::string value = t.substr(eq + 1);
    if (key == "n") {
      n = parse_int(value, "n");
    } else if (key == "S") {
      S_text = value == "{}" ? "" : value;
    } else if (key == "b") {
      b_text = value;
    } else if (key == "a") {
      a_text = value;
    } else if (key == "tau") {
      if (value != "0" && value != "1" && value != "true" && value != "false")
        throw Error(Errc::bad_spec, "tau must be 0 or 1");
      tau = value == "1" || value == "true";
    } else {
      throw Error(Errc::bad_spec, "unknown key '" + key + "' in --mbs");
    }
  }
  if (!n || *n < 1) throw Error(Errc::bad_spec, "--mbs needs n >= 1");

  NormalForm nf;
  nf.a = TwistData::identity(*n);
  if (!a_text.empty()) {
    nf.a.a.clear();
    for (const auto& part : split(a_text, ',')) nf.a.a.push_back(parse_rational(part));
    if (nf.a.n() != *n) throw Error(Errc::bad_spec, "a needs n+1 entries");
    nf.a.validate();
  }
  for (const auto& part : split(S_text, ',')) {
    if (part.empty()) continue;
    const int i = parse_int(part, "S");
    if (i < 1 || i > *n) throw Error(Errc::bad_spec, "S entry " + part + " is outside 1.." + std::to_string(*n));
    nf.S.insert(i);
  }
  nf.b = param_poly(parse_param(b_text), *n);
  nf.tau = tau;
  return reconstruct(nf);
}

ModuleSpec load_spec(const Options& o) {
  const int given = int(!o.file.empty()) + int(!o.mbs.empty()) + int(!o.sl2.empty());
  if (given != 1) throw InputFailure{"usage", "give exactly one of --file, --mbs, --sl2"};
  ModuleSpec m;
  if (!o.file.empty()) {
    std::ifstream in(o.file, std::ios::binary);
    if (!in) throw InputFailure{"io", "cannot read " + o.file};
    std::ostringstream text;
    text << in.rdbuf();
    m = parse_spec_json(text.str());
  } else if (!o.mbs.empty()) {
    m = spec_from_mbs(o.mbs);
  } else {
    m = make_sl2(parse_kind(o.sl2), parse_param(o.b));
  }
  m.validate();
  return m;
}

Report::array_t rationals(const std::vector<Rational>& values) {
  Report::array_t out;
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::string pair_text(const TensorVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

void describe(Report& r, const NormalForm& nf) {
  r["a"] = rationals(nf.a.a);
  r["b"] = nf.b.str();
  Report::array_t S;
  for (int i : nf.S) S.push_back(i);
  r["S"] = S;
  r["tau"] = nf.tau;
}

// Reports the failing pairs and returns true when m is not a module.
bool report_if_invalid(Report& r, const ModuleSpec& m) {
  const auto violations = all_violations(m);
  if (violations.empty()) return false;
  r["status"] = "invalid";
  r["reason"] = "not-a-module";
  r["violating_pair"] = Report::array_t{violations.front().x.str(), violations.front().y.str()};
  r["difference"] = violations.front().difference.str();
  Report::array_t pairs;
  for (const auto& v : violations) pairs.push_back(v.x.str() + "," + v.y.str());
  r["violations"] = pairs;
  return true;
}

int cmd_verify(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  r["n"] = m.n;
  if (report_if_invalid(r, m)) return kNegative;
  r["status"] = "valid";
  return kOk;
}

int cmd_classify(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  if (report_if_invalid(r, m)) return kNegative;
  const NormalForm nf = classify(m);
  r["status"] = "classified";
  describe(r, nf);
  r["normal_form"] = nf.str();
  return kOk;
}

int cmd_act(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  if (o.x.empty()) throw InputFailure{"usage", "act needs --x"};
  const UExpression u = parse_uexpression(o.x, m.n);
  const Poly f = parse_poly(o.f, m.n);
  r["status"] = "ok";
  r["x"] = u.str();
  r["f"] = f.str();
  r["result"] = act(m, u, f).str();
  return kOk;
}

int cmd_simple(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  if (report_if_invalid(r, m)) return kNegative;
  const NormalForm nf = classify(m);
  const SimplicityReport rep = is_simple(nf);
  r["status"] = rep.simple ? "simple" : "not-simple";
  if (!rep.simple) r["reason"] = "not-simple";
  r["normal_form"] = nf.str();
  r["certificate"] = rep.reason;
  if (rep.submodule) {
    r["quotient_dim"] = rep.submodule->quotient_dim;
    r["lowest_weight"] = rationals(rep.submodule->lowest_weight);
    r["threshold"] = rep.submodule->threshold;
  }
  return rep.simple ? kOk : kNegative;
}

int cmd_submodule(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  if (report_if_invalid(r, m)) return kNegative;
  const NormalForm nf = classify(m);
  const SubmoduleReport rep = proper_submodule(nf, o.closure_bound);
  bool certified = rep.lowest_weight_verified && rep.closure_holds && rep.quotient_dim == rep.quotient_binomial;
  r["normal_form"] = nf.str();
  r["certificate"] = "H-basis-threshold";
  r["threshold"] = rep.threshold;
  r["quotient_dim"] = rep.quotient_dim;
  r["quotient_binomial"] = rep.quotient_binomial;
  r["lowest_weight"] = rationals(rep.lowest_weight);
  r["lowest_weight_vector"] = "H" + to_string(rep.lowest_weight_vector);
  r["lowest_weight_verified"] = rep.lowest_weight_verified;
  r["closure_bound"] = rep.closure_bound;
  r["closure_checked"] = rep.closure_checked;
  r["closure_holds"] = rep.closure_holds;
  if (nf.n() == 1) {
    const Sl2SubmoduleReport sl2 = sl2_submodule(rep.b);
    r["generator"] = sl2.generator.str();
    r["raising_identity"] = sl2.raising_identity;
    r["lowering_identity"] = sl2.lowering_identity;
    r["submodule_isomorphic_to"] = "M_" + to_string(Rational(-rep.b - 1));
    certified = certified && sl2.raising_identity && sl2.lowering_identity && sl2.highest_weight_verified;
  }
  r["status"] = certified ? "reducible" : "certificate-failed";
  if (!certified) r["reason"] = "certificate-failed";
  return certified ? kOk : kNegative;
}

int cmd_tensor(const Options& o, Report& r) {
  if (o.kind.empty()) throw InputFailure{"usage", "tensor needs --kind"};
  if (o.b == "sym") throw InputFailure{"usage", "tensor needs a rational --b"};
  const Sl2Kind kind = parse_kind(o.kind);
  const Rational b = parse_rational(o.b);
  r["kind"] = to_string(kind);
  r["b"] = to_string(b);
  r["k"] = o.k;
  bool certified = true;
  if (o.k == 1) {
    const L1Decomposition d = decompose_L1(kind, b, o.degree_bound);
    r["degree_bound"] = d.degree_bound;
    if (d.split) {
      const auto& s = *d.split;
      r["status"] = "split";
      r["summands"] = rationals(s.summands);
      r["summand_shifts"] = rationals(s.summand_shifts);
      r["generators"] = Report::array_t{pair_text(s.generator1), pair_text(s.generator2)};
      r["intertwining"] = Report::array_t{s.intertwining1, s.intertwining2};
      r["directness_scalar"] = to_string(s.directness_scalar);
      r["images_independent"] = s.images_independent;
      r["generates"] = s.generates;
      certified = s.intertwining1 && s.intertwining2 && s.images_independent && s.generates;
    } else {
      const auto& c = *d.nonsplit;
      r["status"] = "nonsplit";
      r["submodule"] = std::string(to_string(kind)) + "_" + to_string(c.sub_b);
      r["quotient"] = std::string(to_string(kind)) + "_" + to_string(c.quotient_b);
      r["submodule_generator"] = pair_text(c.phi(Poly::constant(1, 1)));
      r["submodule_intertwining"] = c.sub_intertwining;
      if (kind == Sl2Kind::Mprime) {
        r["generators_coincide"] = c.generators_coincide;
      } else {
        r["second_inside_first"] = c.second_inside_first;
      }
      r["quotient_p"] = c.quotient_spec.p[0].str();
      r["quotient_q"] = c.quotient_spec.q[0].str();
      r["quotient_matches"] = c.quotient_matches;
      r["no_section"] = c.no_section;
      r["jordan_holder"] = c.jordan_holder;
      certified = c.sub_intertwining && c.quotient_matches && c.no_section &&
                  (kind == Sl2Kind::Mprime ? c.generators_coincide : c.second_inside_first);
    }
  } else {
    const LkDecomposition d = decompose_Lk(kind, b, o.k, o.degree_bound);
    r["status"] = "split";
    r["summands"] = rationals(d.summands);
    r["guard"] = d.guard;
    r["iterated_checked"] = d.iterated_checked;
    if (d.iterated_checked) {
      r["iterated"] = rationals(d.iterated);
      r["iterated_matches"] = d.iterated_matches;
      certified = d.iterated_matches;
    }
  }
  if (!certified) {
    r["status"] = "certificate-failed";
    r["reason"] = "certificate-failed";
  }
  return certified ? kOk : kNegative;
}

int cmd_central(const Options& o, Report& r) {
  const ModuleSpec m = load_spec(o);
  if (report_if_invalid(r, m)) return kNegative;
  r["status"] = "ok";
  r["casimir"] = casimir_sl2().str();
  r["value"] = central_character_sl2(m).str();
  return kOk;
}

void add_input(CLI::App* sub, Options& o) {
  auto* file = sub->add_option("--file", o.file, "spec file {\"n\":..,\"p\":[..],\"q\":[..]}");
  auto* mbs = sub->add_option("--mbs", o.mbs, "normal form, e.g. n=2 S=1,2 b=sym [a=..] [tau=1]")->expected(1, 5);
  auto* sl2 = sub->add_option("--sl2", o.sl2, "M or Mprime");
  file->excludes(mbs)->excludes(sl2);
  mbs->excludes(sl2);
  sub->add_option("--b", o.b, "value of b for --sl2: sym or p/q");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Exact computations with rank-one U(h)-free sl(n+1)-modules", "hfree"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "emit one JSON object");

  auto* verify = app.add_subcommand("verify", "check every bracket relation exactly");
  add_input(verify, o);
  auto* classify_cmd = app.add_subcommand("classify", "normal form (a, b, S, tau)");
  add_input(classify_cmd, o);
  auto* act_cmd = app.add_subcommand("act", "apply an element of U(g) to a polynomial");
  add_input(act_cmd, o);
  act_cmd->add_option("--x", o.x, "expression such as e(1,2)*h(1) - 2*e(2,1)")->required();
  act_cmd->add_option("--f", o.f, "polynomial in b, h1..hn");
  auto* simple = app.add_subcommand("simple", "simplicity verdict with certificate");
  add_input(simple, o);
  auto* submodule = app.add_subcommand("submodule", "proper submodule and finite quotient");
  add_input(submodule, o);
  submodule->add_option("--closure-bound", o.closure_bound, "largest sum(k) checked for closure");
  auto* tensor = app.add_subcommand("tensor", "decompose N_b (x) L(k) for sl2");
  tensor->add_option("--kind", o.kind, "M or Mprime")->required();
  tensor->add_option("--b", o.b, "rational b")->required();
  tensor->add_option("--k", o.k, "highest weight of L(k)");
  tensor->add_option("--degree-bound", o.degree_bound, "monomial degree bound for the checks");
  auto* central = app.add_subcommand("central-character", "Casimir eigenvalue of an sl2 spec");
  add_input(central, o);

  Report r;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const bool json = std::find(args.begin(), args.end(), "--json") != args.end();
    return fail(std::move(r), kInputError, "usage", e.what(), json, out);
  }

  CLI::App* chosen = app.get_subcommands().front();
  r["command"] = chosen->get_name();
  int status = kOk;
  try {
    if (chosen == verify) status = cmd_verify(o, r);
    else if (chosen == classify_cmd) status = cmd_classify(o, r);
    else if (chosen == act_cmd) status = cmd_act(o, r);
    else if (chosen == simple) status = cmd_simple(o, r);
    else if (chosen == submodule) status = cmd_submodule(o, r);
    else if (chosen == tensor) status = cmd_tensor(o, r);
    else status = cmd_central(o, r);
  } catch (const InputFailure& e) {
    return fail(std::move(r), kInputError, e.reason, e.message, o.json, out);
  } catch (const Error& e) {
    return fail(std::move(r), kInputError, errc_name(e.code()), e.what(), o.json, out);
  }
  emit(r, o.json, out);
  return status;
}

}  // namespace hfree::cli
