#include "hfree/rational.hpp"

#include <cctype>

#include "hfree/error.hpp"

namespace hfree {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::rank_mismatch: return "rank-mismatch";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::zero_input: return "zero-input";
    case Errc::parse_error: return "parse-error";
    case Errc::bad_spec: return "bad-spec";
    case Errc::precondition: return "precondition";
    case Errc::not_found: return "not-found";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num)) throw ParseError(0, "expected integer or p/q rational, got '" + std::string(text) + "'");
  if (!all_digits(den)) throw ParseError(slash + 1, "malformed denominator in '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError(slash + 1, "zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool is_natural(const Rational& r) { return is_integer(r) && r >= 0; }

}  // namespace hfree
