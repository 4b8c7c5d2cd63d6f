#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hfree {

/// Failure categories shared by every module. The CLI maps these to reason codes.
enum class Errc {
  rank_mismatch,
  index_out_of_range,
  division_by_zero,
  zero_input,
  parse_error,
  bad_spec,
  precondition,
  not_found,
  internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Malformed polynomial or expression text; `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::parse_error, "at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hfree
