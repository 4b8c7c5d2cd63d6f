#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hfree::cli {

/// Exit statuses shared by every subcommand.
enum Status : int {
  kOk = 0,
  kNegative = 1,  // not a module, not simple
  kInputError = 2,
};

/// Runs one subcommand; args excludes the program name. The report goes to
/// out, as "key: value" lines or, with --json, as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace hfree::cli
