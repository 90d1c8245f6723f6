#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/json_io.hpp"

namespace dlr::cli {

// Exit codes: 0 success, 1 verification failed, 2 bad input or usage,
// 3 an algorithm invariant failed, 4 strict CONGEST budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Recomputes every certificate of a document produced by one of the runners.
// Throws PreconditionError on malformed documents.
std::vector<Check> verify_document(const Json& doc);

}  // namespace dlr::cli
