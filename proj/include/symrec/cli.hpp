#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symrec/recommender.hpp"

namespace symrec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Runs one invocation; `args` excludes the program name. `in` backs
// `--matrix -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Three-part text block: possible disorders, best symptoms (with the S1/S0
// fallbacks), and the symptom/disorder pairs.
std::string format_recommendation(const Recommendation& rec);

}  // namespace symrec::cli
