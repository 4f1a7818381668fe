#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace chromhopf::cli {

/// Exit codes: 0 success or verified, 1 verified false, 2 usage or input error.
enum ExitCode : int { ok = 0, verified_false = 1, usage_error = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,3,5" or "{1,3,5}".
std::set<int> parse_int_set(std::string_view text);
/// "{1,2,4}" or "{1,2},{8,16}".
std::vector<std::set<int>> parse_blocks(std::string_view text);

} // namespace chromhopf::cli
