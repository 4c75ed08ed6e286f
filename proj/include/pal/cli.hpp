#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pal {

/// Exit codes: 0 pass, 1 fail with witness, 2 invalid input,
/// 3 theorem inconsistent, 4 out of hypothesis.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pal
