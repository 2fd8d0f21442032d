#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symdyn::cli {

// Exit codes: 0 success, 1 domain error or failed check, 2 usage error or
// unreadable file, 3 malformed input file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symdyn::cli
