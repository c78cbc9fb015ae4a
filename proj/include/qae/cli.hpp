// Command-line front end. Exit codes: 0 success, 1 numerical or
// verification failure, 2 usage or parse error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qae {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qae
