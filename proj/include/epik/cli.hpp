#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epik {

// Command-line front end. Exit codes: 0 success / valid; 1 logical failure
// (invalid proof or model, countermodel found, failing sweep); 2 usage or
// input errors. Output is deterministic for fixed inputs.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace epik
