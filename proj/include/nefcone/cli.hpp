#pragma once

// Command-line front end. Every command produces a report
//   {command, inputs, outputs, citations, exact, passed}
// printed as JSON (--json) or as a plain-text rendering of the same data.
// Exit codes: 0 pass, 1 mathematical failure or domain error, 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace nefcone::cli {

/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& reproduce_targets();

} // namespace nefcone::cli
