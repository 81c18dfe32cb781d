#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scatterlab {

// Command-line driver. Subcommands: test, search, probe, embed, certify
// (sl|sp|cases), sieve, families. Exit codes: 0 positive outcome, 1 negative
// verdict (not scattered / unresolved rows / failed certificates), 2 usage or
// runtime error. Reports print as a JSON envelope on stdout; --out writes the
// bare result payload (stable bytes, no timing) for golden comparisons.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

extern const char* kCliVersion;

} // namespace scatterlab
