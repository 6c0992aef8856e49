// Command-line front end: subcommands for crossings, arm estimation,
// distances, detours, exponent fits over prior CSV output, and the
// deterministic validation suite.
#pragma once

namespace perc::cli {

int dispatch(int argc, const char* const* argv);

}  // namespace perc::cli
