#pragma once

#include "decaylab/config.hpp"

#include <iosfwd>

namespace decaylab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitSolver = 3,
    kExitRange = 4,
    kExitData = 5,
};

/// Entry point of the decaylab tool; argv[0] is the program name. Results go
/// to the configured output (or `out`), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_survival(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_transitions(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace decaylab::cli
