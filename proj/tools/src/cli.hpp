#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kslab::cli {

enum ExitCode { kOk = 0, kConfigInvalid = 2, kNumericalHalt = 3, kIoFailure = 4 };

/// Full command line without the program name, e.g. {"simulate", "--config", "run.json"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kslab::cli
