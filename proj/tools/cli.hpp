#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaoscrypt::cli {

/// Process exit codes. Failures also print one line to the error stream:
///   chaoscrypt: error: <category>: <message>
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,        ///< unexpected failure
    kUsage = 2,           ///< unknown flag, missing or invalid argument value
    kIo = 3,              ///< unreadable input / unwritable output
    kMalformed = 4,       ///< malformed hex, JSON or CSV
    kKeyOutOfDomain = 5,  ///< encrypt/decrypt key outside the cipher's key space
    kDivergence = 6,      ///< the chaotic map diverged
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaoscrypt::cli
