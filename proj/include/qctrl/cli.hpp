// cli.hpp: the `qctrl` command line, callable in-process.
//
//   qctrl analyze <file> [--tol-zero X] [--tol-degeneracy Y] [--json|--text]
//   qctrl demo lambda|chain|uniform-chain [--n N] [--json|--text]
//   qctrl closure <file> [--tol-zero X] [--tol-degeneracy Y]
//
// Exit codes: 0 success, 1 unexpected failure, 2 malformed input or usage,
// 3 validation failure, 4 inconsistent evidence.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace qctrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitInconsistent = 4;

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads QCTRL_TOL_ZERO / QCTRL_TOL_DEGENERACY from the process environment.
std::optional<std::string> process_env(const std::string& name);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace qctrl::cli
