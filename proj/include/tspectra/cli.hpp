#pragma once

namespace tspectra::cli {

inline constexpr const char* kToolVersion = "torus-spectra 0.1.0";

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 domain
/// error (one-line diagnostic on stderr), 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace tspectra::cli
