#pragma once

namespace swarmsim {

/// Command-line entry point; the binary's main() forwards here so tests
/// can drive the full CLI in-process.  Returns the process exit code:
/// 0 success, 2 usage/config errors, 3 when every trial of a campaign
/// failed.
int run_cli(int argc, const char* const* argv);

}  // namespace swarmsim
