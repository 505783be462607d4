#pragma once

// Command-line front end. Exit codes: 0 success (all diagnostics pass),
// 1 error or usage problem, 2 the run completed and found violations.

namespace pathstat {

int run_cli(int argc, const char* const* argv);

}  // namespace pathstat
