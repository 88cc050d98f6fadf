#pragma once
// Command-line surface.  Exit codes: 0 success, 2 configuration error
// (including unknown flags), 3 numeric or IO failure (including failed
// verification suites).

namespace cuelab {

int cli_main(int argc, char** argv);

}  // namespace cuelab
