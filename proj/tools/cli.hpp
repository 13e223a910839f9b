#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discjam::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_movable = 2;

// Runs one command line (arguments after the program name). Reports go to
// `out`, diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Applies the DISCJAM_OUTPUT_DIR override to a relative output path.
std::string resolve_output_path(const std::string& path);

} // namespace discjam::cli
