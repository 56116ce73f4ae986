// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 usage,
// parse or I/O error.
#ifndef VAQW_CLI_HPP
#define VAQW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vaqw/spectral.hpp"

namespace vaqw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "k_1,...,k_d,omega_1,...,omega_{s l}", one row per grid point, 17 significant digits.
void write_dispersion_csv(std::ostream& out, const DispersionGrid& grid);

}  // namespace vaqw

#endif  // VAQW_CLI_HPP
