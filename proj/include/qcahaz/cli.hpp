#ifndef QCAHAZ_CLI_HPP
#define QCAHAZ_CLI_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qcahaz
{

/// Process exit codes.
enum exit_code : int
{
    exit_clean   = 0,
    exit_finding = 1,
    exit_usage   = 2
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data) noexcept;

/// Runs the command line `args` (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcahaz

#endif  // QCAHAZ_CLI_HPP
