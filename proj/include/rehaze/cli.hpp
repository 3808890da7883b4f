#ifndef REHAZE_CLI_HPP
#define REHAZE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rehaze::cli {

/// Entry point of the `rehaze` tool; args[0] is the program name.
/// Returns 0 on success, 1 on verification failure, 2 on usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rehaze::cli

#endif  // REHAZE_CLI_HPP
