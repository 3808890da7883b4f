#ifndef REHAZE_CONFIG_HPP
#define REHAZE_CONFIG_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rehaze::config {

/// Line-oriented `key = value` file. Blank lines and lines starting with '#'
/// are ignored; underscores in keys are read as dashes. Entries keep file order.
std::vector<std::pair<std::string, std::string>> read(const std::filesystem::path& path);

/// Rewrites a command line so config values act as defaults beneath explicit
/// flags: `prog sub --config f.conf --seed 3` becomes
/// `prog sub --key=value ... --seed 3`. Requires last-value-wins options.
std::vector<std::string> inline_config(const std::vector<std::string>& args);

}  // namespace rehaze::config

#endif  // REHAZE_CONFIG_HPP
