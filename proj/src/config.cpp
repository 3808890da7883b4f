#include "rehaze/config.hpp"

#include <algorithm>
#include <fstream>

#include "rehaze/errors.hpp"

namespace rehaze::config {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path.string() + "'");
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw IoError(path.string() + ":" + std::to_string(number) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty() || key == "config") {
            throw IoError(path.string() + ":" + std::to_string(number) + ": invalid key");
        }
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return entries;
}

std::vector<std::string> inline_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        std::string path;
        if (a == "--config") {
            if (i + 1 >= args.size()) {
                throw IoError("--config needs a path");
            }
            path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        } else {
            rest.push_back(a);
            continue;
        }
        for (const auto& [key, value] : read(path)) {
            from_file.push_back("--" + key + "=" + value);
        }
    }
    if (from_file.empty()) {
        return rest;
    }
    // Config flags go right after the subcommand, ahead of explicit flags.
    const auto sub = std::find_if(rest.begin() + (rest.empty() ? 0 : 1), rest.end(),
                                  [](const std::string& s) { return s.empty() || s.front() != '-'; });
    const auto insert_at = sub == rest.end() ? rest.end() : sub + 1;
    rest.insert(insert_at, from_file.begin(), from_file.end());
    return rest;
}

}  // namespace rehaze::config
