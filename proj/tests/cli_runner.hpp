#pragma once

// Runs the blockpinv executable and captures its stdout and exit code.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace blockpinv::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;

  // Parses `key = value` report lines (first occurrence wins).
  std::map<std::string, std::string> report() const {
    std::map<std::string, std::string> kv;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      const auto pos = line.find(" = ");
      if (pos == std::string::npos) continue;
      kv.emplace(line.substr(0, pos), line.substr(pos + 3));
    }
    return kv;
  }
};

inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BLOCKPINV_CLI) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string data_file(const std::string& name) {
  return std::string(BLOCKPINV_TEST_DATA) + "/" + name;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("blockpinv_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace blockpinv::testing
