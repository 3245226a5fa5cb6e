#pragma once

// Runs the symrd executable through the shell and captures stdout.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace symrd::test {

struct CliResult {
  int status = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SYMRD_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string data_file(const std::string& name) { return std::string(SYMRD_DATA_DIR) + "/" + name; }

}  // namespace symrd::test
