#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

#include "shs/io/scale_bundle.hpp"
#include "shs/scale.hpp"

namespace testing {

inline const shs::ScaleDefinition& scale() {
  static const shs::ScaleDefinition s = shs::io::load_scale_file(SHS_DEFAULT_SCALE_BUNDLE);
  return s;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("shs-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) { return shs::io::read_file(p); }

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout only; stderr goes to err_file
  std::string err;
};

/// Runs the shs binary with `args` (already shell-quoted) and captures output.
inline RunResult run_cli(const std::string& args) {
  TempDir tmp;
  const auto err_path = tmp / "stderr.txt";
  const std::string cmd = std::string("\"") + SHS_CLI_PATH + "\" " + args + " 2>\"" + err_path.string() + "\"";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_text(err_path);
  return r;
}

}  // namespace testing
