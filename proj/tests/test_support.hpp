#pragma once

#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>

#include "srt/error.hpp"

namespace srt::test {

/// Runs fn and checks that it throws srt::Error with the given code.
template <class Fn>
void check_error(ErrorCode expected, Fn&& fn) {
  bool thrown = false;
  try {
    fn();
  } catch (const Error& e) {
    thrown = true;
    CHECK_MESSAGE(e.code() == expected, "got error code '" << to_string(e.code()) << "': " << e.what());
  }
  CHECK_MESSAGE(thrown, "expected an error with code '" << to_string(expected) << "'");
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("srt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace srt::test
