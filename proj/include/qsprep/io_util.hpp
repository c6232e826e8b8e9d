// Copyright 2026 The qsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSPREP_IO_UTIL_HPP_
#define QSPREP_IO_UTIL_HPP_

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "qsprep/errors.hpp"

namespace qsprep {

/// Shortest decimal string that round-trips the double exactly.  Used for all
/// CSV/text output so that repeated runs are byte-identical.
inline std::string format_double(double value) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw input_error("cannot open \"" + path + "\" for reading");
  }
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

/// Writes via a sibling temp file followed by an atomic rename, so a crash
/// mid-write never leaves a truncated output behind.
inline void write_file_atomic(const std::string &path, const std::string &content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw input_error("cannot open \"" + tmp.string() + "\" for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw input_error("short write to \"" + tmp.string() + "\"");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    throw input_error("cannot rename \"" + tmp.string() + "\" to \"" + path +
                      "\": " + ec.message());
  }
}

}  // namespace qsprep

#endif  // QSPREP_IO_UTIL_HPP_
