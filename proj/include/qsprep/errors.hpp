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

#ifndef QSPREP_ERRORS_HPP_
#define QSPREP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qsprep {

/// Malformed user-supplied data: bad pattern strings, unreadable files,
/// non-unitary explicit matrices, out-of-range parameters.  The CLI maps this
/// to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string &what) : std::runtime_error(what) {}
};

/// A self-check that can only fail through a bug or a numerically impossible
/// request (e.g. a compiled circuit that does not reproduce its own input).
/// The CLI maps this to exit code 3.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string &what) : std::logic_error(what) {}
};

}  // namespace qsprep

#endif  // QSPREP_ERRORS_HPP_
