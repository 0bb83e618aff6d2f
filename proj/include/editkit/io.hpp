// Copyright 2026 The EditKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDITKIT_IO_HPP_
#define EDITKIT_IO_HPP_

#include <string>
#include <vector>

namespace editkit {

// Whole-file read; throws std::runtime_error naming the path on failure.
std::string read_file(const std::string& path);

// Lines of a file, LF-separated; a trailing '\r' per line is stripped.
std::vector<std::string> read_lines(const std::string& path);

// Write-temp-then-rename, so consumers never observe partial files.
void atomic_write_file(const std::string& path, const std::string& contents);

// Shortest decimal form that parses back to the same double. Locale-free.
std::string format_double(double value);

// Fixed four decimal places, as used by metric reports.
std::string format_fixed4(double value);

std::vector<std::string> split_on(const std::string& line, char sep);

}  // namespace editkit

#endif  // EDITKIT_IO_HPP_
