// Copyright (c) 2026 The phasemod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. dispatch() parses argv, prints the resolved
// configuration, runs one subcommand and returns the process exit code:
// 0 success, 1 runtime failure, 2 configuration error.

#include <iosfwd>
#include <span>
#include <string>

namespace phasemod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

int dispatch(std::span<const std::string> argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace phasemod::cli
