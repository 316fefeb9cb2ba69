// Copyright 2026 The R1D Authors. All Rights Reserved.
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

#ifndef R1D_CLI_H_
#define R1D_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace r1d::cli {

inline constexpr const char* kVersion = "1.0.0";

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,         // bad flags or out-of-range parameters
  kIo = 3,
  kSizeCap = 4,       // oracle refused the instance
  kConvergence = 5,   // power iteration did not converge
  kDegenerate = 6,    // evaluation metric undefined
  kParse = 7,         // malformed input file
  kDomain = 8,        // input data outside the domain (negative, all zero)
  kIndex = 9,
  kContract = 10,
};

// Runs one command. args[0] is the program name. Result documents and
// summaries go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace r1d::cli

#endif  // R1D_CLI_H_
