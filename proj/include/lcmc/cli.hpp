// Copyright 2026 The LCMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LCMC_CLI_HPP_
#define LCMC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace lcmc::cli {

/// Process exit codes of the `lcmc` tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputUnreadable = 2,
  kBackendFailure = 3,
  kLayerAbsent = 4,
  kNoImages = 5,
  kWrongVariant = 6,
  kIndexOutOfRange = 7,
  kDimensionMismatch = 8,
  kInvalidArgument = 9,
  kInvalidContainer = 10,
  kExternalCodecUnavailable = 11,
  kAllImagesFailed = 12,
};

/// Runs the tool with `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcmc::cli

#endif  // LCMC_CLI_HPP_
