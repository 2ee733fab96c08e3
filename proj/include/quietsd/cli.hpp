// Copyright 2026 The QuietSD Authors. All Rights Reserved.
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

#ifndef QUIETSD_CLI_HPP_
#define QUIETSD_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace quietsd::cli {

// Entry point shared by the quietsd executable and the tests. args excludes
// the program name. CSV goes to --out (stdout when "-"), the JSON summary to
// --summary, or next to --out as <out>.json, or to err when both are absent.
// Returns 0 on success; invalid parameters print one "error: ..." line to err
// and return 2.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace quietsd::cli

#endif  // QUIETSD_CLI_HPP_
