// Copyright 2026 The superdiv Authors
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

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "superdiv/cli/config.hpp"
#include "superdiv/error.hpp"

namespace superdiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInvariant = 4;
inline constexpr int kExitInternal = 1;

int exit_code(ErrorCategory category);

// Runs one subcommand against a resolved configuration. Outputs are
// written only after every computation succeeded, together with
// manifest.json. Throws superdiv::Error.
void run_command(const std::string& command, const Settings& settings,
                 std::ostream& out, std::ostream& err);

// Full command line: `<command> [--config FILE] [--<key> VALUE]...`.
// `args` excludes the program name. Returns the process exit status and
// reports failures on `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace superdiv::cli
