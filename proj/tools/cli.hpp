/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GYRO_TOOLS_CLI_HPP
#define GYRO_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gyro::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* out_dir_env = "GYRO_OUT_DIR";

/**
 * Runs one command line (without the program name).
 *
 * Writes `<command>.report.json` and any artifacts to the output directory
 * and a human-readable summary to `out`. Returns 0 when every check passes,
 * 1 when a verification failed and 2 on usage or input errors.
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gyro::cli

#endif  // GYRO_TOOLS_CLI_HPP
