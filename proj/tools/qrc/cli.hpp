// Copyright 2026 The qremote Authors
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

#ifndef QREMOTE_TOOLS_QRC_CLI_HPP
#define QREMOTE_TOOLS_QRC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qremote/protocols.hpp"

namespace qrc::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 1;
    int trials = 100;
    double tolerance = 1e-9;
    OutputFormat format = OutputFormat::Json;
    std::string output_path;  // empty: stdout
    bool verbose = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitIoFailure = 3;
inline constexpr int kMaxTrials = 1'000'000;

/// Raised when the report cannot be written.
class ReportIoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& subcommands();

/// Runs one scenario. `trace`, when non-null, receives the runtime step trace.
protocols::ProtocolReport run_scenario(const RunConfig& cfg, std::ostream* trace = nullptr);

/// True iff every bound check passed and fidelity >= 1 - tolerance.
bool report_passes(const protocols::ProtocolReport& report, double tolerance);

/// Serialized report. JSON fields, in order: name, seed, trials, ledger,
/// fidelity_min, entropies, bound_checks, elapsed_ms. CSV: a header, one
/// row per bound check and a summary row; timing is omitted.
std::string render_report(const protocols::ProtocolReport& report, const RunConfig& cfg, double elapsed_ms);

/// Writes to cfg.output_path, or to `fallback` when the path is empty.
void write_report(const protocols::ProtocolReport& report, const RunConfig& cfg, double elapsed_ms,
                  std::ostream& fallback);

/// Full command-line entry point; returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qrc::cli

#endif  // QREMOTE_TOOLS_QRC_CLI_HPP
