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

#include "qrc/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qremote/errors.hpp"

namespace qrc::cli {

namespace {

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

std::string render_json(const protocols::ProtocolReport& report, const RunConfig& cfg, double elapsed_ms) {
    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["ledger"] = {{"ebits", report.ledger.ebits_consumed},
                   {"cbits_a_to_b", report.ledger.cbits_a_to_b},
                   {"cbits_b_to_a", report.ledger.cbits_b_to_a}};
    j["fidelity_min"] = report.fidelity;
    j["entropies"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.entropies) j["entropies"][name] = value;
    j["bound_checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.bound_checks) {
        j["bound_checks"].push_back({{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"passed", c.passed}});
    }
    j["elapsed_ms"] = elapsed_ms;
    return j.dump(2) + "\n";
}

std::string render_csv(const protocols::ProtocolReport& report, const RunConfig& cfg) {
    std::ostringstream out;
    out << "record,name,measured,bound,passed,ebits,cbits_a_to_b,cbits_b_to_a\n";
    for (const auto& c : report.bound_checks) {
        out << "check," << c.name << ',' << format_number(c.measured) << ',' << format_number(c.bound) << ','
            << (c.passed ? "true" : "false") << ",,,\n";
    }
    out << "summary," << report.name << ',' << format_number(report.fidelity) << ','
        << format_number(1.0 - cfg.tolerance) << ',' << (report_passes(report, cfg.tolerance) ? "true" : "false")
        << ',' << report.ledger.ebits_consumed << ',' << report.ledger.cbits_a_to_b << ','
        << report.ledger.cbits_b_to_a << '\n';
    return out.str();
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{
        "teleport-state", "teleport-unitary", "control-teleport", "dense-coding",          "ebit-bound",
        "nogo-trivial-g1", "g1-transfer",     "independence",     "orthogonality-witness", "decompose",
    };
    return names;
}

bool report_passes(const protocols::ProtocolReport& report, double tolerance) {
    return report.all_passed() && report.fidelity >= 1.0 - tolerance;
}

std::string render_report(const protocols::ProtocolReport& report, const RunConfig& cfg, double elapsed_ms) {
    return cfg.format == OutputFormat::Json ? render_json(report, cfg, elapsed_ms) : render_csv(report, cfg);
}

void write_report(const protocols::ProtocolReport& report, const RunConfig& cfg, double elapsed_ms,
                  std::ostream& fallback) {
    const std::string text = render_report(report, cfg, elapsed_ms);
    if (cfg.output_path.empty()) {
        fallback << text;
        fallback.flush();
        if (!fallback) throw ReportIoError("failed to write report to the output stream");
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ReportIoError("cannot open '" + cfg.output_path + "' for writing");
    file << text;
    file.close();
    if (!file) throw ReportIoError("failed writing '" + cfg.output_path + "'");
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "json";

    CLI::App app{"Simulate and verify remote implementation of unitaries over LOCC", "qrc"};
    app.require_subcommand(1);
    for (const auto& name : subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--seed", cfg.seed, "Base seed (QRC_SEED overrides)");
        sub->add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::Range(1, kMaxTrials));
        sub->add_option("--tolerance", cfg.tolerance, "Fidelity tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("-o,--output", cfg.output_path, "Report path (default stdout)");
        sub->add_flag("-v,--verbose", cfg.verbose, "Emit the step trace on stderr");
    }

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadArguments;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

    if (const char* env = std::getenv("QRC_SEED"); env != nullptr && *env != '\0') {
        const std::string_view text(env);
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            err << "QRC_SEED must be an unsigned integer, got '" << text << "'\n";
            return kExitBadArguments;
        }
        cfg.seed = seed;
    }

    const auto start = std::chrono::steady_clock::now();
    protocols::ProtocolReport report;
    try {
        report = run_scenario(cfg, cfg.verbose ? &err : nullptr);
    } catch (const qrc::Error& e) {
        err << "scenario '" << cfg.subcommand << "' failed: " << e.what() << '\n';
        return kExitChecksFailed;
    }
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    try {
        write_report(report, cfg, elapsed_ms, out);
    } catch (const ReportIoError& e) {
        err << e.what() << '\n';
        return kExitIoFailure;
    }
    return report_passes(report, cfg.tolerance) ? kExitOk : kExitChecksFailed;
}

}  // namespace qrc::cli
