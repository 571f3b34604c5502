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

// Scenario runners behind each qrc subcommand. Every scenario draws its
// randomness from one generator seeded with RunConfig::seed, so reports are
// reproducible for a fixed seed and trial count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include "qrc/cli.hpp"
#include "qremote/errors.hpp"

namespace qrc::cli {

namespace {

using bounds::Direction;
using bounds::make_check;
using linalg::Complex;
using linalg::CVector;
using locc::LoccRuntime;
using locc::PartyId;
using locc::ResourceLedger;
using ops::PauliIndex;
using ops::Rng;
using protocols::ProtocolReport;

// Records the ledger of every run and flags runs whose ledger differs from the first.
class LedgerTracker {
   public:
    void observe(const ResourceLedger& ledger) {
        if (!first_) {
            first_ = ledger;
        } else if (!(*first_ == ledger)) {
            ++mismatches_;
        }
    }
    ResourceLedger ledger() const { return first_.value_or(ResourceLedger{}); }
    int mismatches() const { return mismatches_; }

   private:
    std::optional<ResourceLedger> first_;
    int mismatches_ = 0;
};

void add_ledger_checks(ProtocolReport& report, const LedgerTracker& tracker, const ResourceLedger& expected) {
    const ResourceLedger& l = report.ledger;
    report.bound_checks.push_back(make_check("ledger_ebits", l.ebits_consumed, Direction::Equal, expected.ebits_consumed, 0.0));
    report.bound_checks.push_back(make_check("ledger_cbits_a_to_b", l.cbits_a_to_b, Direction::Equal, expected.cbits_a_to_b, 0.0));
    report.bound_checks.push_back(make_check("ledger_cbits_b_to_a", l.cbits_b_to_a, Direction::Equal, expected.cbits_b_to_a, 0.0));
    report.bound_checks.push_back(make_check("ledger_consistent_across_trials", tracker.mismatches(), Direction::Equal, 0.0, 0.0));
}

void add_fidelity_check(ProtocolReport& report, const RunConfig& cfg) {
    report.bound_checks.push_back(make_check("fidelity_min", report.fidelity, Direction::AtLeast, 1.0, cfg.tolerance));
}

void add_lower_bounds(ProtocolReport& report) {
    auto lower = bounds::check_lower_bounds(report.ledger);
    report.bound_checks.insert(report.bound_checks.end(), lower.begin(), lower.end());
}

ProtocolReport teleport_state_scenario(const RunConfig& cfg, std::ostream* trace) {
    Rng rng(cfg.seed);
    ProtocolReport report;
    report.name = "teleport-state";
    LedgerTracker tracker;
    const std::array<linalg::Label, 1> dst{"dst"};
    for (int t = 0; t < cfg.trials; ++t) {
        const CVector psi = ops::haar_state(rng, 2);
        LoccRuntime rt = LoccRuntime::enumerating();
        rt.set_trace(trace);
        rt.add_qubit(PartyId::Alice, "src", psi[0], psi[1]);
        rt.distribute_bell_pair("alice_half", "dst");
        protocols::teleport_state(rt, "src", "dst");
        for (const auto& b : rt.branches()) {
            report.fidelity = std::min(report.fidelity, b.state.reduced(dst).expectation(psi));
        }
        report.branches = static_cast<int>(rt.branches().size());
        tracker.observe(rt.ledger());
    }
    report.ledger = tracker.ledger();
    add_ledger_checks(report, tracker, {1, 2, 0});
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport teleport_unitary_scenario(const RunConfig& cfg, std::ostream* trace) {
    Rng rng(cfg.seed);
    ProtocolReport report;
    report.name = "teleport-unitary";
    LedgerTracker tracker;
    int min_branches = std::numeric_limits<int>::max();
    for (int t = 0; t < cfg.trials; ++t) {
        const auto u = ops::haar_unitary(rng, 2);
        const CVector psi = ops::haar_state(rng, 2);
        LoccRuntime rt = LoccRuntime::enumerating();
        rt.set_trace(trace);
        const auto labels = protocols::prepare_bidirectional(rt, psi);
        const auto run = protocols::bidirectional_u_teleport(rt, u, labels.beta);
        report.fidelity = std::min(report.fidelity, run.fidelity);
        min_branches = std::min(min_branches, run.branches);
        tracker.observe(run.ledger);
    }
    report.ledger = tracker.ledger();
    report.branches = min_branches;
    add_lower_bounds(report);
    report.bound_checks.push_back(bounds::check_upper_bound(report.ledger));
    add_ledger_checks(report, tracker, {2, 2, 2});
    report.bound_checks.push_back(make_check("branches_per_run", min_branches, Direction::Equal, 16.0, 0.0));
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport control_teleport_scenario(const RunConfig& cfg, std::ostream* trace) {
    Rng rng(cfg.seed);
    const auto enc = protocols::ControlEncoding::paulis();
    ProtocolReport report;
    report.name = "control-teleport";
    LedgerTracker tracker;
    for (int t = 0; t < cfg.trials; ++t) {
        const CVector psi = ops::haar_state(rng, 2);
        for (std::size_t k = 0; k < enc.size(); ++k) {
            LoccRuntime rt = LoccRuntime::enumerating();
            rt.set_trace(trace);
            rt.add_qubit(PartyId::Bob, "beta", psi[0], psi[1]);
            for (std::size_t j = 0; j < enc.control_qubits(); ++j) {
                rt.distribute_bell_pair("alice_c" + std::to_string(j), "bob_c" + std::to_string(j));
            }
            const auto run = protocols::control_state_teleport(rt, enc, k, "beta");
            report.fidelity = std::min(report.fidelity, run.fidelity);
            report.branches = run.branches;
            tracker.observe(run.ledger);
        }
    }
    report.ledger = tracker.ledger();
    add_lower_bounds(report);
    add_ledger_checks(report, tracker, {2, 4, 0});
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport dense_coding_scenario(const RunConfig& cfg, std::ostream*) {
    ProtocolReport report;
    report.name = "dense-coding";
    LedgerTracker tracker;
    for (int mu = 0; mu < 4; ++mu) {
        const auto result = protocols::dense_coding_bound_demo(PauliIndex(mu));
        const std::string suffix = "_mu_" + std::to_string(mu);
        report.bound_checks.push_back(make_check("decoded" + suffix, result.decoded, Direction::Equal, mu, 0.0));
        report.bound_checks.push_back(make_check("decode_probability" + suffix, result.correct_probability,
                                                 Direction::Equal, 1.0, cfg.tolerance));
        report.fidelity = std::min(report.fidelity, result.report.fidelity);
        report.branches = result.branches;
        tracker.observe(result.report.ledger);
    }
    report.ledger = tracker.ledger();
    add_lower_bounds(report);
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport ebit_bound_scenario(const RunConfig& cfg, std::ostream*) {
    const auto result = protocols::entanglement_bound_demo();
    ProtocolReport report = result.report;
    report.name = "ebit-bound";
    for (std::size_t i = 0; i < result.per_branch.size(); ++i) {
        char key[32];
        std::snprintf(key, sizeof(key), "E_branch_%02zu", i);
        report.entropies[key] = result.per_branch[i].entanglement;
    }
    add_lower_bounds(report);
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport nogo_scenario(const RunConfig& cfg, std::ostream*) {
    Rng rng(cfg.seed);
    ProtocolReport report;
    report.name = "nogo-trivial-g1";
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const CVector chi = ops::haar_state(rng, 8);
        const CVector psi = ops::haar_state(rng, 2);
        const CVector psi_prime{-std::conj(psi[1]), std::conj(psi[0])};
        const auto u = ops::haar_unitary(rng, 2);
        const auto r = protocols::trivial_g1_nogo_check(chi, psi, psi_prime, u);
        lo = std::min(lo, r.deficit);
        hi = std::max(hi, r.deficit);
    }
    report.bound_checks.push_back(make_check("deficit_min", lo, Direction::Equal, 1.0, 1e-12));
    report.bound_checks.push_back(make_check("deficit_max", hi, Direction::Equal, 1.0, 1e-12));
    return report;
}

ProtocolReport g1_transfer_scenario(const RunConfig& cfg, std::ostream*) {
    Rng rng(cfg.seed);
    ProtocolReport report;
    report.name = "g1-transfer";
    double purity = 1.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto r = protocols::g1_state_transfer_check(ops::haar_state(rng, 2));
        purity = std::min(purity, r.purity_alpha);
        report.fidelity = std::min(report.fidelity, r.transfer_fidelity);
        report.branches = r.branches;
    }
    report.bound_checks.push_back(make_check("alpha_purity_min", purity, Direction::AtLeast, 1.0, cfg.tolerance));
    add_fidelity_check(report, cfg);
    return report;
}

ProtocolReport independence_scenario(const RunConfig& cfg, std::ostream*) {
    Rng rng(cfg.seed);
    const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(cfg.trials)))));
    std::vector<ops::UnitaryGate> us;
    std::vector<CVector> psis;
    for (int i = 0; i < side; ++i) us.push_back(ops::haar_unitary(rng, 2));
    for (int i = 0; i < side; ++i) psis.push_back(ops::haar_state(rng, 2));
    const auto r = protocols::ancilla_independence_check(us, psis);

    ProtocolReport report;
    report.name = "independence";
    report.branches = r.branches_per_configuration;
    report.bound_checks.push_back(make_check("ancilla_deviation_max", r.max_deviation, Direction::AtMost, 0.0, 1e-9));
    report.bound_checks.push_back(
        make_check("ancilla_factor_residual_max", r.max_factor_residual, Direction::AtMost, 0.0, 1e-9));
    return report;
}

ProtocolReport orthogonality_scenario(const RunConfig& cfg, std::ostream*) {
    constexpr int kSamples = 64;
    Rng rng(cfg.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double distinct_range_min = std::numeric_limits<double>::infinity();
    double phase_range_max = 0.0;
    int distinct_proportional = 0;
    int phase_proportional = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto u = ops::haar_unitary(rng, 2);
        const auto v = ops::haar_unitary(rng, 2);
        const auto w = protocols::control_orthogonality_witness(u, v, kSamples, rng);
        distinct_range_min = std::min(distinct_range_min, w.range);
        distinct_proportional += w.proportional ? 1 : 0;

        const Complex phase = std::polar(1.0, angle(rng));
        const ops::UnitaryGate u_phase(phase * u.matrix());
        const auto wp = protocols::control_orthogonality_witness(u, u_phase, kSamples, rng);
        phase_range_max = std::max(phase_range_max, wp.range);
        phase_proportional += wp.proportional ? 1 : 0;
    }
    ProtocolReport report;
    report.name = "orthogonality-witness";
    report.bound_checks.push_back(make_check("range_min_distinct", distinct_range_min, Direction::AtLeast, 1e-3, 0.0));
    report.bound_checks.push_back(make_check("proportional_distinct", distinct_proportional, Direction::Equal, 0.0, 0.0));
    report.bound_checks.push_back(make_check("range_max_phase_related", phase_range_max, Direction::AtMost, 1e-10, 0.0));
    report.bound_checks.push_back(
        make_check("proportional_phase_related", phase_proportional, Direction::Equal, cfg.trials, 0.0));
    return report;
}

ProtocolReport decompose_scenario(const RunConfig& cfg, std::ostream*) {
    Rng rng(cfg.seed);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto u = ops::haar_unitary(rng, 2);
        worst = std::max(worst, (ops::pauli_decompose(u.matrix()).reconstruct() - u.matrix()).max_abs());
    }
    const auto h = ops::pauli_decompose(ops::hadamard().matrix());
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> expected{0.0, s, 0.0, s};
    double h_err = 0.0;
    for (int mu = 0; mu < 4; ++mu) h_err = std::max(h_err, std::abs(h.alpha[mu] - expected[mu]));

    ProtocolReport report;
    report.name = "decompose";
    report.bound_checks.push_back(make_check("reconstruction_error_max", worst, Direction::AtMost, 1e-11, 0.0));
    report.bound_checks.push_back(make_check("hadamard_coefficients", h_err, Direction::AtMost, 1e-12, 0.0));
    return report;
}

}  // namespace

ProtocolReport run_scenario(const RunConfig& cfg, std::ostream* trace) {
    using Runner = std::function<ProtocolReport(const RunConfig&, std::ostream*)>;
    static const std::map<std::string, Runner> runners{
        {"teleport-state", teleport_state_scenario},
        {"teleport-unitary", teleport_unitary_scenario},
        {"control-teleport", control_teleport_scenario},
        {"dense-coding", dense_coding_scenario},
        {"ebit-bound", ebit_bound_scenario},
        {"nogo-trivial-g1", nogo_scenario},
        {"g1-transfer", g1_transfer_scenario},
        {"independence", independence_scenario},
        {"orthogonality-witness", orthogonality_scenario},
        {"decompose", decompose_scenario},
    };
    auto it = runners.find(cfg.subcommand);
    if (it == runners.end()) throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    if (cfg.trials < 1 || cfg.trials > kMaxTrials) throw ValidationError("trials out of range");
    return it->second(cfg, trace);
}

}  // namespace qrc::cli
