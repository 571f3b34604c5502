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

#ifndef QREMOTE_LOCC_RUNTIME_HPP
#define QREMOTE_LOCC_RUNTIME_HPP

// Two-party execution environment for LOCC protocols.
//
// The runtime owns a list of branches, one per measurement history. In
// enumerate mode every measurement forks each branch into all outcomes with
// non-negligible probability; in sample mode a single branch is kept and
// outcomes are drawn from a seeded generator. Local operations and classical
// messages act on every branch, and the resource ledger is charged once per
// call regardless of how many branches exist.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qremote/pure_state.hpp"
#include "qremote/qops.hpp"

namespace qrc::locc {

using linalg::Complex;
using linalg::CVector;
using linalg::Label;
using linalg::PureState;
using ops::UnitaryGate;

enum class PartyId { Alice, Bob };

std::string_view to_string(PartyId party);
PartyId other(PartyId party);

struct ResourceLedger {
    int ebits_consumed = 0;
    int cbits_a_to_b = 0;
    int cbits_b_to_a = 0;

    int total_cbits() const { return cbits_a_to_b + cbits_b_to_a; }
    friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

enum class Basis { Computational, Bell };

struct OutcomeRecord {
    std::string id;
    PartyId party = PartyId::Alice;
    Basis basis = Basis::Computational;
    int qubits = 0;
    int outcome = 0;
};

struct Message {
    PartyId from = PartyId::Alice;
    PartyId to = PartyId::Bob;
    int bits = 0;
    std::uint64_t value = 0;
    std::string tag;
};

struct Branch {
    std::vector<OutcomeRecord> outcome_record;
    double probability = 1.0;
    PureState state;
    std::vector<Message> messages;

    /// Outcome of measurement `id` in this branch; throws LabelError if absent.
    int outcome(const std::string& id) const;
};

/// The classical knowledge one party has in one branch: its own measurement
/// outcomes and the messages delivered to it.
class ClassicalView {
   public:
    ClassicalView(PartyId party, const Branch& branch) : party_(party), branch_(&branch) {}

    PartyId party() const { return party_; }
    /// Throws OwnershipError for a measurement made by the other party.
    int outcome(const std::string& id) const;
    /// Latest message with `tag` addressed to this party; throws OwnershipError if none.
    std::uint64_t message(const std::string& tag) const;
    std::vector<Message> inbox() const;

   private:
    PartyId party_;
    const Branch* branch_;
};

struct BellPairRecord {
    Label alice;
    Label bob;
};

class LoccRuntime {
   public:
    using GateChooser = std::function<UnitaryGate(const ClassicalView&)>;
    using PayloadFn = std::function<std::uint64_t(const ClassicalView&)>;
    using Script = std::function<void(LoccRuntime&)>;

    static LoccRuntime enumerating();
    static LoccRuntime sampling(std::uint64_t seed);

    bool is_enumerating() const { return enumerate_; }

    /// Appends a local qubit in state (a0, a1); the pair must be normalized.
    void add_qubit(PartyId party, const Label& label, Complex a0, Complex a1);
    /// Appends a local multi-qubit register in a normalized state.
    void add_register(PartyId party, std::vector<Label> labels, const CVector& amplitudes);

    /// Appends |B^0> on (alice_label, bob_label) and charges one ebit.
    void distribute_bell_pair(const Label& alice_label, const Label& bob_label);

    /// Applies `gate` to `targets`, all of which must belong to `party`.
    void apply_local(PartyId party, const UnitaryGate& gate, std::span<const Label> targets);
    void apply_local(PartyId party, const UnitaryGate& gate, std::initializer_list<Label> targets);

    /// Applies, in each branch, the gate `choose` selects from `party`'s classical view.
    void apply_conditioned(PartyId party, std::span<const Label> targets, const GateChooser& choose);

    /// Measures `targets` (owned by `party`). Returns the outcome in sample
    /// mode and std::nullopt in enumerate mode, where each branch records its
    /// own outcome under `id`. Bell measurements require exactly two targets.
    std::optional<int> measure_local(PartyId party, std::span<const Label> targets, Basis basis,
                                     const std::string& id);

    /// Sends the same `bits`-bit payload in every branch.
    void send_classical(PartyId from, PartyId to, int bits, std::uint64_t payload, const std::string& tag);
    /// Sends a per-branch payload computed from the sender's classical view.
    void send_classical(PartyId from, PartyId to, int bits, const PayloadFn& payload, const std::string& tag);
    /// Forwards the result of measurement `id`: 2 bits for a Bell measurement,
    /// one bit per qubit for a computational one. Tagged with `id`.
    void send_outcome(PartyId from, PartyId to, const std::string& id);

    /// Runs `script` on this runtime (which must be enumerating) and returns
    /// the resulting branches.
    std::vector<Branch> run_enumerated(const Script& script);

    /// Bell pairs distributed and not yet touched by any operation.
    const std::vector<BellPairRecord>& available_bell_pairs() const { return fresh_pairs_; }
    /// Removes and returns the fresh pair containing `half`; throws ProtocolError if none.
    BellPairRecord claim_bell_pair(const Label& half);

    /// Scope in which apply_nonlocal is permitted. It bypasses ownership
    /// checks, never charges the ledger, and is flagged in the trace. Intended
    /// only for analysis constructions that are not part of any LOCC protocol.
    class AnalysisDilation {
       public:
        explicit AnalysisDilation(LoccRuntime& rt);
        ~AnalysisDilation();
        AnalysisDilation(const AnalysisDilation&) = delete;
        AnalysisDilation& operator=(const AnalysisDilation&) = delete;

       private:
        LoccRuntime* rt_;
    };
    void apply_nonlocal(const UnitaryGate& gate, std::span<const Label> targets);
    bool used_analysis_dilation() const { return used_dilation_; }

    const ResourceLedger& ledger() const { return ledger_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const std::vector<Label>& labels() const { return branches_.front().state.labels(); }
    PartyId owner(const Label& label) const;
    /// Labels owned by `party`, in state order.
    std::vector<Label> owned_by(PartyId party) const;

    /// Entanglement entropy across the Alice/Bob cut, per branch.
    std::vector<double> cut_entropies() const;
    /// Probability-weighted mean of cut_entropies().
    double average_cut_entropy() const;

    /// Emits one JSON object per operation to `out` (nullptr disables).
    void set_trace(std::ostream* out) { trace_ = out; }

   private:
    LoccRuntime(bool enumerate, std::uint64_t seed);

    void require_fresh(const Label& label) const;
    void require_owned(PartyId party, std::span<const Label> targets) const;
    void touch(std::span<const Label> targets);
    void append_factor(PartyId party, const std::vector<Label>& labels, const CVector& amplitudes,
                       const std::vector<PartyId>& owners);
    void charge(PartyId from, int bits);
    void trace(std::string_view op, std::optional<PartyId> party, std::span<const Label> labels,
               bool non_local = false) const;

    bool enumerate_;
    ops::Rng rng_;
    std::vector<Branch> branches_;
    std::map<Label, PartyId> owners_;
    std::vector<BellPairRecord> fresh_pairs_;
    std::set<std::string> measurement_ids_;
    ResourceLedger ledger_;
    int dilation_depth_ = 0;
    bool used_dilation_ = false;
    std::ostream* trace_ = nullptr;
};

}  // namespace qrc::locc

#endif  // QREMOTE_LOCC_RUNTIME_HPP
