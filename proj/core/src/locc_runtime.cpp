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

#include "qremote/locc_runtime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "qremote/errors.hpp"

namespace qrc::locc {

namespace {

std::vector<Label> to_vector(std::span<const Label> labels) { return {labels.begin(), labels.end()}; }

}  // namespace

std::string_view to_string(PartyId party) { return party == PartyId::Alice ? "alice" : "bob"; }

PartyId other(PartyId party) { return party == PartyId::Alice ? PartyId::Bob : PartyId::Alice; }

int Branch::outcome(const std::string& id) const {
    for (const auto& rec : outcome_record) {
        if (rec.id == id) return rec.outcome;
    }
    throw LabelError("no measurement with id '" + id + "'");
}

int ClassicalView::outcome(const std::string& id) const {
    for (const auto& rec : branch_->outcome_record) {
        if (rec.id != id) continue;
        if (rec.party != party_) {
            throw OwnershipError(std::string(to_string(party_)) + " cannot read measurement '" + id +
                                 "' made by the other party");
        }
        return rec.outcome;
    }
    throw LabelError("no measurement with id '" + id + "'");
}

std::uint64_t ClassicalView::message(const std::string& tag) const {
    const auto& msgs = branch_->messages;
    for (auto it = msgs.rbegin(); it != msgs.rend(); ++it) {
        if (it->to == party_ && it->tag == tag) return it->value;
    }
    throw OwnershipError(std::string(to_string(party_)) + " has received no message tagged '" + tag + "'");
}

std::vector<Message> ClassicalView::inbox() const {
    std::vector<Message> out;
    for (const auto& m : branch_->messages) {
        if (m.to == party_) out.push_back(m);
    }
    return out;
}

LoccRuntime::LoccRuntime(bool enumerate, std::uint64_t seed) : enumerate_(enumerate), rng_(seed) {
    branches_.emplace_back();
}

LoccRuntime LoccRuntime::enumerating() { return LoccRuntime(true, 0); }

LoccRuntime LoccRuntime::sampling(std::uint64_t seed) { return LoccRuntime(false, seed); }

void LoccRuntime::require_fresh(const Label& label) const {
    if (owners_.count(label) != 0) throw LabelError("qubit label '" + label + "' already exists");
}

void LoccRuntime::require_owned(PartyId party, std::span<const Label> targets) const {
    for (const auto& l : targets) {
        if (owner(l) != party) {
            throw OwnershipError(std::string(to_string(party)) + " does not own qubit '" + l + "'");
        }
    }
}

PartyId LoccRuntime::owner(const Label& label) const {
    auto it = owners_.find(label);
    if (it == owners_.end()) throw LabelError("unknown qubit label '" + label + "'");
    return it->second;
}

std::vector<Label> LoccRuntime::owned_by(PartyId party) const {
    std::vector<Label> out;
    for (const auto& l : labels()) {
        if (owners_.at(l) == party) out.push_back(l);
    }
    return out;
}

void LoccRuntime::touch(std::span<const Label> targets) {
    std::erase_if(fresh_pairs_, [&](const BellPairRecord& p) {
        return std::find(targets.begin(), targets.end(), p.alice) != targets.end() ||
               std::find(targets.begin(), targets.end(), p.bob) != targets.end();
    });
}

void LoccRuntime::append_factor(PartyId party, const std::vector<Label>& labels, const CVector& amplitudes,
                                const std::vector<PartyId>& owners) {
    (void)party;
    linalg::require_unique(labels);
    for (const auto& l : labels) require_fresh(l);
    const PureState factor(amplitudes, labels);
    for (auto& b : branches_) b.state = b.state.tensor(factor);
    for (std::size_t i = 0; i < labels.size(); ++i) owners_[labels[i]] = owners[i];
}

void LoccRuntime::add_qubit(PartyId party, const Label& label, Complex a0, Complex a1) {
    append_factor(party, {label}, CVector{a0, a1}, {party});
    trace("add_qubit", party, std::span<const Label>(&label, 1));
}

void LoccRuntime::add_register(PartyId party, std::vector<Label> labels, const CVector& amplitudes) {
    append_factor(party, labels, amplitudes, std::vector<PartyId>(labels.size(), party));
    trace("add_register", party, labels);
}

void LoccRuntime::distribute_bell_pair(const Label& alice_label, const Label& bob_label) {
    const std::vector<Label> labels{alice_label, bob_label};
    append_factor(PartyId::Alice, labels, ops::bell_state(ops::BellIndex(0)), {PartyId::Alice, PartyId::Bob});
    fresh_pairs_.push_back({alice_label, bob_label});
    ledger_.ebits_consumed += 1;
    trace("distribute_bell_pair", std::nullopt, labels);
}

void LoccRuntime::apply_local(PartyId party, const UnitaryGate& gate, std::span<const Label> targets) {
    require_owned(party, targets);
    for (auto& b : branches_) b.state.apply(gate.matrix(), targets);
    touch(targets);
    trace("apply_local", party, targets);
}

void LoccRuntime::apply_local(PartyId party, const UnitaryGate& gate, std::initializer_list<Label> targets) {
    apply_local(party, gate, std::span<const Label>(targets.begin(), targets.size()));
}

void LoccRuntime::apply_conditioned(PartyId party, std::span<const Label> targets, const GateChooser& choose) {
    require_owned(party, targets);
    for (auto& b : branches_) {
        const UnitaryGate gate = choose(ClassicalView(party, b));
        b.state.apply(gate.matrix(), targets);
    }
    touch(targets);
    trace("apply_conditioned", party, targets);
}

std::optional<int> LoccRuntime::measure_local(PartyId party, std::span<const Label> targets, Basis basis,
                                              const std::string& id) {
    require_owned(party, targets);
    if (targets.empty()) throw LabelError("measure_local: no targets");
    if (basis == Basis::Bell && targets.size() != 2) {
        throw LabelError("measure_local: a Bell measurement needs exactly two qubits");
    }
    if (!measurement_ids_.insert(id).second) throw LabelError("measurement id '" + id + "' already used");

    std::vector<CVector> basis_vectors;
    if (basis == Basis::Bell) {
        const auto& bell = ops::bell_basis();
        basis_vectors.assign(bell.begin(), bell.end());
    } else {
        basis_vectors = ops::computational_basis(targets.size());
    }

    std::vector<Branch> next;
    std::optional<int> sampled;
    for (auto& b : branches_) {
        auto projections = b.state.measure(targets, basis_vectors);
        if (!enumerate_) {
            std::uniform_real_distribution<double> uniform(0.0, 1.0);
            double u = uniform(rng_);
            std::size_t pick = projections.size() - 1;
            for (std::size_t k = 0; k < projections.size(); ++k) {
                if (u < projections[k].probability) {
                    pick = k;
                    break;
                }
                u -= projections[k].probability;
            }
            auto proj = std::move(projections[pick]);
            projections.clear();
            projections.push_back(std::move(proj));
            sampled = static_cast<int>(projections.front().outcome);
        }
        for (auto& proj : projections) {
            Branch child;
            child.outcome_record = b.outcome_record;
            child.outcome_record.push_back(
                {id, party, basis, static_cast<int>(targets.size()), static_cast<int>(proj.outcome)});
            child.probability = enumerate_ ? b.probability * proj.probability : b.probability;
            child.state = std::move(proj.post);
            child.messages = b.messages;
            next.push_back(std::move(child));
        }
    }
    branches_ = std::move(next);
    touch(targets);
    trace("measure_local", party, targets);
    return sampled;
}

void LoccRuntime::charge(PartyId from, int bits) {
    if (bits < 0) throw ValidationError("classical message with negative bit count");
    if (from == PartyId::Alice) {
        ledger_.cbits_a_to_b += bits;
    } else {
        ledger_.cbits_b_to_a += bits;
    }
}

void LoccRuntime::send_classical(PartyId from, PartyId to, int bits, std::uint64_t payload, const std::string& tag) {
    send_classical(from, to, bits, [payload](const ClassicalView&) { return payload; }, tag);
}

void LoccRuntime::send_classical(PartyId from, PartyId to, int bits, const PayloadFn& payload,
                                 const std::string& tag) {
    if (bits < 0) throw ValidationError("classical message with negative bit count");
    if (bits > 64) throw ValidationError("classical payloads are limited to 64 bits");
    if (from == to) throw ValidationError("classical message must cross the party cut");
    for (auto& b : branches_) {
        const std::uint64_t value = payload(ClassicalView(from, b));
        if (bits < 64 && (value >> bits) != 0) {
            throw ValidationError("payload does not fit in the declared " + std::to_string(bits) + " bits");
        }
        b.messages.push_back({from, to, bits, value, tag});
    }
    charge(from, bits);
    trace("send_classical", from, {});
}

void LoccRuntime::send_outcome(PartyId from, PartyId to, const std::string& id) {
    const auto& record = branches_.front().outcome_record;
    auto it = std::find_if(record.begin(), record.end(), [&](const OutcomeRecord& r) { return r.id == id; });
    if (it == record.end()) throw LabelError("no measurement with id '" + id + "'");
    const int bits = it->basis == Basis::Bell ? 2 : it->qubits;
    send_classical(from, to, bits, [id](const ClassicalView& v) { return static_cast<std::uint64_t>(v.outcome(id)); },
                   id);
}

std::vector<Branch> LoccRuntime::run_enumerated(const Script& script) {
    if (!enumerate_) throw ValidationError("run_enumerated requires an enumerating runtime");
    script(*this);
    return branches_;
}

BellPairRecord LoccRuntime::claim_bell_pair(const Label& half) {
    auto it = std::find_if(fresh_pairs_.begin(), fresh_pairs_.end(),
                           [&](const BellPairRecord& p) { return p.alice == half || p.bob == half; });
    if (it == fresh_pairs_.end()) throw ProtocolError("no pre-distributed Bell pair contains '" + half + "'");
    BellPairRecord pair = *it;
    fresh_pairs_.erase(it);
    return pair;
}

LoccRuntime::AnalysisDilation::AnalysisDilation(LoccRuntime& rt) : rt_(&rt) {
    ++rt_->dilation_depth_;
    rt_->used_dilation_ = true;
}

LoccRuntime::AnalysisDilation::~AnalysisDilation() { --rt_->dilation_depth_; }

void LoccRuntime::apply_nonlocal(const UnitaryGate& gate, std::span<const Label> targets) {
    if (dilation_depth_ == 0) {
        throw OwnershipError("apply_nonlocal is only permitted inside an AnalysisDilation scope");
    }
    for (const auto& l : targets) owner(l);
    for (auto& b : branches_) b.state.apply(gate.matrix(), targets);
    touch(targets);
    trace("apply_nonlocal", std::nullopt, targets, true);
}

std::vector<double> LoccRuntime::cut_entropies() const {
    const auto alice = owned_by(PartyId::Alice);
    std::vector<double> out;
    out.reserve(branches_.size());
    for (const auto& b : branches_) {
        if (alice.empty() || alice.size() == b.state.num_qubits()) {
            out.push_back(0.0);
            continue;
        }
        // The smaller side gives the cheaper eigenproblem.
        const auto bob = b.state.complement(alice);
        const auto& side = alice.size() <= bob.size() ? alice : bob;
        out.push_back(linalg::von_neumann_entropy(b.state.reduced(side)));
    }
    return out;
}

double LoccRuntime::average_cut_entropy() const {
    const auto e = cut_entropies();
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) acc += branches_[i].probability * e[i];
    return acc;
}

void LoccRuntime::trace(std::string_view op, std::optional<PartyId> party, std::span<const Label> labels,
                        bool non_local) const {
    if (trace_ == nullptr) return;
    nlohmann::ordered_json rec;
    rec["op"] = op;
    rec["party"] = party ? nlohmann::ordered_json(to_string(*party)) : nlohmann::ordered_json(nullptr);
    rec["labels"] = to_vector(labels);
    rec["ledger"] = {{"ebits", ledger_.ebits_consumed},
                     {"cbits_a_to_b", ledger_.cbits_a_to_b},
                     {"cbits_b_to_a", ledger_.cbits_b_to_a}};
    rec["branches"] = branches_.size();
    if (non_local) rec["non_local"] = true;
    *trace_ << rec.dump() << '\n';
}

}  // namespace qrc::locc
