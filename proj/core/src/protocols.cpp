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

#include "qremote/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "qremote/errors.hpp"

namespace qrc::protocols {

namespace {

using linalg::PureState;
using locc::Basis;
using locc::BellPairRecord;
using locc::Branch;
using locc::ClassicalView;
using locc::OutcomeRecord;
using locc::PartyId;

constexpr double kFactorTolerance = 1e-9;

std::string history_key(const std::vector<OutcomeRecord>& record, std::size_t length) {
    std::string key;
    for (std::size_t i = 0; i < length && i < record.size(); ++i) {
        key += record[i].id;
        key += '=';
        key += std::to_string(record[i].outcome);
        key += ';';
    }
    return key;
}

bool contains(const std::vector<Label>& labels, const Label& l) {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
}

std::vector<Label> concat(std::vector<Label> a, const std::vector<Label>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Expected final state of a subsystem, keyed by the measurement history that
// existed when the protocol started.
class Reference {
   public:
    Reference(const LoccRuntime& rt, std::vector<Label> initial_keep, const UnitaryGate& gate,
              const std::vector<Label>& targets)
        : initial_keep_(std::move(initial_keep)) {
        history_length_ = rt.branches().front().outcome_record.size();
        for (const auto& b : rt.branches()) {
            auto factor = b.state.factor(initial_keep_);
            if (factor.residual > kFactorTolerance) {
                throw ProtocolError("protocol input is entangled with the resource Bell pairs");
            }
            factor.state.apply(gate.matrix(), targets);
            expected_.emplace(history_key(b.outcome_record, history_length_), factor.state.amplitudes());
        }
    }

    /// Minimum over branches of <e|rho_final|e>, rho_final taken on `final_keep`.
    double min_fidelity(const LoccRuntime& rt, const std::vector<Label>& final_keep) const {
        double worst = 1.0;
        for (const auto& b : rt.branches()) {
            const CVector& e = expected_.at(history_key(b.outcome_record, history_length_));
            const double f = b.state.reduced(final_keep).expectation(e);
            worst = std::min(worst, f);
        }
        return std::clamp(worst, 0.0, 1.0);
    }

   private:
    std::vector<Label> initial_keep_;
    std::size_t history_length_ = 0;
    std::map<std::string, CVector> expected_;
};

std::vector<Label> labels_outside(const LoccRuntime& rt, const std::vector<Label>& excluded) {
    std::vector<Label> out;
    for (const auto& l : rt.labels()) {
        if (!contains(excluded, l)) out.push_back(l);
    }
    return out;
}

void require_owner(const LoccRuntime& rt, const Label& label, PartyId party) {
    if (rt.owner(label) != party) {
        throw ProtocolError("qubit '" + label + "' must belong to " + std::string(locc::to_string(party)));
    }
}

void add_common_checks(ProtocolReport& report) {
    auto lower = bounds::check_lower_bounds(report.ledger);
    report.bound_checks.insert(report.bound_checks.end(), lower.begin(), lower.end());
    report.bound_checks.push_back(
        bounds::make_check("fidelity_min", report.fidelity, bounds::Direction::AtLeast, 1.0, kFidelityTolerance));
}

}  // namespace

ControlEncoding::ControlEncoding(std::vector<UnitaryGate> unitaries) : unitaries_(std::move(unitaries)) {
    if (unitaries_.empty()) throw ValidationError("control encoding needs at least one unitary");
    for (const auto& u : unitaries_) {
        if (u.arity() != 1) throw ValidationError("control encoding unitaries must act on one qubit");
    }
    while (control_dim() < unitaries_.size()) ++control_qubits_;
    for (std::size_t k = 0; k < unitaries_.size(); ++k) control_states_.push_back(CVector::basis(control_dim(), k));
}

ControlEncoding::ControlEncoding(std::vector<UnitaryGate> unitaries, std::vector<CVector> control_states)
    : ControlEncoding(std::move(unitaries)) {
    if (control_states.size() != unitaries_.size()) {
        throw ValidationError("control encoding needs one control state per unitary");
    }
    for (std::size_t i = 0; i < control_states.size(); ++i) {
        if (control_states[i].dim() != control_dim()) {
            throw ValidationError("control state has dimension " + std::to_string(control_states[i].dim()) +
                                  ", expected " + std::to_string(control_dim()));
        }
        for (std::size_t j = i; j < control_states.size(); ++j) {
            const Complex g = linalg::overlap(control_states[i], control_states[j]);
            if (std::abs(g - Complex{i == j ? 1.0 : 0.0}) > kOrthogonalityTolerance) {
                throw ValidationError("control states are not orthonormal");
            }
        }
    }
    control_states_ = std::move(control_states);
}

ControlEncoding ControlEncoding::paulis() {
    std::vector<UnitaryGate> us;
    for (int mu = 0; mu < 4; ++mu) us.push_back(ops::pauli(PauliIndex(mu)));
    return ControlEncoding(std::move(us));
}

const CVector& ControlEncoding::control_state(std::size_t k) const {
    if (k >= unitaries_.size()) {
        throw ValidationError("control index " + std::to_string(k) + " does not select an encoded unitary");
    }
    return control_states_[k];
}

UnitaryGate ControlEncoding::controlled_operation() const {
    const std::size_t d = control_dim();
    CMatrix projector_sum(d, d);
    CMatrix out(2 * d, 2 * d);
    for (std::size_t k = 0; k < unitaries_.size(); ++k) {
        const CMatrix p = linalg::outer(control_states_[k], control_states_[k]);
        projector_sum += p;
        out += linalg::tensor(p, unitaries_[k].matrix());
    }
    out += linalg::tensor(CMatrix::identity(d) - projector_sum, CMatrix::identity(2));
    return UnitaryGate(std::move(out));
}

void teleport_state(LoccRuntime& rt, const Label& src, const Label& dst) {
    const PartyId sender = rt.owner(src);
    const PartyId receiver = rt.owner(dst);
    if (sender == receiver) throw ProtocolError("teleportation source and destination belong to the same party");

    const auto& pairs = rt.available_bell_pairs();
    auto it = std::find_if(pairs.begin(), pairs.end(), [&](const BellPairRecord& p) {
        return (p.alice == dst || p.bob == dst) && rt.owner(p.alice == dst ? p.bob : p.alice) == sender;
    });
    if (it == pairs.end()) throw ProtocolError("no pre-distributed Bell pair ends at '" + dst + "'");
    const BellPairRecord pair = rt.claim_bell_pair(dst);
    const Label partner = pair.alice == dst ? pair.bob : pair.alice;

    const std::string id = "bell:" + src + "," + partner;
    const std::array<Label, 2> measured{src, partner};
    rt.measure_local(sender, measured, Basis::Bell, id);
    rt.send_outcome(sender, receiver, id);
    const std::array<Label, 1> target{dst};
    rt.apply_conditioned(receiver, target, [id](const ClassicalView& view) {
        return ops::pauli(PauliIndex(static_cast<int>(view.message(id))));
    });
}

ProtocolReport bidirectional_remote(LoccRuntime& rt, const AliceOperation& op, const Label& beta) {
    require_owner(rt, beta, PartyId::Bob);
    for (const auto& c : op.controls) require_owner(rt, c, PartyId::Alice);
    if (op.gate.arity() != op.controls.size() + 1) {
        throw DimensionError("Alice's operation must act on its controls plus one qubit");
    }
    const auto& fresh = rt.available_bell_pairs();
    if (fresh.size() < 2) throw ProtocolError("bidirectional teleportation needs two fresh Bell pairs");
    const BellPairRecord outbound = fresh[0];
    const BellPairRecord inbound = fresh[1];

    const std::vector<Label> keep = labels_outside(rt, {outbound.alice, outbound.bob, inbound.alice, inbound.bob});
    const Reference reference(rt, keep, op.gate, concat(op.controls, {beta}));

    // G1: Bob -> Alice.
    teleport_state(rt, beta, outbound.alice);
    const Label& alpha = outbound.alice;
    rt.apply_local(PartyId::Alice, op.gate, concat(op.controls, {alpha}));
    // G2: Alice -> Bob, then Bob moves the result into beta.
    teleport_state(rt, alpha, inbound.bob);
    rt.apply_local(PartyId::Bob, ops::swap_gate(), {beta, inbound.bob});

    ProtocolReport report;
    report.name = "bidirectional_u_teleport";
    report.ledger = rt.ledger();
    report.fidelity = reference.min_fidelity(rt, keep);
    report.branches = static_cast<int>(rt.branches().size());
    add_common_checks(report);
    report.bound_checks.push_back(bounds::check_upper_bound(report.ledger));
    return report;
}

ProtocolReport bidirectional_u_teleport(LoccRuntime& rt, const UnitaryGate& u, const Label& beta) {
    return bidirectional_remote(rt, AliceOperation{u, {}}, beta);
}

BidirectionalLabels prepare_bidirectional(LoccRuntime& rt, const CVector& psi) {
    BidirectionalLabels labels;
    if (psi.dim() != 2) throw DimensionError("beta must be a single qubit");
    rt.add_qubit(PartyId::Bob, labels.beta, psi[0], psi[1]);
    rt.distribute_bell_pair(labels.alpha, labels.bob_outbound);
    rt.distribute_bell_pair(labels.alice_inbound, labels.bob_inbound);
    return labels;
}

ProtocolReport control_state_teleport(LoccRuntime& rt, const ControlEncoding& enc, const CVector& control_amplitudes,
                                      const Label& beta) {
    require_owner(rt, beta, PartyId::Bob);
    const std::size_t n = enc.control_qubits();
    if (control_amplitudes.dim() != enc.control_dim()) {
        throw DimensionError("control state dimension does not match the encoding");
    }
    const auto& fresh = rt.available_bell_pairs();
    if (fresh.size() < n) {
        throw ProtocolError("control-state teleportation needs " + std::to_string(n) + " fresh Bell pairs");
    }
    const std::vector<BellPairRecord> pairs(fresh.begin(), fresh.begin() + static_cast<std::ptrdiff_t>(n));

    std::vector<Label> control;
    std::vector<Label> received;
    std::vector<Label> pair_labels;
    for (std::size_t j = 0; j < n; ++j) {
        control.push_back("control_" + std::to_string(j));
        received.push_back(pairs[j].bob);
        pair_labels.push_back(pairs[j].alice);
        pair_labels.push_back(pairs[j].bob);
    }
    rt.add_register(PartyId::Alice, control, control_amplitudes);

    const std::vector<Label> spectators = labels_outside(rt, concat(concat(pair_labels, control), {beta}));
    const UnitaryGate controlled = enc.controlled_operation();
    const Reference reference(rt, concat(concat(control, {beta}), spectators), controlled, concat(control, {beta}));

    for (std::size_t j = 0; j < n; ++j) teleport_state(rt, control[j], received[j]);
    rt.apply_local(PartyId::Bob, controlled, concat(received, {beta}));

    ProtocolReport report;
    report.name = "control_state_teleport";
    report.ledger = rt.ledger();
    report.fidelity = reference.min_fidelity(rt, concat(concat(received, {beta}), spectators));
    report.branches = static_cast<int>(rt.branches().size());
    add_common_checks(report);
    report.bound_checks.push_back(bounds::make_check("cbits_b_to_a_unidirectional", report.ledger.cbits_b_to_a,
                                                     bounds::Direction::Equal, 0.0, 0.0));
    return report;
}

ProtocolReport control_state_teleport(LoccRuntime& rt, const ControlEncoding& enc, std::size_t k,
                                      const Label& beta) {
    return control_state_teleport(rt, enc, enc.control_state(k), beta);
}

DenseCodingResult dense_coding_bound_demo(LoccRuntime& rt, PauliIndex mu, const Label& beta,
                                          const Label& beta_prime) {
    require_owner(rt, beta_prime, PartyId::Bob);
    DenseCodingResult result;
    result.report = bidirectional_u_teleport(rt, ops::pauli(mu), beta);
    result.report.name = "dense_coding_bound_demo";

    const std::string id = "dense_decode";
    const std::array<Label, 2> pair{beta, beta_prime};
    rt.measure_local(PartyId::Bob, pair, Basis::Bell, id);

    std::optional<int> common;
    bool agree = true;
    for (const auto& b : rt.branches()) {
        const int decoded = b.outcome(id);
        if (decoded == mu.value()) result.correct_probability += b.probability;
        if (!common) {
            common = decoded;
        } else if (*common != decoded) {
            agree = false;
        }
    }
    result.decoded = agree && common ? *common : -1;
    result.branches = static_cast<int>(rt.branches().size());
    result.report.branches = result.branches;
    result.report.bound_checks.push_back(bounds::make_check("decode_probability", result.correct_probability,
                                                            bounds::Direction::Equal, 1.0, kFidelityTolerance));
    return result;
}

DenseCodingResult dense_coding_bound_demo(PauliIndex mu) {
    LoccRuntime rt = LoccRuntime::enumerating();
    BidirectionalLabels labels;
    const Label beta_prime = "beta_prime";
    rt.add_register(PartyId::Bob, {labels.beta, beta_prime}, ops::bell_state(ops::BellIndex(0)));
    rt.distribute_bell_pair(labels.alpha, labels.bob_outbound);
    rt.distribute_bell_pair(labels.alice_inbound, labels.bob_inbound);
    return dense_coding_bound_demo(rt, mu, labels.beta, beta_prime);
}

EntanglementBoundResult entanglement_bound_demo(const EntanglementBoundOptions& options) {
    if (options.idle_pairs < 0) throw ValidationError("idle_pairs must be non-negative");
    LoccRuntime rt = LoccRuntime::enumerating();
    BidirectionalLabels labels;
    const Label beta_prime = "beta_prime";
    const std::vector<Label> reference_register{"r0", "r1"};
    const std::vector<Label> control{"c0", "c1"};

    // (1/2) sum_mu |mu>_R |sigma^mu>_C with |sigma^mu>_C = |mu>.
    CVector rc(16);
    for (std::size_t mu = 0; mu < 4; ++mu) rc[mu * 4 + mu] = 0.5;
    rt.add_register(PartyId::Alice, concat(reference_register, control), rc);
    rt.add_register(PartyId::Bob, {labels.beta, beta_prime}, ops::bell_state(ops::BellIndex(0)));
    rt.distribute_bell_pair(labels.alpha, labels.bob_outbound);
    rt.distribute_bell_pair(labels.alice_inbound, labels.bob_inbound);
    for (int j = 0; j < options.idle_pairs; ++j) {
        rt.distribute_bell_pair("alice_idle_" + std::to_string(j), "bob_idle_" + std::to_string(j));
    }

    EntanglementBoundResult result;
    result.report =
        bidirectional_remote(rt, AliceOperation{ControlEncoding::paulis().controlled_operation(), control}, labels.beta);
    result.report.name = "entanglement_bound_demo";

    const std::vector<Label> bob_side = rt.owned_by(PartyId::Bob);
    std::vector<Label> bob_ancilla;
    for (const auto& l : bob_side) {
        if (l != labels.beta && l != beta_prime) bob_ancilla.push_back(l);
    }

    result.min_entanglement = std::numeric_limits<double>::infinity();
    double max_e = 0.0;
    double max_ancilla = 0.0;
    for (const auto& b : rt.branches()) {
        BranchEntropy be;
        be.probability = b.probability;
        be.entanglement = bounds::bipartite_entanglement(b.state, bob_side);
        const std::vector<Label> rest = b.state.complement(reference_register);
        double sum = 0.0;
        for (std::size_t mu = 0; mu < 4; ++mu) {
            const CVector v = b.state.contract(reference_register, CVector::basis(4, mu));
            be.weight[mu] = v.norm() * v.norm();
            const PureState component(v.normalized(), rest);
            be.ancilla_entropy[mu] = linalg::von_neumann_entropy(component.reduced(bob_ancilla));
            sum += be.ancilla_entropy[mu];
            max_ancilla = std::max(max_ancilla, be.ancilla_entropy[mu]);
        }
        be.decomposition = 2.0 + sum / 4.0;
        result.min_entanglement = std::min(result.min_entanglement, be.entanglement);
        max_e = std::max(max_e, be.entanglement);
        result.max_identity_deviation =
            std::max(result.max_identity_deviation, std::abs(be.entanglement - be.decomposition));
        result.per_branch.push_back(be);
    }

    auto& report = result.report;
    report.entropies["E_min"] = result.min_entanglement;
    report.entropies["E_max"] = max_e;
    report.entropies["ancilla_entropy_max"] = max_ancilla;
    report.entropies["identity_deviation_max"] = result.max_identity_deviation;
    report.bound_checks.push_back(bounds::make_check("entanglement_lower_bound", result.min_entanglement,
                                                     bounds::Direction::AtLeast, 2.0, bounds::kEntropyTolerance));
    report.bound_checks.push_back(bounds::make_check("entropy_decomposition_identity", result.max_identity_deviation,
                                                     bounds::Direction::AtMost, 0.0, bounds::kEntropyTolerance));
    report.bound_checks.push_back(bounds::make_check("entanglement_matches_scheme", max_e, bounds::Direction::Equal,
                                                     2.0 + options.idle_pairs, bounds::kEntropyTolerance));
    return result;
}

AncillaIndependence ancilla_independence_check(const std::vector<UnitaryGate>& u_set,
                                               const std::vector<CVector>& psi_set) {
    // history -> ancilla state of every configuration
    std::map<std::string, std::vector<CVector>> ancilla;
    AncillaIndependence result;
    for (const auto& u : u_set) {
        for (const auto& psi : psi_set) {
            LoccRuntime rt = LoccRuntime::enumerating();
            const auto labels = prepare_bidirectional(rt, psi.normalized());
            bidirectional_u_teleport(rt, u, labels.beta);
            const std::vector<Label> rest = labels_outside(rt, {labels.beta});
            for (const auto& b : rt.branches()) {
                auto factor = b.state.factor(rest);
                result.max_factor_residual = std::max(result.max_factor_residual, factor.residual);
                ancilla[history_key(b.outcome_record, b.outcome_record.size())].push_back(
                    factor.state.amplitudes());
            }
            result.branches_per_configuration = static_cast<int>(rt.branches().size());
            ++result.configurations;
        }
    }
    for (const auto& [key, states] : ancilla) {
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                result.max_deviation = std::max(result.max_deviation, 1.0 - linalg::fidelity(states[i], states[j]));
            }
        }
    }
    return result;
}

NoGoResult trivial_g1_nogo_check(const CVector& chi, const CVector& psi, const CVector& psi_prime,
                                 const UnitaryGate& u) {
    if (u.arity() != 1) throw PreconditionError("U must act on one qubit");
    if (psi.dim() != 2 || psi_prime.dim() != 2) throw PreconditionError("psi and psi' must be qubit states");
    if (chi.dim() < 2) throw PreconditionError("chi must contain the qubit alpha");
    linalg::qubit_count(chi.dim());
    for (const CVector* v : {&chi, &psi, &psi_prime}) {
        if (std::abs(v->norm() - 1.0) > kOrthogonalityTolerance) {
            throw PreconditionError("chi, psi and psi' must be normalized");
        }
    }
    if (std::abs(linalg::overlap(psi_prime, psi)) > kOrthogonalityTolerance) {
        throw PreconditionError("psi and psi' must be orthogonal");
    }

    const CMatrix exchange = linalg::outer(psi, psi_prime) + linalg::outer(psi_prime, psi);
    UnitaryGate u_prime(u.matrix() * exchange);

    const CMatrix rest_identity = CMatrix::identity(chi.dim() / 2);
    const CVector in = linalg::tensor(linalg::tensor(u.matrix(), rest_identity) * chi, psi);
    const CVector in_prime = linalg::tensor(linalg::tensor(u_prime.matrix(), rest_identity) * chi, psi_prime);

    NoGoResult result{0.0, linalg::overlap(in_prime, in), linalg::overlap(u_prime * psi_prime, u * psi),
                      std::move(u_prime)};
    result.deficit = std::abs(result.output_overlap - result.input_overlap);
    return result;
}

StateTransfer g1_state_transfer_check(const CVector& psi) {
    const CVector unit = psi.normalized();
    if (unit.dim() != 2) throw DimensionError("psi must be a qubit state");
    LoccRuntime rt = LoccRuntime::enumerating();
    BidirectionalLabels labels;
    rt.add_qubit(PartyId::Bob, labels.beta, unit[0], unit[1]);
    rt.distribute_bell_pair(labels.alpha, labels.bob_outbound);
    teleport_state(rt, labels.beta, labels.alpha);

    StateTransfer result{1.0, 1.0, static_cast<int>(rt.branches().size())};
    const std::array<Label, 1> alpha{labels.alpha};
    for (const auto& b : rt.branches()) {
        const auto rho = b.state.reduced(alpha);
        result.purity_alpha = std::min(result.purity_alpha, rho.purity());
        result.transfer_fidelity = std::min(result.transfer_fidelity, rho.expectation(unit));
    }
    return result;
}

OrthogonalityWitness control_orthogonality_witness(const UnitaryGate& u, const UnitaryGate& u_prime, int n_samples,
                                                   Rng& rng) {
    if (u.arity() != 1 || u_prime.arity() != 1) throw DimensionError("witness expects single-qubit unitaries");
    if (n_samples < 2) throw ValidationError("witness needs at least two samples");
    const CMatrix m = u_prime.matrix().adjoint() * u.matrix();

    std::vector<Complex> z;
    z.reserve(static_cast<std::size_t>(n_samples));
    for (int s = 0; s < n_samples; ++s) {
        const CVector psi = ops::haar_state(rng, 2);
        z.push_back(linalg::overlap(psi, m * psi));
    }

    OrthogonalityWitness w;
    double min_mod = std::numeric_limits<double>::infinity();
    double max_mod = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        min_mod = std::min(min_mod, std::abs(z[i]));
        max_mod = std::max(max_mod, std::abs(z[i]));
        for (std::size_t j = i + 1; j < z.size(); ++j) w.range = std::max(w.range, std::abs(z[i] - z[j]));
        if (std::abs(z[0]) > 1e-12 && std::abs(z[i]) > 1e-12) {
            w.phase_spread = std::max(w.phase_spread, std::abs(std::arg(z[i] / z[0])));
        }
    }
    w.modulus_spread = max_mod - min_mod;
    w.proportional = std::abs(std::abs(m.trace()) - 2.0) <= 1e-9;
    return w;
}

}  // namespace qrc::protocols
