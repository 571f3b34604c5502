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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "qremote/errors.hpp"
#include "qremote/protocols.hpp"

namespace {

using namespace qrc::protocols;
using qrc::linalg::fidelity;
using qrc::locc::PartyId;
using qrc::ops::haar_state;
using qrc::ops::haar_unitary;
using qrc::ops::pauli;

double min_fidelity_on(const LoccRuntime& rt, const std::vector<Label>& keep, const CVector& expected) {
    double f = 1.0;
    for (const auto& b : rt.branches()) f = std::min(f, b.state.reduced(keep).expectation(expected));
    return f;
}

TEST(TeleportState, ZeroAndRandomInputs) {
    Rng rng(10);
    for (int t = 0; t < 20; ++t) {
        const CVector psi = t == 0 ? CVector{1.0, 0.0} : haar_state(rng, 2);
        auto rt = LoccRuntime::enumerating();
        rt.add_qubit(PartyId::Alice, "src", psi[0], psi[1]);
        rt.distribute_bell_pair("a", "dst");
        teleport_state(rt, "src", "dst");
        EXPECT_EQ(rt.branches().size(), 4u);
        EXPECT_GE(min_fidelity_on(rt, {"dst"}, psi), 1.0 - 1e-10);
        EXPECT_EQ(rt.ledger(), (ResourceLedger{1, 2, 0}));
    }
}

TEST(TeleportState, SwapsEntanglementOntoDestination) {
    auto rt = LoccRuntime::enumerating();
    rt.add_register(PartyId::Alice, {"x", "src"}, qrc::ops::bell_state(qrc::ops::BellIndex(2)));
    rt.distribute_bell_pair("a", "dst");
    teleport_state(rt, "src", "dst");
    EXPECT_GE(min_fidelity_on(rt, {"x", "dst"}, qrc::ops::bell_state(qrc::ops::BellIndex(2))), 1.0 - 1e-10);
}

TEST(TeleportState, MissingPairOrSameParty) {
    auto rt = LoccRuntime::enumerating();
    rt.add_qubit(PartyId::Alice, "src", 1.0, 0.0);
    rt.add_qubit(PartyId::Bob, "dst", 1.0, 0.0);
    EXPECT_THROW(teleport_state(rt, "src", "dst"), qrc::ProtocolError);
    rt.add_qubit(PartyId::Alice, "other", 1.0, 0.0);
    EXPECT_THROW(teleport_state(rt, "src", "other"), qrc::ProtocolError);
}

TEST(Bidirectional, IdentityAndBitFlip) {
    Rng rng(1);
    const CVector psi = haar_state(rng, 2);
    auto rt = LoccRuntime::enumerating();
    const auto labels = prepare_bidirectional(rt, psi);
    const auto r = bidirectional_u_teleport(rt, pauli(PauliIndex(0)), labels.beta);
    EXPECT_EQ(r.ledger, (ResourceLedger{2, 2, 2}));
    EXPECT_GE(min_fidelity_on(rt, {labels.beta}, psi), 1.0 - 1e-10);
    EXPECT_TRUE(r.all_passed());

    auto rt2 = LoccRuntime::enumerating();
    const auto l2 = prepare_bidirectional(rt2, CVector{1.0, 0.0});
    bidirectional_u_teleport(rt2, pauli(PauliIndex(1)), l2.beta);
    EXPECT_GE(min_fidelity_on(rt2, {l2.beta}, CVector{0.0, 1.0}), 1.0 - 1e-10);
}

TEST(Bidirectional, HaarSweepAndLinearity) {
    Rng rng(77);
    for (int t = 0; t < 100; ++t) {
        const auto u = haar_unitary(rng, 2);
        const CVector psi = haar_state(rng, 2);
        auto rt = LoccRuntime::enumerating();
        const auto labels = prepare_bidirectional(rt, psi);
        const auto r = bidirectional_u_teleport(rt, u, labels.beta);
        EXPECT_EQ(r.branches, 16);
        EXPECT_EQ(r.ledger, (ResourceLedger{2, 2, 2}));
        EXPECT_GE(r.fidelity, 1.0 - 1e-9);
        EXPECT_TRUE(r.all_passed());
        // Final beta equals sum_mu alpha_mu sigma^mu psi built from trace-formula coefficients.
        const auto alpha = oracle::pauli_coefficients(oracle::to_eigen(u.matrix()));
        oracle::Vec expected = oracle::Vec::Zero(2);
        for (int mu = 0; mu < 4; ++mu) expected += alpha[mu] * (oracle::pauli(mu) * oracle::to_eigen(psi));
        for (const auto& b : rt.branches()) {
            const std::vector<Label> keep{labels.beta};
            const auto f = b.state.factor(keep);
            EXPECT_LT(f.residual, 1e-10);
            EXPECT_NEAR(fidelity(f.state.amplitudes(), oracle::from_eigen(expected)), 1.0, 1e-10);
        }
    }
}

TEST(Bidirectional, NeedsTwoPairs) {
    auto rt = LoccRuntime::enumerating();
    rt.add_qubit(PartyId::Bob, "beta", 1.0, 0.0);
    rt.distribute_bell_pair("alpha", "bob_g1");
    EXPECT_THROW(bidirectional_u_teleport(rt, pauli(PauliIndex(1)), "beta"), qrc::ProtocolError);
}

TEST(Bidirectional, BetaMustBelongToBob) {
    auto rt = LoccRuntime::enumerating();
    rt.add_qubit(PartyId::Alice, "beta", 1.0, 0.0);
    rt.distribute_bell_pair("a1", "b1");
    rt.distribute_bell_pair("a2", "b2");
    EXPECT_THROW(bidirectional_u_teleport(rt, pauli(PauliIndex(1)), "beta"), qrc::ProtocolError);
}

LoccRuntime control_runtime(const ControlEncoding& enc, const CVector& psi) {
    auto rt = LoccRuntime::enumerating();
    rt.add_qubit(PartyId::Bob, "beta", psi[0], psi[1]);
    for (std::size_t j = 0; j < enc.control_qubits(); ++j)
        rt.distribute_bell_pair("ac" + std::to_string(j), "bc" + std::to_string(j));
    return rt;
}

TEST(ControlTeleport, PauliSetLedgerAndOutputs) {
    const auto enc = ControlEncoding::paulis();
    EXPECT_EQ(enc.size(), 4u);
    EXPECT_EQ(enc.control_qubits(), 2u);
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const CVector psi = t == 0 ? CVector{1.0, 0.0} : haar_state(rng, 2);
        for (std::size_t k = 0; k < 4; ++k) {
            auto rt = control_runtime(enc, psi);
            const auto r = control_state_teleport(rt, enc, k, "beta");
            EXPECT_EQ(r.ledger, (ResourceLedger{2, 4, 0}));
            EXPECT_GE(r.fidelity, 1.0 - 1e-9);
            EXPECT_TRUE(r.all_passed());
            const CVector expected = pauli(PauliIndex(static_cast<int>(k))) * psi;
            EXPECT_GE(min_fidelity_on(rt, {"beta"}, expected), 1.0 - 1e-10);
        }
    }
}

TEST(ControlTeleport, SuperposedControlMixesBeta) {
    const auto enc = ControlEncoding::paulis();
    Rng rng(6);
    const CVector psi = haar_state(rng, 2);
    auto rt = control_runtime(enc, psi);
    const double s = 1.0 / std::sqrt(2.0);
    control_state_teleport(rt, enc, CVector{s, s, 0.0, 0.0}, "beta");
    const oracle::Vec p = oracle::to_eigen(psi);
    const oracle::Vec xp = oracle::pauli(1) * p;
    const oracle::Mat expected = 0.5 * (p * p.adjoint() + xp * xp.adjoint());
    for (const auto& b : rt.branches()) {
        const std::vector<Label> keep{"beta"};
        EXPECT_LT(oracle::max_abs(oracle::to_eigen(b.state.reduced(keep).matrix()) - expected), 1e-10);
    }
}

TEST(ControlTeleport, Validation) {
    const auto enc = ControlEncoding::paulis();
    auto rt = control_runtime(enc, CVector{1.0, 0.0});
    EXPECT_THROW(control_state_teleport(rt, enc, 4, "beta"), qrc::ValidationError);

    const ControlEncoding three({pauli(PauliIndex(0)), pauli(PauliIndex(1)), pauli(PauliIndex(3))});
    EXPECT_EQ(three.control_dim(), 4u);
    EXPECT_THROW(three.control_state(3), qrc::ValidationError);
    EXPECT_NO_THROW(three.control_state(2));

    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_THROW(ControlEncoding({pauli(PauliIndex(0)), pauli(PauliIndex(1))},
                                 {CVector{1.0, 0.0}, CVector{s, s}}),
                 qrc::ValidationError);
    EXPECT_NO_THROW(ControlEncoding({pauli(PauliIndex(0)), pauli(PauliIndex(1))},
                                    {CVector{s, s}, CVector{s, -s}}));
    EXPECT_THROW(ControlEncoding({qrc::ops::swap_gate()}), qrc::ValidationError);
}

TEST(ControlTeleport, PaddedSlotsActAsIdentity) {
    const ControlEncoding three({pauli(PauliIndex(0)), pauli(PauliIndex(1)), pauli(PauliIndex(3))});
    const auto cu = oracle::to_eigen(three.controlled_operation().matrix());
    const oracle::Mat block = cu.block(6, 6, 2, 2);
    EXPECT_LT(oracle::max_abs(block - oracle::Mat::Identity(2, 2)), 1e-15);
}

TEST(DenseCoding, DecodesEveryValue) {
    for (int mu = 0; mu < 4; ++mu) {
        const auto r = dense_coding_bound_demo(PauliIndex(mu));
        EXPECT_EQ(r.decoded, mu);
        EXPECT_NEAR(r.correct_probability, 1.0, 1e-12);
        EXPECT_EQ(r.branches, 16);
        EXPECT_GE(r.report.ledger.cbits_a_to_b, 2);
        EXPECT_TRUE(r.report.all_passed());
    }
}

TEST(EntanglementBound, EveryBranchCarriesTwoEbits) {
    const auto r = entanglement_bound_demo();
    ASSERT_EQ(r.per_branch.size(), 16u);
    for (const auto& b : r.per_branch) {
        EXPECT_NEAR(b.entanglement, 2.0, 1e-9);
        EXPECT_NEAR(b.decomposition, b.entanglement, 1e-9);
        for (double s : b.ancilla_entropy) EXPECT_NEAR(s, 0.0, 1e-9);
        for (double w : b.weight) EXPECT_NEAR(w, 0.25, 1e-9);
    }
    EXPECT_LE(r.max_identity_deviation, 1e-9);
    EXPECT_TRUE(r.report.all_passed());
}

TEST(EntanglementBound, IdlePairsRaiseAncillaEntropy) {
    const auto r = entanglement_bound_demo({.idle_pairs = 1});
    for (const auto& b : r.per_branch) {
        EXPECT_NEAR(b.entanglement, 3.0, 1e-9);
        EXPECT_NEAR(b.decomposition, b.entanglement, 1e-9);
        for (double s : b.ancilla_entropy) EXPECT_NEAR(s, 1.0, 1e-9);
    }
    EXPECT_THROW(entanglement_bound_demo({.idle_pairs = -1}), qrc::ValidationError);
}

TEST(AncillaIndependence, PaulisSamePsiAndOrthogonalPsis) {
    Rng rng(20);
    const CVector psi = haar_state(rng, 2);
    const CVector psi_perp{-std::conj(psi[1]), std::conj(psi[0])};
    EXPECT_LE(ancilla_independence_check({pauli(PauliIndex(1)), pauli(PauliIndex(2))}, {psi}).max_deviation, 1e-9);
    EXPECT_LE(ancilla_independence_check({haar_unitary(rng, 2)}, {psi, psi_perp}).max_deviation, 1e-9);
}

TEST(AncillaIndependence, HaarGrid) {
    Rng rng(21);
    std::vector<UnitaryGate> us;
    std::vector<CVector> psis;
    for (int i = 0; i < 10; ++i) us.push_back(haar_unitary(rng, 2));
    for (int i = 0; i < 10; ++i) psis.push_back(haar_state(rng, 2));
    const auto r = ancilla_independence_check(us, psis);
    EXPECT_EQ(r.configurations, 100);
    EXPECT_LE(r.max_deviation, 1e-9);
    EXPECT_LE(r.max_factor_residual, 1e-9);
}

TEST(TrivialG1NoGo, ReferenceCase) {
    const CVector chi{1.0, 0.0};
    const auto r = trivial_g1_nogo_check(chi, CVector{1.0, 0.0}, CVector{0.0, 1.0}, pauli(PauliIndex(0)));
    EXPECT_NEAR(r.deficit, 1.0, 1e-12);
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(r.u_prime.matrix()) - oracle::pauli(1)), 1e-15);
}

TEST(TrivialG1NoGo, RandomOrthogonalPairs) {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        const CVector chi = haar_state(rng, 8);
        const CVector psi = haar_state(rng, 2);
        const CVector psi_prime{-std::conj(psi[1]), std::conj(psi[0])};
        const auto r = trivial_g1_nogo_check(chi, psi, psi_prime, haar_unitary(rng, 2));
        EXPECT_NEAR(r.deficit, 1.0, 1e-12);
        EXPECT_LT(std::abs(r.input_overlap), 1e-12);
    }
}

TEST(TrivialG1NoGo, Preconditions) {
    const CVector chi{1.0, 0.0};
    const CVector psi{1.0, 0.0};
    EXPECT_THROW(trivial_g1_nogo_check(chi, psi, psi, pauli(PauliIndex(0))), qrc::PreconditionError);
    EXPECT_THROW(trivial_g1_nogo_check(chi, CVector{2.0, 0.0}, CVector{0.0, 1.0}, pauli(PauliIndex(0))),
                 qrc::PreconditionError);
}

TEST(G1Transfer, ReferenceAndRandomInputs) {
    const auto zero = g1_state_transfer_check(CVector{1.0, 0.0});
    EXPECT_NEAR(zero.purity_alpha, 1.0, 1e-12);
    EXPECT_NEAR(zero.transfer_fidelity, 1.0, 1e-12);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(g1_state_transfer_check(CVector{s, s}).transfer_fidelity, 1.0, 1e-10);
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const auto r = g1_state_transfer_check(haar_state(rng, 2));
        EXPECT_GE(r.purity_alpha, 1.0 - 1e-9);
        EXPECT_GE(r.transfer_fidelity, 1.0 - 1e-9);
    }
}

TEST(OrthogonalityWitness, ProportionalPairs) {
    Rng rng(24);
    const auto u = haar_unitary(rng, 2);
    const auto same = control_orthogonality_witness(u, u, 64, rng);
    EXPECT_LE(same.range, 1e-10);
    EXPECT_TRUE(same.proportional);
    const UnitaryGate phased(std::polar(1.0, 0.7) * u.matrix());
    const auto w = control_orthogonality_witness(u, phased, 64, rng);
    EXPECT_LE(w.range, 1e-10);
    EXPECT_TRUE(w.proportional);
}

TEST(OrthogonalityWitness, IdentityVersusZ) {
    Rng rng(25);
    const auto w = control_orthogonality_witness(pauli(PauliIndex(0)), pauli(PauliIndex(3)), 200, rng);
    EXPECT_GT(w.range, 0.9);
    EXPECT_FALSE(w.proportional);
    EXPECT_THROW(control_orthogonality_witness(pauli(PauliIndex(0)), pauli(PauliIndex(3)), 1, rng),
                 qrc::ValidationError);
}

}  // namespace
