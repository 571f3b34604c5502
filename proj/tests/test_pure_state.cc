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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qremote/errors.hpp"
#include "qremote/pure_state.hpp"

namespace {

using namespace qrc::linalg;

PureState random_pure(std::mt19937_64& rng, std::vector<Label> labels) {
    const auto dim = Eigen::Index{1} << labels.size();
    return PureState(oracle::from_eigen(oracle::random_state(rng, dim)), std::move(labels));
}

std::vector<CVector> z_basis(std::size_t dim) {
    std::vector<CVector> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(CVector::basis(dim, i));
    return out;
}

TEST(PureStateTest, DefaultIsEmptyProduct) {
    const PureState s;
    EXPECT_EQ(s.num_qubits(), 0u);
    EXPECT_EQ(s.dim(), 1u);
}

TEST(PureStateTest, ConstructionValidates) {
    EXPECT_THROW(PureState(CVector{1.0, 1.0}, {"a"}), qrc::ValidationError);
    EXPECT_THROW(PureState(CVector{1.0, 0.0}, {"a", "b"}), qrc::LabelError);
    EXPECT_THROW(PureState(CVector{1.0, 0.0, 0.0, 0.0}, {"a", "a"}), qrc::LabelError);
    EXPECT_THROW(PureState(CVector{std::nan(""), 0.0}, {"a"}), qrc::ValidationError);
    EXPECT_NO_THROW(PureState(CVector{1.0 + 5e-11, 0.0}, {"a"}));
}

TEST(PureStateTest, TensorAppendsLessSignificantFactor) {
    const PureState one(CVector{0.0, 1.0}, {"a"});
    const PureState zero(CVector{1.0, 0.0}, {"b"});
    const auto s = one.tensor(zero);
    EXPECT_EQ(s.labels(), (std::vector<Label>{"a", "b"}));
    EXPECT_EQ(s.amplitudes(), (CVector{0.0, 0.0, 1.0, 0.0}));
    EXPECT_THROW(one.tensor(one), qrc::LabelError);
}

TEST(PureStateTest, ApplyMatchesKroneckerOracle) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        PureState s = random_pure(rng, {"a", "b", "c"});
        const oracle::Vec before = oracle::to_eigen(s.amplitudes());
        const oracle::Mat g = oracle::random_unitary(rng, 4);
        const std::vector<Label> targets{"a", "c"};
        s.apply(oracle::from_eigen(g), targets);
        // Permute to (a, c, b), apply g (x) 1, permute back.
        oracle::Vec permuted(8), expected(8);
        auto idx = [](int a, int b, int c) { return a * 4 + b * 2 + c; };
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) permuted(idx(a, c, b)) = before(idx(a, b, c));
        const oracle::Vec out = oracle::kron(g, oracle::Mat::Identity(2, 2)) * permuted;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) expected(idx(a, b, c)) = out(idx(a, c, b));
        EXPECT_LT(oracle::max_abs(oracle::to_eigen(s.amplitudes()) - expected), 1e-13);
        EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
    }
}

TEST(PureStateTest, ApplyRejectsBadTargets) {
    PureState s(CVector{1.0, 0.0, 0.0, 0.0}, {"a", "b"});
    const std::vector<Label> one{"a"};
    const std::vector<Label> missing{"z"};
    EXPECT_THROW(s.apply(CMatrix::identity(4), one), qrc::DimensionError);
    EXPECT_THROW(s.apply(CMatrix::identity(2), missing), qrc::LabelError);
}

TEST(PureStateTest, ReorderedPermutesAmplitudes) {
    const PureState s(CVector{0.0, 1.0, 0.0, 0.0}, {"a", "b"});
    const std::vector<Label> order{"b", "a"};
    const auto r = s.reordered(order);
    EXPECT_EQ(r.labels(), order);
    EXPECT_EQ(r.amplitudes(), (CVector{0.0, 0.0, 1.0, 0.0}));
}

TEST(PureStateTest, ReducedMatchesOracle) {
    std::mt19937_64 rng(12);
    const PureState s = random_pure(rng, {"a", "b", "c"});
    const std::vector<Label> keep{"c", "a"};
    const auto rho = s.reduced(keep);
    const auto expected = oracle::partial_trace_pure(oracle::to_eigen(s.amplitudes()), 3, {2, 0});
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(rho.matrix()) - expected), 1e-13);
}

TEST(PureStateTest, MeasureProbabilitiesSumToOne) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        const PureState s = random_pure(rng, {"a", "b", "c"});
        const std::vector<Label> targets{"b", "c"};
        const auto branches = s.measure(targets, z_basis(4));
        double total = 0.0;
        for (const auto& p : branches) {
            total += p.probability;
            EXPECT_NEAR(p.post.amplitudes().norm(), 1.0, 1e-10);
            EXPECT_NEAR(p.post.reduced(targets).expectation(CVector::basis(4, p.outcome)), 1.0, 1e-10);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(PureStateTest, MeasureDropsZeroProbabilityBranches) {
    const PureState s(CVector{1.0, 0.0}, {"a"});
    const std::vector<Label> t{"a"};
    const auto branches = s.measure(t, z_basis(2));
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_EQ(branches[0].outcome, 0u);
    EXPECT_DOUBLE_EQ(branches[0].probability, 1.0);
}

TEST(PureStateTest, MeasureRejectsNonOrthonormalBasis) {
    const PureState s(CVector{1.0, 0.0}, {"a"});
    const std::vector<Label> t{"a"};
    const std::vector<CVector> bad{CVector{1.0, 0.0}, CVector{1.0, 0.0}};
    EXPECT_THROW(s.measure(t, bad), qrc::ValidationError);
}

TEST(PureStateTest, ContractLeavesRemainingAmplitudes) {
    const auto bell = oracle::from_eigen(oracle::bell(0));
    const PureState s(bell, {"a", "b"});
    const std::vector<Label> t{"a"};
    const CVector rest = s.contract(t, CVector::basis(2, 1));
    EXPECT_LT(std::abs(rest[0]), 1e-15);
    EXPECT_NEAR(rest[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PureStateTest, FactorOfProductAndEntangledStates) {
    std::mt19937_64 rng(6);
    const auto psi = oracle::random_state(rng, 2);
    const auto phi = oracle::random_state(rng, 4);
    const PureState s(oracle::from_eigen(oracle::kron(phi, psi)), {"a", "b", "c"});
    const std::vector<Label> keep{"c"};
    const auto f = s.factor(keep);
    EXPECT_LT(f.residual, 1e-12);
    EXPECT_NEAR(fidelity(f.state.amplitudes(), oracle::from_eigen(psi)), 1.0, 1e-12);

    const PureState bell(oracle::from_eigen(oracle::bell(0)), {"a", "b"});
    const std::vector<Label> half{"a"};
    EXPECT_NEAR(bell.factor(half).residual, 0.5, 1e-12);
}

TEST(PureStateTest, ComplementPreservesOrder) {
    const PureState s(CVector::basis(8, 0), {"a", "b", "c"});
    const std::vector<Label> drop{"b"};
    EXPECT_EQ(s.complement(drop), (std::vector<Label>{"a", "c"}));
}

}  // namespace
