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

#ifndef QREMOTE_PURE_STATE_HPP
#define QREMOTE_PURE_STATE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qremote/qlinalg.hpp"

namespace qrc::linalg {

/// Normalized amplitude vector over an ordered list of labeled qubits.
///
/// The default-constructed state has no qubits and amplitude 1.
class PureState {
   public:
    /// Tolerance on |norm - 1| accepted at construction.
    static constexpr double kNormTolerance = 1e-10;

    PureState() : amplitudes_{Complex{1.0}} {}
    PureState(CVector amplitudes, std::vector<Label> labels);

    const CVector& amplitudes() const { return amplitudes_; }
    const std::vector<Label>& labels() const { return labels_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amplitudes_.dim(); }

    bool has(const Label& label) const;
    /// Position of `label` in the label list; throws LabelError if absent.
    std::size_t position(const Label& label) const;

    /// This state followed by `other` as less significant factors.
    PureState tensor(const PureState& other) const;

    /// Applies `gate` (2^k x 2^k) to the k target qubits, the first target
    /// being the gate's most significant factor.
    void apply(const CMatrix& gate, std::span<const Label> targets);

    /// Same state with the qubits permuted into `order` (a permutation of labels()).
    PureState reordered(std::span<const Label> order) const;

    /// Reduced density operator on `keep`, in `keep`'s order.
    DensityOp reduced(std::span<const Label> keep) const;

    /// Labels not in `labels`, in this state's order.
    std::vector<Label> complement(std::span<const Label> labels) const;

    struct Projection;

    /// Probability below which a measurement branch is dropped.
    static constexpr double kNegligibleProbability = 1e-14;

    /// Projective measurement of `targets` in the orthonormal `basis` (vectors
    /// of dimension 2^targets.size()). Returns every outcome whose probability
    /// exceeds kNegligibleProbability, with renormalized post-measurement states.
    std::vector<Projection> measure(std::span<const Label> targets, std::span<const CVector> basis) const;

    /// Unnormalized amplitudes of the other qubits after contracting
    /// `targets` with <v|.
    CVector contract(std::span<const Label> targets, const CVector& v) const;

    struct Factor;

    /// Extracts the factor on `keep` assuming the state is a product across
    /// keep / complement. The factor's global phase is arbitrary.
    Factor factor(std::span<const Label> keep) const;

   private:
    CVector amplitudes_;
    std::vector<Label> labels_;
};

struct PureState::Projection {
    std::size_t outcome = 0;
    double probability = 0.0;
    PureState post;
};

struct PureState::Factor {
    PureState state;
    /// 1 - |<factor (x) rest | this>|^2 for the best rank-one split; zero for an exact product.
    double residual = 0.0;
};

}  // namespace qrc::linalg

#endif  // QREMOTE_PURE_STATE_HPP
