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

#ifndef QREMOTE_QOPS_HPP
#define QREMOTE_QOPS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qremote/pure_state.hpp"
#include "qremote/qlinalg.hpp"

namespace qrc::ops {

using linalg::Complex;
using linalg::CMatrix;
using linalg::CVector;
using linalg::Label;
using linalg::PureState;

/// Seeded generator used for all sampling in the library.
using Rng = std::mt19937_64;

/// Square matrix validated to be unitary (max |U^dagger U - 1| <= 1e-9).
class UnitaryGate {
   public:
    static constexpr double kUnitarityTolerance = 1e-9;

    explicit UnitaryGate(CMatrix matrix);

    const CMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    /// Number of qubits the gate acts on.
    std::size_t arity() const { return arity_; }

    UnitaryGate adjoint() const { return UnitaryGate(matrix_.adjoint()); }
    friend UnitaryGate operator*(const UnitaryGate& a, const UnitaryGate& b) {
        return UnitaryGate(a.matrix_ * b.matrix_);
    }
    CVector operator*(const CVector& v) const { return matrix_ * v; }

   private:
    CMatrix matrix_;
    std::size_t arity_ = 0;
};

/// Index into {1, X, Y, Z}; construction rejects values outside 0..3.
class PauliIndex {
   public:
    explicit PauliIndex(int mu);
    int value() const { return mu_; }
    friend bool operator==(PauliIndex, PauliIndex) = default;

   private:
    int mu_;
};

/// Index of the Bell state |B^mu> = (sigma^mu (x) 1)|B^0>.
class BellIndex {
   public:
    explicit BellIndex(int mu);
    int value() const { return mu_; }
    friend bool operator==(BellIndex, BellIndex) = default;

   private:
    int mu_;
};

UnitaryGate pauli(PauliIndex mu);
UnitaryGate hadamard();
/// Two-qubit SWAP.
UnitaryGate swap_gate();

/// Bell state in the ordering generated from |B^0> = (|00> + |11>)/sqrt(2) by
/// a Pauli on the first qubit, phases included: |B^2> = (i|10> - i|01>)/sqrt(2).
CVector bell_state(BellIndex mu);

/// All four Bell states, indexed by mu.
const std::array<CVector, 4>& bell_basis();

struct PauliCoefficients {
    std::array<Complex, 4> alpha{};

    /// sum_mu alpha_mu sigma^mu
    CMatrix reconstruct() const;
};

/// alpha_mu = Tr(sigma^mu U) / 2. Throws DimensionError unless `u` is 2x2.
PauliCoefficients pauli_decompose(const CMatrix& u);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R phase-fixed to be positive.
UnitaryGate haar_unitary(Rng& rng, std::size_t dim);
UnitaryGate haar_unitary(std::uint64_t seed, std::size_t dim);

/// Uniformly distributed pure state (normalized complex Gaussian vector).
CVector haar_state(Rng& rng, std::size_t dim);

/// Unitary sending `psi` to |0>, built from a Householder reflection. Its
/// first row is psi^dagger. Throws ValidationError for a zero vector.
UnitaryGate u_psi_for(const CVector& psi);

struct BellOutcome {
    BellIndex outcome{0};
    double probability = 0.0;
    PureState post_state;
};

/// Every Bell-measurement outcome on (first, second) with non-negligible
/// probability. Outcome mu is the projection onto |B^mu> with `first` as
/// the Pauli-carrying qubit.
std::vector<BellOutcome> bell_measure(const PureState& state, const Label& first, const Label& second);

/// One outcome drawn with the Born probabilities.
BellOutcome bell_measure_sample(const PureState& state, const Label& first, const Label& second, Rng& rng);

/// Computational basis of `qubits` qubits.
std::vector<CVector> computational_basis(std::size_t qubits);

}  // namespace qrc::ops

#endif  // QREMOTE_QOPS_HPP
