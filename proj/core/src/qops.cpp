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

#include "qremote/qops.hpp"

#include <cmath>
#include <string>

#include "qremote/errors.hpp"

namespace qrc::ops {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

UnitaryGate::UnitaryGate(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square()) throw DimensionError("unitary gate must be square");
    arity_ = linalg::qubit_count(matrix_.rows());
    if (!matrix_.is_finite() || linalg::unitarity_defect(matrix_) > kUnitarityTolerance) {
        throw ValidationError("matrix is not unitary");
    }
}

PauliIndex::PauliIndex(int mu) : mu_(mu) {
    if (mu < 0 || mu > 3) throw ValidationError("Pauli index " + std::to_string(mu) + " out of range 0..3");
}

BellIndex::BellIndex(int mu) : mu_(mu) {
    if (mu < 0 || mu > 3) throw ValidationError("Bell index " + std::to_string(mu) + " out of range 0..3");
}

UnitaryGate pauli(PauliIndex mu) {
    switch (mu.value()) {
        case 0:
            return UnitaryGate(CMatrix::identity(2));
        case 1:
            return UnitaryGate(CMatrix{{0.0, 1.0}, {1.0, 0.0}});
        case 2:
            return UnitaryGate(CMatrix{{0.0, -kI}, {kI, 0.0}});
        default:
            return UnitaryGate(CMatrix{{1.0, 0.0}, {0.0, -1.0}});
    }
}

UnitaryGate hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return UnitaryGate(CMatrix{{s, s}, {s, -s}});
}

UnitaryGate swap_gate() {
    return UnitaryGate(CMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}});
}

CVector bell_state(BellIndex mu) {
    const double s = 1.0 / std::sqrt(2.0);
    const CVector b0{s, 0.0, 0.0, s};
    const CMatrix lift = linalg::tensor(pauli(PauliIndex(mu.value())).matrix(), CMatrix::identity(2));
    return lift * b0;
}

const std::array<CVector, 4>& bell_basis() {
    static const std::array<CVector, 4> basis{bell_state(BellIndex(0)), bell_state(BellIndex(1)),
                                              bell_state(BellIndex(2)), bell_state(BellIndex(3))};
    return basis;
}

CMatrix PauliCoefficients::reconstruct() const {
    CMatrix out(2, 2);
    for (int mu = 0; mu < 4; ++mu) out += alpha[mu] * pauli(PauliIndex(mu)).matrix();
    return out;
}

PauliCoefficients pauli_decompose(const CMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2) throw DimensionError("pauli_decompose expects a 2x2 matrix");
    PauliCoefficients c;
    for (int mu = 0; mu < 4; ++mu) c.alpha[mu] = (pauli(PauliIndex(mu)).matrix() * u).trace() / 2.0;
    return c;
}

UnitaryGate haar_unitary(Rng& rng, std::size_t dim) {
    if (dim < 2) throw ValidationError("haar_unitary: dimension must be at least 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix z(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(r, c) = Complex{re, im};
        }
    }
    auto [q, r] = linalg::householder_qr(z);
    for (std::size_t c = 0; c < dim; ++c) {
        const Complex d = r(c, c);
        const Complex phase = std::abs(d) == 0.0 ? Complex{1.0} : d / std::abs(d);
        for (std::size_t row = 0; row < dim; ++row) q(row, c) *= phase;
    }
    return UnitaryGate(std::move(q));
}

UnitaryGate haar_unitary(std::uint64_t seed, std::size_t dim) {
    Rng rng(seed);
    return haar_unitary(rng, dim);
}

CVector haar_state(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex{re, im};
    }
    return v.normalized();
}

UnitaryGate u_psi_for(const CVector& psi) {
    const CVector unit = psi.normalized();
    const std::size_t n = unit.dim();
    // Householder reflection H = 1 - 2 w w^dagger / |w|^2 with
    // w = psi + e^{i arg psi_0} e_0 maps psi to -e^{i arg psi_0} e_0.
    const Complex phase = std::abs(unit[0]) == 0.0 ? Complex{1.0} : unit[0] / std::abs(unit[0]);
    CVector w = unit;
    w[0] += phase;
    const double wnorm2 = w.norm() * w.norm();
    CMatrix h = CMatrix::identity(n) - Complex{2.0 / wnorm2} * linalg::outer(w, w);
    return UnitaryGate(-std::conj(phase) * h);
}

std::vector<BellOutcome> bell_measure(const PureState& state, const Label& first, const Label& second) {
    const std::array<Label, 2> pair{first, second};
    std::vector<BellOutcome> out;
    for (auto& proj : state.measure(pair, bell_basis())) {
        out.push_back({BellIndex(static_cast<int>(proj.outcome)), proj.probability, std::move(proj.post)});
    }
    return out;
}

BellOutcome bell_measure_sample(const PureState& state, const Label& first, const Label& second, Rng& rng) {
    auto branches = bell_measure(state, first, second);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double u = uniform(rng);
    for (auto& b : branches) {
        if (u < b.probability) return std::move(b);
        u -= b.probability;
    }
    return std::move(branches.back());
}

std::vector<CVector> computational_basis(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<CVector> basis;
    basis.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(CVector::basis(dim, i));
    return basis;
}

}  // namespace qrc::ops
