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

#include "qremote/pure_state.hpp"

#include <algorithm>
#include <cmath>

#include "qremote/errors.hpp"

namespace qrc::linalg {

namespace {

// Index layout of a subset of qubits against the remainder: index(a, r) is
// the full basis index whose subset bits read `a` (subset order) and whose
// remaining bits read `r` (state order).
struct Split {
    std::size_t subset_dim = 1;
    std::size_t rest_dim = 1;
    std::vector<std::size_t> full;
    std::vector<Label> rest_labels;

    std::size_t index(std::size_t a, std::size_t r) const { return full[a * rest_dim + r]; }
};

Split make_split(const PureState& state, std::span<const Label> subset) {
    require_unique(subset);
    const std::size_t n = state.num_qubits();
    std::vector<std::size_t> sub_pos;
    sub_pos.reserve(subset.size());
    for (const auto& l : subset) sub_pos.push_back(state.position(l));
    std::vector<std::size_t> rest_pos;
    Split split;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(sub_pos.begin(), sub_pos.end(), i) == sub_pos.end()) {
            rest_pos.push_back(i);
            split.rest_labels.push_back(state.labels()[i]);
        }
    }
    split.subset_dim = std::size_t{1} << sub_pos.size();
    split.rest_dim = std::size_t{1} << rest_pos.size();
    split.full.resize(split.subset_dim * split.rest_dim);
    for (std::size_t a = 0; a < split.subset_dim; ++a) {
        for (std::size_t r = 0; r < split.rest_dim; ++r) {
            std::size_t f = 0;
            for (std::size_t j = 0; j < sub_pos.size(); ++j) {
                if ((a >> (sub_pos.size() - 1 - j)) & 1U) f |= std::size_t{1} << (n - 1 - sub_pos[j]);
            }
            for (std::size_t j = 0; j < rest_pos.size(); ++j) {
                if ((r >> (rest_pos.size() - 1 - j)) & 1U) f |= std::size_t{1} << (n - 1 - rest_pos[j]);
            }
            split.full[a * split.rest_dim + r] = f;
        }
    }
    return split;
}

}  // namespace

PureState::PureState(CVector amplitudes, std::vector<Label> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
    if (qubit_count(amplitudes_.dim()) != labels_.size()) {
        throw LabelError("pure state: label count does not match dimension");
    }
    require_unique(labels_);
    if (!amplitudes_.is_finite()) throw ValidationError("pure state has non-finite amplitudes");
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
        throw ValidationError("pure state is not normalized");
    }
}

bool PureState::has(const Label& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t PureState::position(const Label& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw LabelError("unknown qubit label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

PureState PureState::tensor(const PureState& other) const {
    std::vector<Label> labels = labels_;
    labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
    return PureState(linalg::tensor(amplitudes_, other.amplitudes_), std::move(labels));
}

void PureState::apply(const CMatrix& gate, std::span<const Label> targets) {
    const Split split = make_split(*this, targets);
    if (gate.rows() != split.subset_dim || gate.cols() != split.subset_dim) {
        throw DimensionError("gate dimension does not match the number of targets");
    }
    CVector x(split.subset_dim);
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
        for (std::size_t a = 0; a < split.subset_dim; ++a) x[a] = amplitudes_[split.index(a, r)];
        const CVector y = gate * x;
        for (std::size_t a = 0; a < split.subset_dim; ++a) amplitudes_[split.index(a, r)] = y[a];
    }
}

PureState PureState::reordered(std::span<const Label> order) const {
    if (order.size() != labels_.size()) throw LabelError("reordered: order is not a permutation of the labels");
    const Split split = make_split(*this, order);
    PureState out;
    out.labels_.assign(order.begin(), order.end());
    out.amplitudes_ = CVector(split.subset_dim);
    for (std::size_t a = 0; a < split.subset_dim; ++a) out.amplitudes_[a] = amplitudes_[split.index(a, 0)];
    return out;
}

DensityOp PureState::reduced(std::span<const Label> keep) const {
    const Split split = make_split(*this, keep);
    CMatrix rho(split.subset_dim, split.subset_dim);
    for (std::size_t a = 0; a < split.subset_dim; ++a) {
        for (std::size_t b = a; b < split.subset_dim; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < split.rest_dim; ++r) {
                acc += amplitudes_[split.index(a, r)] * std::conj(amplitudes_[split.index(b, r)]);
            }
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
    }
    return DensityOp(std::move(rho), std::vector<Label>(keep.begin(), keep.end()));
}

std::vector<Label> PureState::complement(std::span<const Label> labels) const {
    for (const auto& l : labels) position(l);
    std::vector<Label> out;
    for (const auto& l : labels_) {
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) out.push_back(l);
    }
    return out;
}

CVector PureState::contract(std::span<const Label> targets, const CVector& v) const {
    const Split split = make_split(*this, targets);
    if (v.dim() != split.subset_dim) throw DimensionError("contract: vector dimension does not match targets");
    CVector out(split.rest_dim);
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < split.subset_dim; ++a) acc += std::conj(v[a]) * amplitudes_[split.index(a, r)];
        out[r] = acc;
    }
    return out;
}

std::vector<PureState::Projection> PureState::measure(std::span<const Label> targets,
                                                      std::span<const CVector> basis) const {
    const Split split = make_split(*this, targets);
    if (basis.size() != split.subset_dim) throw DimensionError("measure: basis size does not match targets");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dim() != split.subset_dim) throw DimensionError("measure: basis vector has wrong dimension");
        for (std::size_t j = i; j < basis.size(); ++j) {
            const Complex g = overlap(basis[i], basis[j]);
            if (std::abs(g - Complex{i == j ? 1.0 : 0.0}) > kValidationTolerance) {
                throw ValidationError("measure: basis is not orthonormal");
            }
        }
    }

    std::vector<Projection> out;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        CVector rest(split.rest_dim);
        double p = 0.0;
        for (std::size_t r = 0; r < split.rest_dim; ++r) {
            Complex acc = 0.0;
            for (std::size_t a = 0; a < split.subset_dim; ++a) {
                acc += std::conj(basis[k][a]) * amplitudes_[split.index(a, r)];
            }
            rest[r] = acc;
            p += std::norm(acc);
        }
        if (p <= kNegligibleProbability) continue;
        const double scale = 1.0 / std::sqrt(p);
        Projection proj;
        proj.outcome = k;
        proj.probability = p;
        proj.post.labels_ = labels_;
        proj.post.amplitudes_ = CVector(amplitudes_.dim());
        for (std::size_t a = 0; a < split.subset_dim; ++a) {
            for (std::size_t r = 0; r < split.rest_dim; ++r) {
                proj.post.amplitudes_[split.index(a, r)] = basis[k][a] * rest[r] * scale;
            }
        }
        out.push_back(std::move(proj));
    }
    return out;
}

PureState::Factor PureState::factor(std::span<const Label> keep) const {
    const DensityOp rho = reduced(keep);
    const EigenDecomposition eig = hermitian_eigen(rho.matrix());
    Factor out;
    out.residual = std::max(0.0, 1.0 - eig.values.front());
    out.state.labels_.assign(keep.begin(), keep.end());
    out.state.amplitudes_ = eig.vectors.column(0).normalized();
    return out;
}

}  // namespace qrc::linalg
