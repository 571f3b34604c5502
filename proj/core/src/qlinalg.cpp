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

#include "qremote/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qremote/errors.hpp"

namespace qrc::linalg {

namespace {

constexpr double kJacobiThreshold = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

void require_same_dim(const CVector& a, const CVector& b, const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw DimensionError(msg.str());
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch");
    }
}

double off_diagonal_norm(const CMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

}  // namespace

CVector CVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis: index out of range");
    CVector v(dim);
    v[index] = 1.0;
    return v;
}

double CVector::norm() const {
    double sum = 0.0;
    for (const auto& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
}

bool CVector::is_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CVector CVector::normalized() const {
    const double n = norm();
    if (!is_finite() || n == 0.0) throw ValidationError("cannot normalize a zero or non-finite vector");
    CVector out = *this;
    out *= 1.0 / n;
    return out;
}

CVector& CVector::operator+=(const CVector& other) {
    require_same_dim(*this, other, "vector addition");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

CVector& CVector::operator-=(const CVector& other) {
    require_same_dim(*this, other, "vector subtraction");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

CVector& CVector::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

Complex CMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& z : data_) sum += std::norm(z);
    return std::sqrt(sum);
}

bool CMatrix::is_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CVector CMatrix::column(std::size_t c) const {
    if (c >= cols_) throw DimensionError("column index out of range");
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CVector operator*(const CMatrix& a, const CVector& x) {
    if (a.cols() != x.dim()) throw DimensionError("matrix-vector product: dimension mismatch");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * x[k];
        out[i] = acc;
    }
    return out;
}

CVector tensor(const CVector& a, const CVector& b) {
    CVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    }
    return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

Complex overlap(const CVector& a, const CVector& b) {
    require_same_dim(a, b, "overlap");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

CMatrix outer(const CVector& a, const CVector& b) {
    CMatrix out(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) out(i, j) = a[i] * std::conj(b[j]);
    }
    return out;
}

double fidelity(const CVector& a, const CVector& b) { return std::norm(overlap(a, b)); }

double hermiticity_defect(const CMatrix& h) {
    if (!h.is_square()) throw DimensionError("hermiticity check on a non-square matrix");
    double worst = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = i; j < h.cols(); ++j) {
            worst = std::max(worst, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    }
    return worst;
}

double unitarity_defect(const CMatrix& u) {
    if (!u.is_square()) throw DimensionError("unitarity check on a non-square matrix");
    return (u.adjoint() * u - CMatrix::identity(u.rows())).max_abs();
}

EigenDecomposition hermitian_eigen(const CMatrix& h) {
    if (!h.is_square()) throw ValidationError("hermitian_eigen: matrix is not square");
    if (!h.is_finite()) throw ValidationError("hermitian_eigen: non-finite entries");
    if (hermiticity_defect(h) > kValidationTolerance) {
        throw ValidationError("hermitian_eigen: matrix is not Hermitian");
    }
    const std::size_t n = h.rows();
    CMatrix a = h;
    CMatrix v = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double threshold = kJacobiThreshold * std::max(1.0, h.frobenius_norm());
    int sweeps = 0;
    while (sweeps < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold) {
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                // Phase D = diag(.., e^{-i phi} at q) makes a_pq real, then a
                // real Givens rotation annihilates it. J = D G.
                const Complex phase = apq / r;  // e^{i phi}
                const Complex phase_conj = std::conj(phase);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A J (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phase_conj * akq;
                    a(k, q) = s * akp + c * phase_conj * akq;
                }
                // A <- J^dagger A (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // V <- V J
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * phase_conj * vkq;
                    v(k, q) = s * vkp + c * phase_conj * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.values.reserve(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]).real());
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) { return hermitian_eigen(h).values; }

QrDecomposition householder_qr(const CMatrix& a) {
    if (!a.is_square()) throw DimensionError("householder_qr: matrix is not square");
    const std::size_t n = a.rows();
    CMatrix r = a;
    CMatrix q = CMatrix::identity(n);
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k; i < n; ++i) xnorm += std::norm(r(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const Complex x0 = r(k, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;

        double vnorm = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : Complex{});
            vnorm += std::norm(v[i]);
        }
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (std::size_t i = k; i < n; ++i) v[i] /= vnorm;

        // R <- (1 - 2 v v^dagger) R on rows k..n-1
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * r(i, j);
            for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * v[i] * dot;
        }
        // Q <- Q (1 - 2 v v^dagger) on columns k..n-1
        for (std::size_t row = 0; row < n; ++row) {
            Complex dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += q(row, i) * v[i];
            for (std::size_t i = k; i < n; ++i) q(row, i) -= 2.0 * dot * std::conj(v[i]);
        }
        for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }
    return {std::move(q), std::move(r)};
}

std::size_t qubit_count(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

void require_unique(std::span<const Label> labels) {
    std::set<Label> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) throw LabelError("duplicate qubit label '" + l + "'");
    }
}

DensityOp::DensityOp(CMatrix matrix, std::vector<Label> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
    if (!matrix_.is_square()) throw DimensionError("density operator must be square");
    if (qubit_count(matrix_.rows()) != labels_.size()) {
        throw LabelError("density operator: label count does not match dimension");
    }
    require_unique(labels_);
    if (!matrix_.is_finite()) throw ValidationError("density operator has non-finite entries");
    if (hermiticity_defect(matrix_) > kValidationTolerance) {
        throw ValidationError("density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex{1.0}) > kValidationTolerance) {
        throw ValidationError("density operator does not have unit trace");
    }
}

DensityOp DensityOp::from_pure(const CVector& psi, std::vector<Label> labels) {
    if (std::abs(psi.norm() - 1.0) > kValidationTolerance) {
        throw ValidationError("from_pure: state is not normalized");
    }
    return DensityOp(outer(psi, psi), std::move(labels));
}

double DensityOp::purity() const {
    double sum = 0.0;
    for (const auto& z : matrix_.data()) sum += std::norm(z);
    return sum;
}

double DensityOp::expectation(const CVector& v) const { return overlap(v, matrix_ * v).real(); }

DensityOp partial_trace(const DensityOp& rho, std::span<const Label> keep) {
    require_unique(keep);
    const auto& labels = rho.labels();
    const std::size_t n = labels.size();
    std::vector<std::size_t> keep_pos;
    keep_pos.reserve(keep.size());
    for (const auto& l : keep) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw LabelError("partial_trace: unknown label '" + l + "'");
        keep_pos.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
    std::vector<std::size_t> rest_pos;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(keep_pos.begin(), keep_pos.end(), i) == keep_pos.end()) rest_pos.push_back(i);
    }

    const std::size_t dk = std::size_t{1} << keep_pos.size();
    const std::size_t dr = std::size_t{1} << rest_pos.size();
    // full[a * dr + r]: full index whose keep bits spell a and rest bits spell r.
    std::vector<std::size_t> full(dk * dr);
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t r = 0; r < dr; ++r) {
            std::size_t f = 0;
            for (std::size_t j = 0; j < keep_pos.size(); ++j) {
                if ((a >> (keep_pos.size() - 1 - j)) & 1U) f |= std::size_t{1} << (n - 1 - keep_pos[j]);
            }
            for (std::size_t j = 0; j < rest_pos.size(); ++j) {
                if ((r >> (rest_pos.size() - 1 - j)) & 1U) f |= std::size_t{1} << (n - 1 - rest_pos[j]);
            }
            full[a * dr + r] = f;
        }
    }

    CMatrix out(dk, dk);
    const CMatrix& m = rho.matrix();
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < dr; ++r) acc += m(full[a * dr + r], full[b * dr + r]);
            out(a, b) = acc;
        }
    }
    return DensityOp(DensityOp::Trusted{}, std::move(out), std::vector<Label>(keep.begin(), keep.end()));
}

double von_neumann_entropy(const DensityOp& rho) {
    double entropy = 0.0;
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
        if (lambda < -kValidationTolerance) {
            throw PositivityError("density operator has eigenvalue " + std::to_string(lambda));
        }
        if (lambda <= 0.0) continue;
        entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

}  // namespace qrc::linalg
