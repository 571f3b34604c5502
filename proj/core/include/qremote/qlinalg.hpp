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

#ifndef QREMOTE_QLINALG_HPP
#define QREMOTE_QLINALG_HPP

// Dense complex linear algebra for small multi-qubit systems.
//
// Qubit ordering convention: in a label list, index 0 is the most significant
// factor of every tensor product and of every basis index.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qrc::linalg {

using Complex = std::complex<double>;
using Label = std::string;

/// Validation tolerance for Hermiticity, unit trace and positivity.
inline constexpr double kValidationTolerance = 1e-9;
/// Bound on ||H - V diag(w) V^dagger|| accepted from the eigensolver.
inline constexpr double kReconstructionTolerance = 1e-10;

class CVector {
   public:
    CVector() = default;
    explicit CVector(std::size_t dim) : entries_(dim) {}
    explicit CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}
    CVector(std::initializer_list<Complex> entries) : entries_(entries) {}

    /// The computational basis vector |index> of the given dimension.
    static CVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return entries_.size(); }
    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }
    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> entries() const { return entries_; }

    double norm() const;
    bool is_finite() const;
    /// Throws ValidationError for a zero or non-finite vector.
    CVector normalized() const;

    CVector& operator+=(const CVector& other);
    CVector& operator-=(const CVector& other);
    CVector& operator*=(Complex scale);

    friend CVector operator+(CVector a, const CVector& b) { return a += b; }
    friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
    friend CVector operator*(Complex s, CVector v) { return v *= s; }
    friend bool operator==(const CVector&, const CVector&) = default;

   private:
    std::vector<Complex> entries_;
};

/// Row-major dense complex matrix.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    /// Diagonal matrix with the given entries.
    static CMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Complex> data() const { return data_; }

    CMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    bool is_finite() const;
    CVector column(std::size_t c) const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex scale);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CVector operator*(const CMatrix& a, const CVector& x);
    friend bool operator==(const CMatrix&, const CMatrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product; the left operand is the most significant factor.
CVector tensor(const CVector& a, const CVector& b);
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// <a|b>, conjugate-linear in `a`.
Complex overlap(const CVector& a, const CVector& b);

/// |a><b|
CMatrix outer(const CVector& a, const CVector& b);

/// |<a|b>|^2 for pure states.
double fidelity(const CVector& a, const CVector& b);

/// max |H_ij - conj(H_ji)|
double hermiticity_defect(const CMatrix& h);

/// max |U^dagger U - 1|
double unitarity_defect(const CMatrix& u);

struct EigenDecomposition {
    std::vector<double> values;  // descending
    CMatrix vectors;             // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below 1e-12 * max(1, ||H||_F), or after 100 sweeps.
/// Throws ValidationError for non-square, non-finite or non-Hermitian input.
EigenDecomposition hermitian_eigen(const CMatrix& h);

std::vector<double> hermitian_eigenvalues(const CMatrix& h);

struct QrDecomposition {
    CMatrix q;
    CMatrix r;
};

/// Householder QR of a square matrix; A = Q R with Q unitary and R upper triangular.
QrDecomposition householder_qr(const CMatrix& a);

/// Hermitian, unit-trace operator over an ordered list of qubit labels.
///
/// Construction checks shape, label consistency, Hermiticity and trace.
/// Positivity is checked when the spectrum is computed (see
/// von_neumann_entropy).
class DensityOp {
   public:
    DensityOp(CMatrix matrix, std::vector<Label> labels);

    static DensityOp from_pure(const CVector& psi, std::vector<Label> labels);

    const CMatrix& matrix() const { return matrix_; }
    const std::vector<Label>& labels() const { return labels_; }
    std::size_t dim() const { return matrix_.rows(); }

    /// Tr(rho^2)
    double purity() const;
    /// <v|rho|v>
    double expectation(const CVector& v) const;

   private:
    struct Trusted {};
    DensityOp(Trusted, CMatrix matrix, std::vector<Label> labels)
        : matrix_(std::move(matrix)), labels_(std::move(labels)) {}

    friend DensityOp partial_trace(const DensityOp& rho, std::span<const Label> keep);

    CMatrix matrix_;
    std::vector<Label> labels_;
};

/// Reduced operator on `keep`, ordered as in `keep`. Throws LabelError for
/// labels not present in `rho` or repeated in `keep`.
DensityOp partial_trace(const DensityOp& rho, std::span<const Label> keep);

/// Base-2 von Neumann entropy. Eigenvalues in [-tol, 0] count as zero; any
/// eigenvalue below -tol raises PositivityError.
double von_neumann_entropy(const DensityOp& rho);

/// Number of qubits n with 2^n == dim; throws DimensionError otherwise.
std::size_t qubit_count(std::size_t dim);

/// Throws LabelError on duplicates.
void require_unique(std::span<const Label> labels);

}  // namespace qrc::linalg

#endif  // QREMOTE_QLINALG_HPP
