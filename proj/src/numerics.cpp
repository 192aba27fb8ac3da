// Copyright 2026 The dudesign Authors
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

#include "dudesign/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "dudesign/error.hpp"

namespace dudesign {

namespace {

size_t product(std::span<const size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
}

void check_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        fail(ErrorKind::Shape, std::string(what) + " requires a square matrix, got " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()));
    }
}

}  // namespace

Tensor::Tensor(std::vector<size_t> dims) : dims_(std::move(dims)), data_(product(dims_), cdouble{0.0, 0.0}) {
}

Tensor::Tensor(std::vector<size_t> dims, std::vector<cdouble> data) : dims_(std::move(dims)), data_(std::move(data)) {
    if (data_.size() != product(dims_)) {
        fail(ErrorKind::Shape, "tensor data length " + std::to_string(data_.size()) + " does not match dims");
    }
}

Tensor Tensor::from_matrix(const ComplexMatrix &m, std::vector<size_t> dims) {
    if (static_cast<size_t>(m.size()) != product(dims)) {
        fail(ErrorKind::Shape, "matrix size does not match tensor dims");
    }
    std::vector<cdouble> data(m.size());
    size_t k = 0;
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            data[k++] = m(r, c);
        }
    }
    return Tensor(std::move(dims), std::move(data));
}

size_t Tensor::flat_index(std::span<const size_t> index) const {
    if (index.size() != dims_.size()) {
        fail(ErrorKind::Shape, "index rank mismatch");
    }
    size_t flat = 0;
    for (size_t i = 0; i < dims_.size(); i++) {
        if (index[i] >= dims_[i]) {
            fail(ErrorKind::Shape, "tensor index out of range");
        }
        flat = flat * dims_[i] + index[i];
    }
    return flat;
}

Tensor Tensor::permute(std::span<const size_t> perm) const {
    const size_t r = dims_.size();
    if (perm.size() != r) {
        fail(ErrorKind::Shape, "permutation rank mismatch");
    }
    std::vector<bool> seen(r, false);
    for (size_t p : perm) {
        if (p >= r || seen[p]) {
            fail(ErrorKind::Shape, "axis permutation is not a bijection");
        }
        seen[p] = true;
    }

    std::vector<size_t> new_dims(r);
    for (size_t i = 0; i < r; i++) {
        new_dims[i] = dims_[perm[i]];
    }
    // Stride of each source axis, reordered to the destination axis order.
    std::vector<size_t> src_strides(r, 1);
    for (size_t i = r; i-- > 1;) {
        src_strides[i - 1] = src_strides[i] * dims_[i];
    }
    std::vector<size_t> stride(r);
    for (size_t i = 0; i < r; i++) {
        stride[i] = src_strides[perm[i]];
    }

    Tensor out(new_dims);
    std::vector<size_t> counter(r, 0);
    size_t src = 0;
    for (size_t k = 0; k < out.data_.size(); k++) {
        out.data_[k] = data_[src];
        for (size_t i = r; i-- > 0;) {
            counter[i]++;
            src += stride[i];
            if (counter[i] < new_dims[i]) {
                break;
            }
            src -= stride[i] * counter[i];
            counter[i] = 0;
        }
    }
    return out;
}

Tensor Tensor::reshape(std::vector<size_t> dims) const {
    return Tensor(std::move(dims), data_);
}

ComplexMatrix Tensor::to_matrix(size_t row_axes) const {
    if (row_axes > dims_.size()) {
        fail(ErrorKind::Shape, "row axis count exceeds tensor rank");
    }
    size_t rows = product(std::span<const size_t>(dims_).first(row_axes));
    size_t cols = data_.size() / std::max<size_t>(rows, 1);
    ComplexMatrix m(rows, cols);
    size_t k = 0;
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            m(r, c) = data_[k++];
        }
    }
    return m;
}

Tensor contract(const Tensor &a, const Tensor &b, std::span<const size_t> axes_a, std::span<const size_t> axes_b) {
    if (axes_a.size() != axes_b.size()) {
        fail(ErrorKind::Shape, "contracted axis lists differ in length");
    }
    for (size_t i = 0; i < axes_a.size(); i++) {
        if (axes_a[i] >= a.rank() || axes_b[i] >= b.rank()) {
            fail(ErrorKind::Shape, "contracted axis out of range");
        }
        if (a.dims()[axes_a[i]] != b.dims()[axes_b[i]]) {
            fail(ErrorKind::Shape, "contracted legs have different dimensions");
        }
    }

    auto free_axes = [](size_t rank, std::span<const size_t> used) {
        std::vector<size_t> out;
        for (size_t i = 0; i < rank; i++) {
            if (std::find(used.begin(), used.end(), i) == used.end()) {
                out.push_back(i);
            }
        }
        return out;
    };
    std::vector<size_t> free_a = free_axes(a.rank(), axes_a);
    std::vector<size_t> free_b = free_axes(b.rank(), axes_b);

    std::vector<size_t> perm_a = free_a;
    perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
    std::vector<size_t> perm_b(axes_b.begin(), axes_b.end());
    perm_b.insert(perm_b.end(), free_b.begin(), free_b.end());

    ComplexMatrix ma = a.permute(perm_a).to_matrix(free_a.size());
    ComplexMatrix mb = b.permute(perm_b).to_matrix(axes_b.size());
    ComplexMatrix prod = ma * mb;

    std::vector<size_t> dims;
    for (size_t i : free_a) {
        dims.push_back(a.dims()[i]);
    }
    for (size_t i : free_b) {
        dims.push_back(b.dims()[i]);
    }
    return Tensor::from_matrix(prod, dims);
}

double GaussianSource::uniform() {
    // 53 random bits -> [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

cdouble GaussianSource::complex_normal() {
    double re = normal();
    double im = normal();
    return cdouble(re, im) * std::numbers::sqrt2 * 0.5;
}

ComplexMatrix haar_unitary(size_t d, GaussianSource &rng) {
    if (d == 0) {
        fail(ErrorKind::InvalidDimension, "haar_unitary requires d >= 1");
    }
    ComplexMatrix g(d, d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            g(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (size_t j = 0; j < d; j++) {
        cdouble diag = r(j, j);
        double mag = std::abs(diag);
        cdouble phase = mag > 0 ? diag / mag : cdouble(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

ComplexMatrix haar_unitary(size_t d, uint64_t seed) {
    GaussianSource rng(seed);
    return haar_unitary(d, rng);
}

namespace {

ComplexMatrix checked_hermitian_part(const ComplexMatrix &m, double tol) {
    check_square(m, "hermitian_eig");
    double violation = hermiticity_violation(m);
    if (violation > tol) {
        fail(ErrorKind::NotHermitian, "max |M - M^dagger| = " + std::to_string(violation));
    }
    return (m + m.adjoint()) * 0.5;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix &m, double tol) {
    ComplexMatrix h = checked_hermitian_part(m, tol);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const Eigen::Index n = h.rows();
    HermitianEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen sorts ascending.
    for (Eigen::Index i = 0; i < n; i++) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix &m, double tol) {
    ComplexMatrix h = checked_hermitian_part(m, tol);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
}

double trace_norm(const ComplexMatrix &m, double tol) {
    if (m.size() == 0) {
        return 0.0;
    }
    return hermitian_eigenvalues(m, tol).cwiseAbs().sum();
}

ComplexMatrix closest_unitary(const ComplexMatrix &m) {
    check_square(m, "closest_unitary");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector &s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0))) {
        fail(ErrorKind::Rank, "closest_unitary requires a nonsingular matrix");
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_violation(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return std::max(max_abs(m.adjoint() * m - id), max_abs(m * m.adjoint() - id));
}

double hermiticity_violation(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(m - m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace dudesign
