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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dudesign {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;

/// Dense complex tensor with row-major (last index fastest) storage.
class Tensor {
   public:
    Tensor() = default;
    explicit Tensor(std::vector<size_t> dims);
    Tensor(std::vector<size_t> dims, std::vector<cdouble> data);

    static Tensor from_matrix(const ComplexMatrix &m, std::vector<size_t> dims);

    const std::vector<size_t> &dims() const {
        return dims_;
    }
    size_t rank() const {
        return dims_.size();
    }
    size_t size() const {
        return data_.size();
    }
    const std::vector<cdouble> &data() const {
        return data_;
    }
    std::vector<cdouble> &data() {
        return data_;
    }

    size_t flat_index(std::span<const size_t> index) const;
    cdouble &at(std::span<const size_t> index) {
        return data_[flat_index(index)];
    }
    const cdouble &at(std::span<const size_t> index) const {
        return data_[flat_index(index)];
    }

    /// Axis i of the result is axis perm[i] of this tensor.
    Tensor permute(std::span<const size_t> perm) const;
    Tensor reshape(std::vector<size_t> dims) const;

    /// Groups the first `row_axes` axes into the row index and the rest into the column index.
    ComplexMatrix to_matrix(size_t row_axes) const;

   private:
    std::vector<size_t> dims_;
    std::vector<cdouble> data_;
};

/// Sums over the paired axes. Result axes: free axes of `a` in order, then free axes of `b`.
Tensor contract(const Tensor &a, const Tensor &b, std::span<const size_t> axes_a, std::span<const size_t> axes_b);

/// Deterministic Gaussian source: std::mt19937_64 driving a Box-Muller transform.
/// The engine is fully specified by the standard, and the transform avoids
/// std::normal_distribution, whose output is implementation-defined.
class GaussianSource {
   public:
    explicit GaussianSource(uint64_t seed) : engine_(seed) {
    }
    double uniform();
    double normal();
    cdouble complex_normal();  // E|z|^2 = 1

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-random unitary: Ginibre matrix, Householder QR, phases of diag(R) removed.
ComplexMatrix haar_unitary(size_t d, uint64_t seed);
ComplexMatrix haar_unitary(size_t d, GaussianSource &rng);

struct HermitianEig {
    RealVector values;  // descending
    ComplexMatrix vectors;
};

HermitianEig hermitian_eig(const ComplexMatrix &m, double tol = kDefaultTol);
/// Eigenvalues only (descending); considerably cheaper for large matrices.
RealVector hermitian_eigenvalues(const ComplexMatrix &m, double tol = kDefaultTol);

double trace_norm(const ComplexMatrix &m, double tol = kDefaultTol);

/// Unitary polar factor W of M = W P.
ComplexMatrix closest_unitary(const ComplexMatrix &m);

double max_abs(const ComplexMatrix &m);
/// max |(M^dagger M - I)_{ij}| and the same for M M^dagger.
double unitarity_violation(const ComplexMatrix &m);
double hermiticity_violation(const ComplexMatrix &m);

/// Kronecker product, first factor most significant.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace dudesign
