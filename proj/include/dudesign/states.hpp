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

#include <optional>
#include <variant>
#include <vector>

#include "dudesign/biunitary.hpp"
#include "dudesign/numerics.hpp"

namespace dudesign {

/// Full amplitude vector of N sites with local dimension q.
/// Site 0 (the leftmost) is the most significant digit of the basis index.
struct StateVector {
    size_t n_sites = 0;
    size_t q = 0;
    ComplexVector amplitudes;

    size_t dim() const {
        return static_cast<size_t>(amplitudes.size());
    }
    double norm() const {
        return amplitudes.norm();
    }
};

size_t ipow(size_t base, size_t exp);

/// Basis index of a digit string, first digit most significant.
size_t digits_to_index(const std::vector<size_t> &digits, size_t q);
std::vector<size_t> index_to_digits(size_t index, size_t q, size_t n);

StateVector computational_product_state(size_t n_sites, size_t q, const std::vector<size_t> &digits);

/// Reduced density matrix on `sites` (0-based, any order; the result orders them ascending).
ComplexMatrix reduced_density_matrix(const StateVector &state, std::vector<size_t> sites);

struct TraceBoundary {};
struct VectorBoundary {
    ComplexVector left;
    ComplexVector right;
};
using MpsBoundary = std::variant<TraceBoundary, VectorBoundary>;

/// Two-site MPS: tensors[i*q + j] is the chi x chi matrix N^{(i,j)}.
struct SolvableMPS {
    size_t q = 0;
    size_t chi = 0;
    std::vector<ComplexMatrix> tensors;
    MpsBoundary boundary = TraceBoundary{};

    const ComplexMatrix &tensor(size_t i, size_t j) const {
        return tensors[i * q + j];
    }
};

/// Bond-dimension-1 MPS built from a single q x q matrix: N^{(i,j)} = m_{ij}.
SolvableMPS pair_mps(const ComplexMatrix &m);

/// (<i| x <a|) W (|j> x |b>) = sqrt(q) N^{(i,j)}_{ab}; row i*chi + a, column j*chi + b.
ComplexMatrix mps_w_matrix(const SolvableMPS &mps);
Check check_solvable_mps(const SolvableMPS &mps, double tol = kDefaultTol);
bool is_solvable_mps(const SolvableMPS &mps, double tol = kDefaultTol);

struct PreparedState {
    StateVector state;
    double norm_before_normalization = 0.0;
};

/// Pairs occupy sites (0,1), (2,3), ...; for odd N the last site holds `leftover` (default |0>).
PreparedState solvable_mps_state(const SolvableMPS &mps,
                                 size_t n_sites,
                                 const std::optional<ComplexVector> &leftover = std::nullopt);

/// Product of `pairs` two-site states with <ij|alpha> = alpha_{ij}; sqrt(q) alpha must be unitary.
StateVector ueb_pair_state(const ComplexMatrix &alpha, size_t pairs, double tol = kDefaultTol);

}  // namespace dudesign
