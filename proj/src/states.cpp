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

#include "dudesign/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dudesign/error.hpp"

namespace dudesign {

size_t ipow(size_t base, size_t exp) {
    size_t r = 1;
    for (size_t i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

size_t digits_to_index(const std::vector<size_t> &digits, size_t q) {
    size_t index = 0;
    for (size_t z : digits) {
        index = index * q + z;
    }
    return index;
}

std::vector<size_t> index_to_digits(size_t index, size_t q, size_t n) {
    std::vector<size_t> digits(n);
    for (size_t i = n; i-- > 0;) {
        digits[i] = index % q;
        index /= q;
    }
    return digits;
}

StateVector computational_product_state(size_t n_sites, size_t q, const std::vector<size_t> &digits) {
    if (q < 1) {
        fail(ErrorKind::InvalidDimension, "local dimension must be positive");
    }
    if (digits.size() != n_sites) {
        fail(ErrorKind::Shape, "expected " + std::to_string(n_sites) + " digits, got " + std::to_string(digits.size()));
    }
    for (size_t z : digits) {
        if (z >= q) {
            fail(ErrorKind::DigitOutOfRange, "digit " + std::to_string(z) + " is not below q=" + std::to_string(q));
        }
    }
    StateVector s{n_sites, q, ComplexVector::Zero(ipow(q, n_sites))};
    s.amplitudes(digits_to_index(digits, q)) = 1.0;
    return s;
}

ComplexMatrix reduced_density_matrix(const StateVector &state, std::vector<size_t> sites) {
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        fail(ErrorKind::Shape, "duplicate site in reduced_density_matrix");
    }
    for (size_t s : sites) {
        if (s >= state.n_sites) {
            fail(ErrorKind::SiteOutOfRange, "site " + std::to_string(s) + " out of range");
        }
    }
    std::vector<size_t> perm = sites;
    for (size_t s = 0; s < state.n_sites; s++) {
        if (!std::binary_search(sites.begin(), sites.end(), s)) {
            perm.push_back(s);
        }
    }
    std::vector<size_t> dims(state.n_sites, state.q);
    Tensor t(dims, std::vector<cdouble>(state.amplitudes.data(), state.amplitudes.data() + state.amplitudes.size()));
    ComplexMatrix m = t.permute(perm).to_matrix(sites.size());
    return m * m.adjoint();
}

SolvableMPS pair_mps(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        fail(ErrorKind::Shape, "pair matrix must be square");
    }
    SolvableMPS mps;
    mps.q = static_cast<size_t>(m.rows());
    mps.chi = 1;
    for (size_t i = 0; i < mps.q; i++) {
        for (size_t j = 0; j < mps.q; j++) {
            mps.tensors.push_back(ComplexMatrix::Constant(1, 1, m(i, j)));
        }
    }
    return mps;
}

namespace {

void check_mps_shape(const SolvableMPS &mps) {
    if (mps.q == 0 || mps.chi == 0) {
        fail(ErrorKind::InvalidDimension, "MPS dimensions must be positive");
    }
    if (mps.tensors.size() != mps.q * mps.q) {
        fail(ErrorKind::MissingTensor, "MPS needs q^2 = " + std::to_string(mps.q * mps.q) + " tensors, got " +
                                           std::to_string(mps.tensors.size()));
    }
    for (const auto &t : mps.tensors) {
        if (t.rows() != static_cast<Eigen::Index>(mps.chi) || t.cols() != static_cast<Eigen::Index>(mps.chi)) {
            fail(ErrorKind::MissingTensor, "MPS tensor is not chi x chi");
        }
    }
}

}  // namespace

ComplexMatrix mps_w_matrix(const SolvableMPS &mps) {
    check_mps_shape(mps);
    const size_t q = mps.q, chi = mps.chi;
    const double scale = std::sqrt(static_cast<double>(q));
    ComplexMatrix w(q * chi, q * chi);
    for (size_t i = 0; i < q; i++) {
        for (size_t j = 0; j < q; j++) {
            const ComplexMatrix &n = mps.tensor(i, j);
            for (size_t a = 0; a < chi; a++) {
                for (size_t b = 0; b < chi; b++) {
                    w(i * chi + a, j * chi + b) = scale * n(a, b);
                }
            }
        }
    }
    return w;
}

Check check_solvable_mps(const SolvableMPS &mps, double tol) {
    double violation = unitarity_violation(mps_w_matrix(mps));
    return Check{violation <= tol, violation};
}

bool is_solvable_mps(const SolvableMPS &mps, double tol) {
    return check_solvable_mps(mps, tol).ok;
}

PreparedState solvable_mps_state(const SolvableMPS &mps, size_t n_sites, const std::optional<ComplexVector> &leftover) {
    check_mps_shape(mps);
    if (n_sites < 2) {
        fail(ErrorKind::InvalidDimension, "solvable_mps_state requires N >= 2");
    }
    const size_t q = mps.q, chi = mps.chi;
    const size_t pairs = n_sites / 2;
    ComplexVector tail;
    if (n_sites % 2 == 1) {
        tail = leftover.value_or(ComplexVector::Unit(q, 0));
        if (static_cast<size_t>(tail.size()) != q) {
            fail(ErrorKind::DimensionMismatch, "leftover ket must have length q");
        }
    }

    // Running products of MPS matrices, one per prefix configuration.
    std::vector<ComplexMatrix> prefixes{ComplexMatrix::Identity(chi, chi)};
    for (size_t p = 0; p < pairs; p++) {
        std::vector<ComplexMatrix> next;
        next.reserve(prefixes.size() * q * q);
        for (const auto &prefix : prefixes) {
            for (size_t ij = 0; ij < q * q; ij++) {
                next.push_back(prefix * mps.tensors[ij]);
            }
        }
        prefixes = std::move(next);
    }

    ComplexVector paired(prefixes.size());
    for (size_t k = 0; k < prefixes.size(); k++) {
        if (std::holds_alternative<TraceBoundary>(mps.boundary)) {
            paired(k) = prefixes[k].trace();
        } else {
            const auto &vb = std::get<VectorBoundary>(mps.boundary);
            if (static_cast<size_t>(vb.left.size()) != chi || static_cast<size_t>(vb.right.size()) != chi) {
                fail(ErrorKind::DimensionMismatch, "boundary vectors must have length chi");
            }
            paired(k) = (vb.left.transpose() * prefixes[k] * vb.right)(0, 0);
        }
    }

    StateVector s{n_sites, q, ComplexVector()};
    if (n_sites % 2 == 1) {
        s.amplitudes.resize(paired.size() * q);
        for (Eigen::Index k = 0; k < paired.size(); k++) {
            s.amplitudes.segment(k * q, q) = paired(k) * tail;
        }
    } else {
        s.amplitudes = std::move(paired);
    }
    double norm = s.amplitudes.norm();
    if (norm < 1e-14) {
        fail(ErrorKind::DegenerateState, "MPS contraction has zero norm");
    }
    s.amplitudes /= norm;
    return PreparedState{std::move(s), norm};
}

StateVector ueb_pair_state(const ComplexMatrix &alpha, size_t pairs, double tol) {
    if (alpha.rows() != alpha.cols() || alpha.rows() == 0) {
        fail(ErrorKind::Shape, "pair matrix must be square");
    }
    const size_t q = static_cast<size_t>(alpha.rows());
    double violation = unitarity_violation(alpha * std::sqrt(static_cast<double>(q)));
    if (violation > tol) {
        fail(ErrorKind::NotUnitary, "sqrt(q) * alpha is not unitary (violation " + std::to_string(violation) + ")");
    }
    ComplexVector pair(q * q);
    for (size_t i = 0; i < q; i++) {
        for (size_t j = 0; j < q; j++) {
            pair(i * q + j) = alpha(i, j);
        }
    }
    ComplexVector amps = ComplexVector::Ones(1);
    for (size_t p = 0; p < pairs; p++) {
        ComplexVector next(amps.size() * pair.size());
        for (Eigen::Index k = 0; k < amps.size(); k++) {
            next.segment(k * pair.size(), pair.size()) = amps(k) * pair;
        }
        amps = std::move(next);
    }
    return StateVector{2 * pairs, q, std::move(amps)};
}

}  // namespace dudesign
