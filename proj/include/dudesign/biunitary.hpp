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

#include <string>
#include <vector>

#include "dudesign/numerics.hpp"

namespace dudesign {

/// Outcome of a validator: whether every defining identity holds, and the worst entrywise violation.
struct Check {
    bool ok = false;
    double max_violation = 0.0;
};

/// Two-site gate on local dimension q.
///
/// Tensor convention: U_{ab,cd} has output legs (a,b) and input legs (c,d).
/// The matrix form acts as |out> = U |in> with row index a*q+b and column
/// index c*q+d, so the left site is the more significant digit.
class Gate {
   public:
    Gate() = default;
    static Gate from_matrix(const ComplexMatrix &m);
    static Gate from_tensor(const Tensor &t);

    size_t q() const {
        return q_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    cdouble operator()(size_t a, size_t b, size_t c, size_t d) const {
        return matrix_(a * q_ + b, c * q_ + d);
    }
    Tensor tensor() const;

    bool operator==(const Gate &other) const {
        return q_ == other.q_ && matrix_ == other.matrix_;
    }

   private:
    size_t q_ = 0;
    ComplexMatrix matrix_;
};

struct GateCertificates {
    Check unitary;
    Check dual_unitary;
    Check kim_property;
};

/// A gate together with certificates computed when it was built.
class CertifiedGate {
   public:
    CertifiedGate() = default;
    explicit CertifiedGate(Gate gate, double tol = kDefaultTol);

    const Gate &gate() const {
        return gate_;
    }
    const GateCertificates &certificates() const {
        return certificates_;
    }
    double tolerance() const {
        return tol_;
    }
    bool is_unitary() const {
        return certificates_.unitary.ok;
    }
    bool is_dual_unitary() const {
        return certificates_.unitary.ok && certificates_.dual_unitary.ok;
    }
    bool has_kim_property() const {
        return certificates_.kim_property.ok;
    }
    GateCertificates revalidate(double tol) const;

   private:
    Gate gate_;
    GateCertificates certificates_;
    double tol_ = kDefaultTol;
};

/// q x q matrix with unimodular entries and H^dagger H = q I.
class ComplexHadamard {
   public:
    static ComplexHadamard from_matrix(const ComplexMatrix &m, double tol = kDefaultTol);
    size_t q() const {
        return static_cast<size_t>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    ComplexHadamard transpose() const;
    ComplexHadamard conjugate() const;

   private:
    explicit ComplexHadamard(ComplexMatrix m) : matrix_(std::move(m)) {
    }
    ComplexMatrix matrix_;
};

/// q^2 unitary q x q matrices, pairwise trace-orthogonal: tr(a_n^dagger a_m) = q delta_{nm}.
class UnitaryErrorBasis {
   public:
    static UnitaryErrorBasis from_members(std::vector<ComplexMatrix> members, double tol = kDefaultTol);
    size_t q() const {
        return q_;
    }
    size_t size() const {
        return members_.size();
    }
    const std::vector<ComplexMatrix> &members() const {
        return members_;
    }
    const ComplexMatrix &operator[](size_t n) const {
        return members_[n];
    }

   private:
    UnitaryErrorBasis(size_t q, std::vector<ComplexMatrix> members) : q_(q), members_(std::move(members)) {
    }
    size_t q_ = 0;
    std::vector<ComplexMatrix> members_;
};

ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

Gate identity_gate(size_t q);
Gate swap_gate(size_t q);

/// K_{ab} = exp(2 pi i a b / q), indices from 0.
ComplexHadamard fourier_matrix(size_t q);

Check check_complex_hadamard(const ComplexMatrix &m, double tol = kDefaultTol);
bool is_complex_hadamard(const ComplexMatrix &m, double tol = kDefaultTol);

Check check_ueb(const std::vector<ComplexMatrix> &members, double tol = kDefaultTol);
bool is_ueb(const std::vector<ComplexMatrix> &members, double tol = kDefaultTol);
/// max |sum_n (a_n)_{ab} (a_n^dagger)_{cd} - q delta_{ad} delta_{bc}|.
double ueb_completeness_violation(const UnitaryErrorBasis &basis);

Check check_unitary(const Gate &g, double tol = kDefaultTol);
Check check_dual_unitary(const Gate &g, double tol = kDefaultTol);
bool is_dual_unitary(const Gate &g, double tol = kDefaultTol);

/// Space-time dual: result(a,b,c,d) = g(d,b,c,a).
Gate dual(const Gate &g);
/// Nearby dual-unitary gate: alternates polar projections of the gate and of its dual until
/// both are unitary within `tol`. Throws NotUnitary if `max_iterations` is reached first.
Gate closest_dual_unitary(const Gate &g, double tol = 1e-13, size_t max_iterations = 10000);

/// Sum_c U_{z0 z1, c b} conj(U_{z0 z1, c a}) = delta_ab / q and the mirrored
/// contraction over the second input leg, for every (z0, z1).
Check check_kim_property(const Gate &g, double tol = kDefaultTol);

/// Every two-qubit Pauli string is conjugated to a single Pauli string (up to a phase).
Check check_clifford(const Gate &g, double tol = kDefaultTol);

/// U_{ab,cd} = E_ab F_bd G_dc H_ca exp(i (h1[a] + h2[b]) / 2) / q.
CertifiedGate hadamard_gate(const ComplexHadamard &e,
                            const ComplexHadamard &f,
                            const ComplexHadamard &g,
                            const ComplexHadamard &h,
                            const std::vector<double> &h1 = {},
                            const std::vector<double> &h2 = {});

/// Kicked Ising gate  I (K x K) I  with I = exp(i J Z1 Z2 + i (h1 Z1 + h2 Z2)/2), K = exp(i b X).
CertifiedGate kim_gate(double J, double b, double h1, double h2);

/// U_{ab,cd} = exp(2 pi i (ab + cd + ac - bd) / q) / q.
CertifiedGate cat_map_gate(size_t q);

/// Shift-and-clock basis {X^j Z^k}, member index j*q + k.
UnitaryErrorBasis generalized_pauli_ueb(size_t q);

/// Gate on local dimension q^2 assembled from four unitary error bases; a = (a1, a2) -> a1*q + a2.
CertifiedGate ueb_gate(const UnitaryErrorBasis &e,
                       const UnitaryErrorBasis &f,
                       const UnitaryErrorBasis &g,
                       const UnitaryErrorBasis &h);

}  // namespace dudesign
