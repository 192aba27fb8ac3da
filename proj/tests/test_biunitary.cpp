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

#include <doctest.h>

#include <numbers>

#include "dudesign/biunitary.hpp"
#include "testing.hpp"

using namespace dudesign;
using dudesign::testing::error_kind_of;

namespace {

ComplexMatrix phase_diagonal(size_t q, GaussianSource &rng) {
    ComplexMatrix d = ComplexMatrix::Zero(q, q);
    for (size_t i = 0; i < q; i++) {
        d(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    }
    return d;
}

/// D1 K D2 with random diagonal phases: still a complex Hadamard matrix.
ComplexHadamard dressed_fourier(size_t q, GaussianSource &rng) {
    ComplexMatrix k = fourier_matrix(q).matrix();
    return ComplexHadamard::from_matrix(phase_diagonal(q, rng) * k * phase_diagonal(q, rng));
}

std::vector<double> random_phases(size_t q, GaussianSource &rng) {
    std::vector<double> h(q);
    for (auto &x : h) {
        x = 4.0 * rng.uniform() - 2.0;
    }
    return h;
}

/// Reduced density matrix of the left site of U|z0 z1>, from the column reshaped to q x q.
ComplexMatrix left_site_rdm(const Gate &g, size_t z0, size_t z1) {
    const size_t q = g.q();
    ComplexMatrix psi(q, q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            psi(a, b) = g(a, b, z0, z1);
        }
    }
    return psi * psi.adjoint();
}

bool unitary_by_multiplication(const ComplexMatrix &m, double tol) {
    const auto n = m.rows();
    return max_abs(m.adjoint() * m - ComplexMatrix::Identity(n, n)) < tol;
}

/// Reshuffle U~_{ab,cd} = U_{db,ca} written out with explicit loops.
ComplexMatrix reshuffled(const Gate &g) {
    const size_t q = g.q();
    ComplexMatrix m(q * q, q * q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            for (size_t c = 0; c < q; c++) {
                for (size_t d = 0; d < q; d++) {
                    m(a * q + b, c * q + d) = g(d, b, c, a);
                }
            }
        }
    }
    return m;
}

}  // namespace

TEST_CASE("fourier_matrix") {
    ComplexMatrix k2 = fourier_matrix(2).matrix();
    ComplexMatrix expected(2, 2);
    expected << 1, 1, 1, -1;
    CHECK(max_abs(k2 - expected) < 1e-14);

    ComplexMatrix k3 = fourier_matrix(3).matrix();
    for (Eigen::Index i = 0; i < k3.size(); i++) {
        CHECK(std::abs(std::abs(k3(i)) - 1.0) < 1e-14);
    }
    ComplexMatrix k5 = fourier_matrix(5).matrix();
    CHECK(max_abs(k5 * k5.adjoint() - 5.0 * ComplexMatrix::Identity(5, 5)) < 1e-12);
    CHECK(is_complex_hadamard(fourier_matrix(4).matrix()));
    CHECK(error_kind_of([] { fourier_matrix(1); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("ComplexHadamard rejects non-Hadamard input") {
    CHECK(error_kind_of([] { ComplexHadamard::from_matrix(ComplexMatrix::Identity(2, 2)); }) ==
          ErrorKind::InvalidHadamard);
}

TEST_CASE("the Pauli matrices form a unitary error basis") {
    CHECK(is_ueb({pauli_i(), pauli_x(), pauli_y(), pauli_z()}));
    CHECK_FALSE(is_ueb({pauli_i(), pauli_x(), pauli_x(), pauli_z()}));
    CHECK(error_kind_of([] { UnitaryErrorBasis::from_members({pauli_i(), pauli_x()}); }) == ErrorKind::InvalidUeb);
}

TEST_CASE("SWAP is dual-unitary, the identity is not") {
    CHECK(is_dual_unitary(swap_gate(2)));
    CHECK(unitary_by_multiplication(reshuffled(swap_gate(2)), 1e-14));
    CHECK_FALSE(is_dual_unitary(identity_gate(2)));
    CHECK_FALSE(unitary_by_multiplication(reshuffled(identity_gate(2)), 1e-2));
}

TEST_CASE("dual matches the explicit reshuffle and is an involution") {
    GaussianSource rng(3);
    for (uint64_t seed = 0; seed < 5; seed++) {
        Gate g = Gate::from_matrix(haar_unitary(9, seed));
        CHECK(dual(g).matrix() == reshuffled(g));
        CHECK(dual(dual(g)) == g);
    }
}

TEST_CASE("hadamard_gate with Fourier inputs") {
    for (size_t q : {2, 3, 5}) {
        ComplexHadamard k = fourier_matrix(q);
        CertifiedGate g = hadamard_gate(k, k, k, k);
        CHECK(g.is_unitary());
        CHECK(g.is_dual_unitary());
        CHECK(g.has_kim_property());
        CHECK(unitary_by_multiplication(g.gate().matrix(), 1e-10));
        CHECK(unitary_by_multiplication(reshuffled(g.gate()), 1e-10));
    }
}

TEST_CASE("hadamard_gate property test over dressed inputs") {
    GaussianSource rng(17);
    for (int trial = 0; trial < 20; trial++) {
        const size_t q = 2 + static_cast<size_t>(trial % 3);
        CertifiedGate g = hadamard_gate(dressed_fourier(q, rng), dressed_fourier(q, rng), dressed_fourier(q, rng),
                                        dressed_fourier(q, rng), random_phases(q, rng), random_phases(q, rng));
        CHECK(check_unitary(g.gate()).max_violation < 1e-10);
        CHECK(check_dual_unitary(g.gate()).max_violation < 1e-10);
        CHECK(check_kim_property(g.gate()).max_violation < 1e-10);
        for (size_t z0 = 0; z0 < q; z0++) {
            for (size_t z1 = 0; z1 < q; z1++) {
                ComplexMatrix rho = left_site_rdm(g.gate(), z0, z1);
                CHECK(max_abs(rho - ComplexMatrix::Identity(q, q) / double(q)) < 1e-10);
            }
        }
    }
}

TEST_CASE("hadamard_gate input validation") {
    CHECK(error_kind_of([] { hadamard_gate(fourier_matrix(2), fourier_matrix(3), fourier_matrix(2), fourier_matrix(2)); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(error_kind_of([] {
              ComplexHadamard k = fourier_matrix(2);
              hadamard_gate(k, k, k, k, {0.1, 0.2, 0.3});
          }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("kicked Ising gate") {
    const double pi4 = std::numbers::pi / 4;
    CertifiedGate du = kim_gate(pi4, pi4, 0.5, 0.5);
    CHECK(du.is_unitary());
    CHECK(du.is_dual_unitary());
    CHECK(du.has_kim_property());
    CHECK(check_clifford(kim_gate(pi4, pi4, 0.0, 0.0).gate()).ok);
    CHECK_FALSE(check_clifford(du.gate()).ok);
    CertifiedGate generic = kim_gate(0.3, pi4, 0.5, 0.5);
    CHECK(generic.is_unitary());
    CHECK_FALSE(generic.is_dual_unitary());
}

TEST_CASE("cat_map_gate") {
    for (size_t q : {2, 3, 5}) {
        CertifiedGate g = cat_map_gate(q);
        CHECK(g.is_unitary());
        CHECK(g.is_dual_unitary());
        CHECK(g.has_kim_property());
    }
    ComplexHadamard k = fourier_matrix(3);
    CertifiedGate h = hadamard_gate(k, k.conjugate(), k, k);
    CHECK(max_abs(cat_map_gate(3).gate().matrix() - h.gate().matrix()) < 1e-12);
}

TEST_CASE("generalized Pauli unitary error bases") {
    UnitaryErrorBasis b2 = generalized_pauli_ueb(2);
    REQUIRE(b2.size() == 4);
    for (size_t n = 0; n < 4; n++) {
        CHECK(unitarity_violation(b2[n]) < 1e-14);
        for (size_t m = 0; m < 4; m++) {
            if (m != n) {
                CHECK(std::abs((b2[n].adjoint() * b2[m]).trace()) < 1e-14);
            }
        }
    }
    UnitaryErrorBasis b3 = generalized_pauli_ueb(3);
    REQUIRE(b3.size() == 9);
    ComplexMatrix overlaps(9, 9);
    for (size_t n = 0; n < 9; n++) {
        for (size_t m = 0; m < 9; m++) {
            overlaps(n, m) = (b3[n].adjoint() * b3[m]).trace();
        }
    }
    CHECK(max_abs(overlaps - 3.0 * ComplexMatrix::Identity(9, 9)) < 1e-12);
    for (size_t q : {2, 3, 4}) {
        CHECK(ueb_completeness_violation(generalized_pauli_ueb(q)) < 1e-10);
    }
}

TEST_CASE("the q = 2 pair states are the Bell states up to phases") {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<ComplexVector> bell(4, ComplexVector::Zero(4));
    bell[0](0) = s, bell[0](3) = s;
    bell[1](0) = s, bell[1](3) = -s;
    bell[2](1) = s, bell[2](2) = s;
    bell[3](1) = s, bell[3](2) = -s;
    UnitaryErrorBasis b = generalized_pauli_ueb(2);
    for (size_t n = 0; n < 4; n++) {
        ComplexVector pair(4);
        for (size_t i = 0; i < 2; i++) {
            for (size_t j = 0; j < 2; j++) {
                pair(i * 2 + j) = b[n](i, j) * s;
            }
        }
        double best = 0.0;
        for (const auto &v : bell) {
            best = std::max(best, std::abs(v.dot(pair)));
        }
        CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ueb_gate") {
    UnitaryErrorBasis p = generalized_pauli_ueb(2);
    CertifiedGate g = ueb_gate(p, p, p, p);
    CHECK(g.gate().q() == 4);
    CHECK(unitarity_violation(g.gate().matrix()) < 1e-12);
    CHECK(unitary_by_multiplication(reshuffled(g.gate()), 1e-10));
    CHECK(g.is_dual_unitary());

    GaussianSource rng(5);
    const ComplexMatrix shared = phase_diagonal(2, rng);
    std::vector<ComplexMatrix> dressed;
    for (const auto &m : p.members()) {
        dressed.push_back(std::polar(1.0, rng.uniform()) * shared * m);
    }
    UnitaryErrorBasis d = UnitaryErrorBasis::from_members(dressed);
    CHECK(ueb_gate(p, d, p, d).is_dual_unitary());
    CHECK(ueb_gate(d, p, p, d).is_dual_unitary());
}

TEST_CASE("KIM property") {
    CHECK(check_kim_property(hadamard_gate(fourier_matrix(3), fourier_matrix(3), fourier_matrix(3), fourier_matrix(3)).gate()).ok);
    CHECK_FALSE(check_kim_property(swap_gate(2)).ok);
    CHECK_FALSE(check_kim_property(Gate::from_matrix(haar_unitary(4, 21))).ok);
}

TEST_CASE("closest_dual_unitary") {
    ComplexHadamard k = fourier_matrix(2);
    Gate g = hadamard_gate(k, k, k, k).gate();
    ComplexMatrix noise = dudesign::testing::random_matrix(4, 4, 8) * 1e-4;
    Gate perturbed = Gate::from_matrix(g.matrix() + noise);
    CHECK_FALSE(check_unitary(perturbed).ok);
    Gate fixed = closest_dual_unitary(perturbed);
    CHECK(check_unitary(fixed, 1e-12).ok);
    CHECK(check_dual_unitary(fixed, 1e-12).ok);
    CHECK(max_abs(fixed.matrix() - g.matrix()) < 1e-3);
}

TEST_CASE("Gate construction") {
    CHECK(error_kind_of([] { Gate::from_matrix(ComplexMatrix::Identity(3, 3)); }) == ErrorKind::Shape);
    Gate g = Gate::from_matrix(haar_unitary(4, 2));
    CHECK(Gate::from_tensor(g.tensor()) == g);
    CHECK(g(1, 0, 0, 1) == g.matrix()(2, 1));
}
