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

#include "dudesign/biunitary.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dudesign/error.hpp"

namespace dudesign {

namespace {

size_t integer_sqrt(size_t n) {
    size_t r = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

cdouble root_of_unity(size_t q, long long power) {
    long long p = power % static_cast<long long>(q);
    double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
    return std::polar(1.0, angle);
}

Check make_check(double violation, double tol) {
    return Check{violation <= tol, violation};
}

}  // namespace

Gate Gate::from_matrix(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        fail(ErrorKind::Shape, "gate matrix must be square");
    }
    size_t q = integer_sqrt(static_cast<size_t>(m.rows()));
    if (q < 1) {
        fail(ErrorKind::Shape, "gate matrix dimension " + std::to_string(m.rows()) + " is not a perfect square");
    }
    Gate g;
    g.q_ = q;
    g.matrix_ = m;
    return g;
}

Gate Gate::from_tensor(const Tensor &t) {
    if (t.rank() != 4 || t.dims()[0] != t.dims()[1] || t.dims()[0] != t.dims()[2] || t.dims()[0] != t.dims()[3]) {
        fail(ErrorKind::Shape, "gate tensor must have shape (q,q,q,q)");
    }
    return from_matrix(t.to_matrix(2));
}

Tensor Gate::tensor() const {
    return Tensor::from_matrix(matrix_, {q_, q_, q_, q_});
}

CertifiedGate::CertifiedGate(Gate gate, double tol) : gate_(std::move(gate)), tol_(tol) {
    certificates_ = revalidate(tol);
}

GateCertificates CertifiedGate::revalidate(double tol) const {
    return GateCertificates{check_unitary(gate_, tol), check_dual_unitary(gate_, tol), check_kim_property(gate_, tol)};
}

ComplexHadamard ComplexHadamard::from_matrix(const ComplexMatrix &m, double tol) {
    Check c = check_complex_hadamard(m, tol);
    if (!c.ok) {
        fail(ErrorKind::InvalidHadamard, "matrix is not a complex Hadamard matrix (max violation " +
                                             std::to_string(c.max_violation) + ")");
    }
    return ComplexHadamard(m);
}

ComplexHadamard ComplexHadamard::transpose() const {
    return ComplexHadamard(matrix_.transpose());
}

ComplexHadamard ComplexHadamard::conjugate() const {
    return ComplexHadamard(matrix_.conjugate());
}

UnitaryErrorBasis UnitaryErrorBasis::from_members(std::vector<ComplexMatrix> members, double tol) {
    Check c = check_ueb(members, tol);
    if (!c.ok) {
        fail(ErrorKind::InvalidUeb,
             "matrices do not form a unitary error basis (max violation " + std::to_string(c.max_violation) + ")");
    }
    size_t q = static_cast<size_t>(members.front().rows());
    return UnitaryErrorBasis(q, std::move(members));
}

ComplexMatrix pauli_i() {
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, cdouble(0, -1), cdouble(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Gate identity_gate(size_t q) {
    return Gate::from_matrix(ComplexMatrix::Identity(q * q, q * q));
}

Gate swap_gate(size_t q) {
    ComplexMatrix m = ComplexMatrix::Zero(q * q, q * q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            m(b * q + a, a * q + b) = 1.0;
        }
    }
    return Gate::from_matrix(m);
}

ComplexHadamard fourier_matrix(size_t q) {
    if (q < 2) {
        fail(ErrorKind::InvalidDimension, "fourier_matrix requires q >= 2");
    }
    ComplexMatrix k(q, q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            k(a, b) = root_of_unity(q, static_cast<long long>(a * b));
        }
    }
    return ComplexHadamard::from_matrix(k, 1e-12);
}

Check check_complex_hadamard(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return Check{false, std::numeric_limits<double>::infinity()};
    }
    const double q = static_cast<double>(m.rows());
    ComplexMatrix scaled_id = ComplexMatrix::Identity(m.rows(), m.cols()) * q;
    double violation = std::max(max_abs(m.adjoint() * m - scaled_id), max_abs(m * m.adjoint() - scaled_id));
    for (Eigen::Index i = 0; i < m.size(); i++) {
        violation = std::max(violation, std::abs(std::abs(m.data()[i]) - 1.0));
    }
    return make_check(violation, tol);
}

bool is_complex_hadamard(const ComplexMatrix &m, double tol) {
    return check_complex_hadamard(m, tol).ok;
}

Check check_ueb(const std::vector<ComplexMatrix> &members, double tol) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (members.empty()) {
        return Check{false, inf};
    }
    const Eigen::Index q = members.front().rows();
    if (q == 0 || members.size() != static_cast<size_t>(q * q)) {
        return Check{false, inf};
    }
    double violation = 0.0;
    for (const auto &m : members) {
        if (m.rows() != q || m.cols() != q) {
            return Check{false, inf};
        }
        violation = std::max(violation, unitarity_violation(m));
    }
    for (size_t n = 0; n < members.size(); n++) {
        for (size_t k = 0; k < members.size(); k++) {
            cdouble overlap = (members[n].adjoint() * members[k]).trace();
            cdouble expected = n == k ? cdouble(static_cast<double>(q), 0.0) : cdouble(0.0, 0.0);
            violation = std::max(violation, std::abs(overlap - expected));
        }
    }
    return make_check(violation, tol);
}

bool is_ueb(const std::vector<ComplexMatrix> &members, double tol) {
    return check_ueb(members, tol).ok;
}

double ueb_completeness_violation(const UnitaryErrorBasis &basis) {
    const size_t q = basis.q();
    double violation = 0.0;
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            for (size_t c = 0; c < q; c++) {
                for (size_t d = 0; d < q; d++) {
                    cdouble sum = 0.0;
                    for (const auto &m : basis.members()) {
                        sum += m(a, b) * std::conj(m(d, c));
                    }
                    double expected = (a == d && b == c) ? static_cast<double>(q) : 0.0;
                    violation = std::max(violation, std::abs(sum - expected));
                }
            }
        }
    }
    return violation;
}

Check check_unitary(const Gate &g, double tol) {
    return make_check(unitarity_violation(g.matrix()), tol);
}

Check check_dual_unitary(const Gate &g, double tol) {
    return make_check(unitarity_violation(dual(g).matrix()), tol);
}

bool is_dual_unitary(const Gate &g, double tol) {
    return check_unitary(g, tol).ok && check_dual_unitary(g, tol).ok;
}

Gate dual(const Gate &g) {
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
    return Gate::from_matrix(m);
}

Gate closest_dual_unitary(const Gate &g, double tol, size_t max_iterations) {
    Gate current = Gate::from_matrix(closest_unitary(g.matrix()));
    for (size_t it = 0; it < max_iterations; it++) {
        if (unitarity_violation(dual(current).matrix()) <= tol) {
            return current;
        }
        Gate d = Gate::from_matrix(closest_unitary(dual(current).matrix()));
        // The dual map is an involution, so dual(d) is the candidate in the original frame.
        current = Gate::from_matrix(closest_unitary(dual(d).matrix()));
    }
    fail(ErrorKind::NotUnitary, "alternating polar projection did not reach a dual-unitary gate");
}

Check check_kim_property(const Gate &g, double tol) {
    const size_t q = g.q();
    const double inv_q = 1.0 / static_cast<double>(q);
    double violation = 0.0;
    for (size_t z0 = 0; z0 < q; z0++) {
        for (size_t z1 = 0; z1 < q; z1++) {
            for (size_t a = 0; a < q; a++) {
                for (size_t b = 0; b < q; b++) {
                    cdouble first = 0.0;
                    cdouble second = 0.0;
                    for (size_t c = 0; c < q; c++) {
                        first += g(z0, z1, c, b) * std::conj(g(z0, z1, c, a));
                        second += g(z0, z1, b, c) * std::conj(g(z0, z1, a, c));
                    }
                    double expected = a == b ? inv_q : 0.0;
                    violation = std::max({violation, std::abs(first - expected), std::abs(second - expected)});
                }
            }
        }
    }
    return make_check(violation, tol);
}

Check check_clifford(const Gate &g, double tol) {
    if (g.q() != 2) {
        return Check{false, std::numeric_limits<double>::infinity()};
    }
    const ComplexMatrix singles[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
    std::vector<ComplexMatrix> strings;
    for (const auto &p : singles) {
        for (const auto &r : singles) {
            strings.push_back(kron(p, r));
        }
    }
    const ComplexMatrix &u = g.matrix();
    double violation = 0.0;
    for (const auto &p : strings) {
        ComplexMatrix image = u * p * u.adjoint();
        // Overlaps with every Pauli string; a Clifford image has exactly one of modulus 1.
        double best = 0.0;
        double rest = 0.0;
        for (const auto &r : strings) {
            double overlap = std::abs((r.adjoint() * image).trace()) / 4.0;
            if (overlap > best) {
                rest += best;
                best = overlap;
            } else {
                rest += overlap;
            }
        }
        violation = std::max({violation, std::abs(best - 1.0), rest});
    }
    return make_check(violation, tol);
}

CertifiedGate hadamard_gate(const ComplexHadamard &e,
                            const ComplexHadamard &f,
                            const ComplexHadamard &g,
                            const ComplexHadamard &h,
                            const std::vector<double> &h1,
                            const std::vector<double> &h2) {
    const size_t q = e.q();
    if (f.q() != q || g.q() != q || h.q() != q) {
        fail(ErrorKind::DimensionMismatch, "hadamard_gate inputs must share a dimension");
    }
    if ((!h1.empty() && h1.size() != q) || (!h2.empty() && h2.size() != q)) {
        fail(ErrorKind::DimensionMismatch, "phase vectors must have length q");
    }
    const ComplexMatrix &E = e.matrix();
    const ComplexMatrix &F = f.matrix();
    const ComplexMatrix &G = g.matrix();
    const ComplexMatrix &H = h.matrix();
    ComplexMatrix m(q * q, q * q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            double phase = ((h1.empty() ? 0.0 : h1[a]) + (h2.empty() ? 0.0 : h2[b])) / 2.0;
            cdouble dressing = std::polar(1.0 / static_cast<double>(q), phase);
            for (size_t c = 0; c < q; c++) {
                for (size_t d = 0; d < q; d++) {
                    m(a * q + b, c * q + d) = E(a, b) * F(b, d) * G(d, c) * H(c, a) * dressing;
                }
            }
        }
    }
    return CertifiedGate(Gate::from_matrix(m));
}

CertifiedGate kim_gate(double J, double b, double h1, double h2) {
    ComplexMatrix ising = ComplexMatrix::Zero(4, 4);
    for (int s1 = 0; s1 < 2; s1++) {
        for (int s2 = 0; s2 < 2; s2++) {
            double z1 = s1 == 0 ? 1.0 : -1.0;
            double z2 = s2 == 0 ? 1.0 : -1.0;
            ising(s1 * 2 + s2, s1 * 2 + s2) = std::polar(1.0, J * z1 * z2 + (h1 * z1 + h2 * z2) / 2.0);
        }
    }
    ComplexMatrix kick = std::cos(b) * pauli_i() + cdouble(0.0, std::sin(b)) * pauli_x();
    return CertifiedGate(Gate::from_matrix(ising * kron(kick, kick) * ising));
}

CertifiedGate cat_map_gate(size_t q) {
    if (q < 2) {
        fail(ErrorKind::InvalidDimension, "cat_map_gate requires q >= 2");
    }
    ComplexMatrix m(q * q, q * q);
    for (size_t a = 0; a < q; a++) {
        for (size_t b = 0; b < q; b++) {
            for (size_t c = 0; c < q; c++) {
                for (size_t d = 0; d < q; d++) {
                    long long power = static_cast<long long>(a * b + c * d + a * c) - static_cast<long long>(b * d);
                    power = ((power % static_cast<long long>(q)) + static_cast<long long>(q));
                    m(a * q + b, c * q + d) = root_of_unity(q, power) / static_cast<double>(q);
                }
            }
        }
    }
    return CertifiedGate(Gate::from_matrix(m));
}

UnitaryErrorBasis generalized_pauli_ueb(size_t q) {
    if (q < 2) {
        fail(ErrorKind::InvalidDimension, "generalized_pauli_ueb requires q >= 2");
    }
    ComplexMatrix shift = ComplexMatrix::Zero(q, q);
    ComplexMatrix clock = ComplexMatrix::Zero(q, q);
    for (size_t i = 0; i < q; i++) {
        shift((i + 1) % q, i) = 1.0;
        clock(i, i) = root_of_unity(q, static_cast<long long>(i));
    }
    std::vector<ComplexMatrix> members;
    ComplexMatrix shift_power = ComplexMatrix::Identity(q, q);
    for (size_t j = 0; j < q; j++) {
        ComplexMatrix clock_power = ComplexMatrix::Identity(q, q);
        for (size_t k = 0; k < q; k++) {
            members.push_back(shift_power * clock_power);
            clock_power = clock_power * clock;
        }
        shift_power = shift_power * shift;
    }
    return UnitaryErrorBasis::from_members(std::move(members), 1e-12);
}

CertifiedGate ueb_gate(const UnitaryErrorBasis &e,
                       const UnitaryErrorBasis &f,
                       const UnitaryErrorBasis &g,
                       const UnitaryErrorBasis &h) {
    const size_t q = e.q();
    if (f.q() != q || g.q() != q || h.q() != q) {
        fail(ErrorKind::DimensionMismatch, "ueb_gate inputs must share a dimension");
    }
    const size_t Q = q * q;
    const double inv_q = 1.0 / static_cast<double>(q);
    ComplexMatrix m = ComplexMatrix::Zero(Q * Q, Q * Q);
    for (size_t a = 0; a < Q; a++) {
        const size_t a1 = a / q, a2 = a % q;
        for (size_t b = 0; b < Q; b++) {
            const size_t b1 = b / q, b2 = b % q;
            for (size_t c = 0; c < Q; c++) {
                const size_t c1 = c / q, c2 = c % q;
                for (size_t d = 0; d < Q; d++) {
                    const size_t d1 = d / q, d2 = d % q;
                    cdouble sum = 0.0;
                    for (size_t n = 0; n < Q; n++) {
                        sum += e[n](a2, b1) * f[n](b2, d2) * g[n](d1, c2) * h[n](c1, a1);
                    }
                    m(a * Q + b, c * Q + d) = sum * inv_q;
                }
            }
        }
    }
    return CertifiedGate(Gate::from_matrix(m));
}

}  // namespace dudesign
