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

#include "dudesign/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dudesign/circuit.hpp"
#include "dudesign/combinatorics.hpp"
#include "dudesign/error.hpp"

namespace dudesign {

MeasurementScheme MeasurementScheme::computational() {
    return MeasurementScheme{};
}

MeasurementScheme MeasurementScheme::ueb(UnitaryErrorBasis basis, size_t single_sites_before_pairs) {
    MeasurementScheme s;
    s.kind = Kind::TwoSiteUeb;
    s.basis = std::move(basis);
    s.single_sites_before_pairs = single_sites_before_pairs;
    return s;
}

std::string MeasurementScheme::name() const {
    if (kind == Kind::SingleSiteComputational) {
        return "computational";
    }
    std::string n = "ueb";
    if (single_sites_before_pairs > 0) {
        n += "+" + std::to_string(single_sites_before_pairs);
    }
    return n;
}

ComplexMatrix MeasurementScheme::pair_basis_change() const {
    if (kind != Kind::TwoSiteUeb || !basis) {
        fail(ErrorKind::Shape, "pair_basis_change needs a two-site scheme with a basis");
    }
    const size_t q = basis->q();
    const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(q));
    ComplexMatrix b(q * q, q * q);
    for (size_t n = 0; n < q * q; n++) {
        const ComplexMatrix &alpha = (*basis)[n];
        for (size_t i = 0; i < q; i++) {
            for (size_t j = 0; j < q; j++) {
                b(n, i * q + j) = std::conj(alpha(i, j)) * inv_sqrt_q;
            }
        }
    }
    return b;
}

double MeasurementScheme::completeness_violation() const {
    if (kind == Kind::SingleSiteComputational) {
        return 0.0;
    }
    return unitarity_violation(pair_basis_change());
}

ComplexMatrix projected_amplitudes(const StateVector &state, size_t n_a, const MeasurementScheme &scheme) {
    if (n_a > state.n_sites) {
        fail(ErrorKind::DimensionMismatch, "system larger than the state");
    }
    const size_t n_b = state.n_sites - n_a;
    const size_t d_a = ipow(state.q, n_a);
    const size_t d_b = ipow(state.q, n_b);

    const StateVector *source = &state;
    StateVector rotated;
    if (scheme.kind == MeasurementScheme::Kind::TwoSiteUeb) {
        if (!scheme.basis || scheme.basis->q() != state.q) {
            fail(ErrorKind::DimensionMismatch, "measurement basis dimension differs from the state's q");
        }
        rotated = state;
        Gate change = Gate::from_matrix(scheme.pair_basis_change());
        for (size_t s = n_a + scheme.single_sites_before_pairs; s + 1 < state.n_sites; s += 2) {
            apply_two_site_gate_inplace(rotated, change, s);
        }
        source = &rotated;
    }

    ComplexMatrix amps(d_a, d_b);
    const cdouble *data = source->amplitudes.data();
    for (size_t i = 0; i < d_a; i++) {
        for (size_t j = 0; j < d_b; j++) {
            amps(i, j) = data[i * d_b + j];
        }
    }
    return amps;
}

ProjectedEnsemble project_ensemble(const StateVector &state, size_t n_a, const MeasurementScheme &scheme, double p_floor) {
    ComplexMatrix amps = projected_amplitudes(state, n_a, scheme);
    ProjectedEnsemble ens;
    ens.d_a = static_cast<size_t>(amps.rows());
    ens.n_a = n_a;
    ens.n_b = state.n_sites - n_a;
    ens.scheme = scheme.name();

    std::vector<Eigen::Index> kept;
    for (Eigen::Index z = 0; z < amps.cols(); z++) {
        double p = amps.col(z).squaredNorm();
        if (p > p_floor) {
            kept.push_back(z);
            ens.probabilities.push_back(p);
            ens.outcomes.push_back(static_cast<size_t>(z));
        } else {
            ens.dropped_mass += p;
        }
    }
    ens.states.resize(amps.rows(), static_cast<Eigen::Index>(kept.size()));
    for (size_t e = 0; e < kept.size(); e++) {
        ens.states.col(e) = amps.col(kept[e]) / std::sqrt(ens.probabilities[e]);
    }
    return ens;
}

uint64_t symmetric_dimension(size_t d, size_t k) {
    // binom(d+k-1, k), exact in integers for the sizes used here.
    uint64_t r = 1;
    for (size_t i = 1; i <= k; i++) {
        r = r * (d + i - 1) / i;
    }
    return r;
}

SymmetricBasis::SymmetricBasis(size_t d, size_t k) : d_(d), k_(k) {
    if (d == 0 || k == 0) {
        fail(ErrorKind::InvalidDimension, "symmetric basis needs d >= 1 and k >= 1");
    }
    std::vector<size_t> current(k, 0);
    double k_factorial = std::tgamma(static_cast<double>(k) + 1.0);
    while (true) {
        tuples_.push_back(current);
        double denom = 1.0;
        size_t run = 1;
        for (size_t i = 1; i <= k; i++) {
            if (i < k && current[i] == current[i - 1]) {
                run++;
            } else {
                denom *= std::tgamma(static_cast<double>(run) + 1.0);
                run = 1;
            }
        }
        weights_.push_back(std::sqrt(k_factorial / denom));

        // Next nondecreasing tuple in lexicographic order.
        size_t pos = k;
        while (pos > 0 && current[pos - 1] == d - 1) {
            pos--;
        }
        if (pos == 0) {
            break;
        }
        size_t v = current[pos - 1] + 1;
        for (size_t i = pos - 1; i < k; i++) {
            current[i] = v;
        }
    }
}

ComplexVector SymmetricBasis::coords(const ComplexVector &psi) const {
    if (static_cast<size_t>(psi.size()) != d_) {
        fail(ErrorKind::DimensionMismatch, "vector length differs from symmetric basis dimension");
    }
    ComplexVector out(size());
    for (size_t i = 0; i < size(); i++) {
        cdouble prod = weights_[i];
        for (size_t idx : tuples_[i]) {
            prod *= psi(idx);
        }
        out(i) = prod;
    }
    return out;
}

ComplexMatrix SymmetricBasis::embedding() const {
    const size_t full = ipow(d_, k_);
    ComplexMatrix e = ComplexMatrix::Zero(full, size());
    for (size_t i = 0; i < size(); i++) {
        std::vector<size_t> arrangement = tuples_[i];
        do {
            e(digits_to_index(arrangement, d_), i) = 1.0 / weights_[i];
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    }
    return e;
}

ComplexVector sym_coords(const ComplexVector &psi, size_t k) {
    return SymmetricBasis(static_cast<size_t>(psi.size()), k).coords(psi);
}

namespace {

ComplexVector tensor_power(const ComplexVector &psi, size_t k) {
    ComplexVector out = ComplexVector::Ones(1);
    for (size_t i = 0; i < k; i++) {
        ComplexVector next(out.size() * psi.size());
        for (Eigen::Index a = 0; a < out.size(); a++) {
            next.segment(a * psi.size(), psi.size()) = out(a) * psi;
        }
        out = std::move(next);
    }
    return out;
}

size_t checked_full_dim(size_t d, size_t k, size_t cap) {
    double approx = std::pow(static_cast<double>(d), static_cast<double>(k));
    if (approx > static_cast<double>(cap)) {
        fail(ErrorKind::CapExceeded, "full moment dimension " + std::to_string(d) + "^" + std::to_string(k) +
                                         " exceeds cap " + std::to_string(cap));
    }
    return ipow(d, k);
}

/// Accumulates sum_e w_e v_e v_e^dagger in blocks of columns.
template <typename VectorFn>
ComplexMatrix blocked_gram_sum(size_t dim, size_t count, size_t block, VectorFn &&weighted_vector) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    block = std::max<size_t>(block, 1);
    ComplexMatrix cols(dim, std::min(block, std::max<size_t>(count, 1)));
    for (size_t start = 0; start < count; start += block) {
        size_t width = std::min(block, count - start);
        for (size_t e = 0; e < width; e++) {
            cols.col(e) = weighted_vector(start + e);
        }
        acc.selfadjointView<Eigen::Lower>().rankUpdate(cols.leftCols(width));
    }
    acc.triangularView<Eigen::StrictlyUpper>() = acc.adjoint();
    return acc;
}

}  // namespace

MomentOperator moment_k(const ProjectedEnsemble &ens, size_t k, MomentRepr repr, size_t full_cap, size_t block) {
    if (k == 0) {
        fail(ErrorKind::InvalidDimension, "moment order must be >= 1");
    }
    MomentOperator out{ens.d_a, k, repr, {}};
    if (repr == MomentRepr::Full) {
        size_t dim = checked_full_dim(ens.d_a, k, full_cap);
        out.matrix = blocked_gram_sum(dim, ens.size(), block, [&](size_t e) -> ComplexVector {
            return std::sqrt(ens.probabilities[e]) * tensor_power(ens.states.col(e), k);
        });
    } else {
        SymmetricBasis basis(ens.d_a, k);
        out.matrix = blocked_gram_sum(basis.size(), ens.size(), block, [&](size_t e) -> ComplexVector {
            return std::sqrt(ens.probabilities[e]) * basis.coords(ens.states.col(e));
        });
    }
    return out;
}

MomentOperator haar_moment(size_t d, size_t k, MomentRepr repr, size_t full_cap) {
    if (k == 0 || d == 0) {
        fail(ErrorKind::InvalidDimension, "haar_moment needs d >= 1 and k >= 1");
    }
    MomentOperator out{d, k, repr, {}};
    if (repr == MomentRepr::Full) {
        size_t dim = checked_full_dim(d, k, full_cap);
        out.matrix = ComplexMatrix::Zero(dim, dim);
        for (const auto &pi : all_permutations(k)) {
            out.matrix += permutation_operator(pi, d);
        }
        out.matrix /= static_cast<double>(rising_factorial(d, k));
    } else {
        const auto dim = static_cast<Eigen::Index>(symmetric_dimension(d, k));
        out.matrix = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    }
    return out;
}

double trace_distance(const MomentOperator &a, const MomentOperator &b) {
    if (a.d != b.d || a.k != b.k || a.repr != b.repr || a.matrix.rows() != b.matrix.rows()) {
        fail(ErrorKind::DimensionMismatch, "moment operators have different shapes");
    }
    return 0.5 * trace_norm(a.matrix - b.matrix);
}

double delta_k(const ProjectedEnsemble &ens, size_t k, MomentRepr repr, size_t full_cap) {
    if (repr == MomentRepr::Full) {
        return trace_distance(moment_k(ens, k, MomentRepr::Full, full_cap), haar_moment(ens.d_a, k, MomentRepr::Full, full_cap));
    }
    if (k == 0) {
        fail(ErrorKind::InvalidDimension, "moment order must be >= 1");
    }
    const double n = static_cast<double>(ens.size());
    const double dsym = static_cast<double>(symmetric_dimension(ens.d_a, k));
    const auto dim = static_cast<size_t>(dsym);

    // Rough flop counts for the two routes; eigensolves dominate.
    const double gram_cost = 8.0 * n * n * static_cast<double>(ens.d_a) + 10.0 * n * n * n;
    const double moment_cost = 4.0 * n * dsym * dsym + 10.0 * dsym * dsym * dsym;

    RealVector spectrum;
    if (gram_cost <= moment_cost) {
        ComplexMatrix overlaps = ens.states.adjoint() * ens.states;
        ComplexMatrix gram(overlaps.rows(), overlaps.cols());
        for (Eigen::Index i = 0; i < gram.rows(); i++) {
            for (Eigen::Index j = 0; j < gram.cols(); j++) {
                gram(i, j) = std::sqrt(ens.probabilities[i] * ens.probabilities[j]) *
                             std::pow(overlaps(i, j), static_cast<int>(k));
            }
        }
        spectrum = ens.size() == 0 ? RealVector() : hermitian_eigenvalues(gram, 1e-8);
    } else {
        spectrum = hermitian_eigenvalues(moment_k(ens, k, MomentRepr::Symmetric).matrix, 1e-8);
    }

    const double haar = 1.0 / dsym;
    double total = 0.0;
    for (size_t i = 0; i < dim; i++) {
        double mu = i < static_cast<size_t>(spectrum.size()) ? spectrum(i) : 0.0;
        total += std::abs(mu - haar);
    }
    return 0.5 * total;
}

ComplexMatrix rho_nk(const StateVector &state,
                     size_t n_a,
                     const MeasurementScheme &scheme,
                     int n,
                     size_t k,
                     size_t full_cap,
                     double p_floor) {
    if (k == 0) {
        fail(ErrorKind::InvalidDimension, "rho_nk needs k >= 1");
    }
    ComplexMatrix amps = projected_amplitudes(state, n_a, scheme);
    const size_t dim = checked_full_dim(static_cast<size_t>(amps.rows()), k, full_cap);
    std::vector<Eigen::Index> kept;
    std::vector<double> weights;
    for (Eigen::Index z = 0; z < amps.cols(); z++) {
        double p = amps.col(z).squaredNorm();
        if (p > p_floor) {
            kept.push_back(z);
            weights.push_back(std::sqrt(std::pow(p, n)));
        }
    }
    return blocked_gram_sum(dim, kept.size(), 1024, [&](size_t e) -> ComplexVector {
        return weights[e] * tensor_power(amps.col(kept[e]), k);
    });
}

double distance_to_permutation_span(const ComplexMatrix &x, size_t d, size_t k) {
    ComplexMatrix s = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto &pi : all_permutations(k)) {
        ComplexMatrix p = permutation_operator(pi, d);
        if (p.rows() != x.rows()) {
            fail(ErrorKind::DimensionMismatch, "operator dimension differs from d^k");
        }
        s += p;
    }
    double xnorm = x.norm();
    if (xnorm == 0.0) {
        return 0.0;
    }
    cdouble c = (s.adjoint() * x).trace() / s.squaredNorm();
    return (x - c * s).norm() / xnorm;
}

}  // namespace dudesign
