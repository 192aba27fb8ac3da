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

#include "dudesign/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dudesign/error.hpp"

namespace dudesign {

TransferScheme TransferScheme::computational(size_t q, size_t initial_mid, size_t initial_right) {
    if (q < 2) {
        fail(ErrorKind::InvalidDimension, "transfer scheme needs q >= 2");
    }
    if (initial_mid >= q || initial_right >= q) {
        fail(ErrorKind::DigitOutOfRange, "initial digit out of range");
    }
    TransferScheme s;
    s.kind = Kind::Computational;
    s.q = q;
    s.initial_mid = initial_mid;
    s.initial_right = initial_right;
    return s;
}

TransferScheme TransferScheme::ueb(UnitaryErrorBasis basis, SolvableMPS mps) {
    if (basis.q() != mps.q) {
        fail(ErrorKind::DimensionMismatch, "measurement basis and MPS have different q");
    }
    if (mps.tensors.size() != mps.q * mps.q) {
        fail(ErrorKind::MissingTensor, "MPS must supply q^2 tensors");
    }
    for (const auto &n : mps.tensors) {
        if (static_cast<size_t>(n.rows()) != mps.chi || static_cast<size_t>(n.cols()) != mps.chi) {
            fail(ErrorKind::Shape, "MPS tensor is not chi x chi");
        }
    }
    TransferScheme s;
    s.kind = Kind::Ueb;
    s.q = basis.q();
    s.basis = std::move(basis);
    s.mps = std::move(mps);
    return s;
}

std::string TransferScheme::name() const {
    return kind == Kind::Computational ? "computational" : "ueb";
}

size_t TransferScheme::bond_dimension() const {
    return kind == Kind::Ueb ? mps->chi : 1;
}

size_t TransferScheme::single_copy_dimension(size_t t) const {
    if (t == 0) {
        fail(ErrorKind::InvalidDimension, "transfer matrices need t >= 1");
    }
    return kind == Kind::Computational ? ipow(q, 2 * t - 1) : bond_dimension() * ipow(q, 2 * t + 1);
}

namespace {

void check_gate_matches(const Gate &gate, const TransferScheme &scheme) {
    if (gate.q() != scheme.q) {
        fail(ErrorKind::DimensionMismatch, "gate and transfer scheme have different q");
    }
}

/// One column for the computational scheme; see TransferScheme for the geometry.
ComplexMatrix computational_column(const Gate &gate, size_t t, size_t z0, size_t z1, const TransferScheme &scheme) {
    const size_t q = scheme.q;
    const size_t legs = 2 * t - 1;
    const size_t dim = ipow(q, legs);
    ComplexMatrix m(dim, dim);
    ComplexVector v(q), next(q);
    for (size_t col = 0; col < dim; col++) {
        std::vector<size_t> x = index_to_digits(col, q, legs);
        for (size_t row = 0; row < dim; row++) {
            std::vector<size_t> y = index_to_digits(row, q, legs);
            v.setZero();
            v(scheme.initial_mid) = 1.0;
            for (size_t layer = 1; layer <= 2 * t; layer++) {
                next.setZero();
                if (layer % 2 == 1) {
                    const size_t y_in = layer == 1 ? scheme.initial_right : y[layer - 2];
                    const size_t y_out = y[layer - 1];
                    for (size_t w_out = 0; w_out < q; w_out++) {
                        for (size_t w_in = 0; w_in < q; w_in++) {
                            next(w_out) += gate(w_out, y_out, w_in, y_in) * v(w_in);
                        }
                    }
                } else {
                    const size_t x_in = x[layer - 2];
                    const size_t x_out = layer == 2 * t ? z0 : x[layer - 1];
                    for (size_t w_out = 0; w_out < q; w_out++) {
                        for (size_t w_in = 0; w_in < q; w_in++) {
                            next(w_out) += gate(x_out, w_out, x_in, w_in) * v(w_in);
                        }
                    }
                }
                v.swap(next);
            }
            m(row, col) = v(z1);
        }
    }
    return m;
}

/// One column for the paired-measurement scheme with MPS initial tensors.
ComplexMatrix ueb_column(const Gate &gate, size_t t, size_t outcome, const TransferScheme &scheme) {
    const size_t q = scheme.q;
    const size_t chi = scheme.mps->chi;
    const size_t legs = 2 * t + 1;
    const size_t wires = ipow(q, legs);
    const size_t dim = chi * wires;
    const ComplexMatrix bra = (*scheme.basis)[outcome].conjugate() / std::sqrt(static_cast<double>(q));
    ComplexMatrix m(dim, dim);
    ComplexVector v(q), next(q);
    for (size_t col = 0; col < dim; col++) {
        const size_t bond_left = col / wires;
        std::vector<size_t> x = index_to_digits(col % wires, q, legs);
        for (size_t row = 0; row < dim; row++) {
            const size_t bond_right = row / wires;
            std::vector<size_t> y = index_to_digits(row % wires, q, legs);
            for (size_t w = 0; w < q; w++) {
                v(w) = scheme.mps->tensor(w, y[0])(bond_left, bond_right);
            }
            for (size_t layer = 1; layer <= 2 * t; layer++) {
                next.setZero();
                if (layer % 2 == 1) {
                    for (size_t w_out = 0; w_out < q; w_out++) {
                        for (size_t w_in = 0; w_in < q; w_in++) {
                            next(w_out) += gate(x[layer], w_out, x[layer - 1], w_in) * v(w_in);
                        }
                    }
                } else {
                    for (size_t w_out = 0; w_out < q; w_out++) {
                        for (size_t w_in = 0; w_in < q; w_in++) {
                            next(w_out) += gate(w_out, y[layer], w_in, y[layer - 1]) * v(w_in);
                        }
                    }
                }
                v.swap(next);
            }
            cdouble total = 0.0;
            for (size_t w = 0; w < q; w++) {
                total += bra(x[2 * t], w) * v(w);
            }
            m(row, col) = total;
        }
    }
    return m;
}

}  // namespace

ComplexMatrix single_outcome_transfer(const Gate &gate, size_t t, size_t outcome, const TransferScheme &scheme, size_t cap) {
    check_gate_matches(gate, scheme);
    const size_t dim = scheme.single_copy_dimension(t);
    if (dim > cap) {
        fail(ErrorKind::CapExceeded,
             "single-outcome transfer dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    }
    if (outcome >= scheme.outcome_count()) {
        fail(ErrorKind::DigitOutOfRange, "measurement outcome out of range");
    }
    if (scheme.kind == TransferScheme::Kind::Computational) {
        return computational_column(gate, t, outcome / scheme.q, outcome % scheme.q, scheme);
    }
    return ueb_column(gate, t, outcome, scheme);
}

ProportionalUnitary proportional_unitary(const ComplexMatrix &m) {
    ComplexMatrix gram = m.adjoint() * m;
    const double scale2 = gram.diagonal().real().mean();
    ProportionalUnitary out;
    out.scale = std::sqrt(std::max(scale2, 0.0));
    if (scale2 <= 0.0) {
        out.violation = 1.0;
        return out;
    }
    out.violation = max_abs(gram / scale2 - ComplexMatrix::Identity(m.cols(), m.cols()));
    return out;
}

size_t TransferSpec::operand_dimension(size_t cap) const {
    const size_t single = single_copy_dimension();
    double approx = std::pow(static_cast<double>(single), 2.0 * static_cast<double>(m));
    if (approx > static_cast<double>(cap)) {
        fail(ErrorKind::CapExceeded, "folded operand dimension " + std::to_string(single) + "^" + std::to_string(2 * m) +
                                         " exceeds cap " + std::to_string(cap));
    }
    return ipow(single, 2 * m);
}

double TransferSpec::leading_eigenvalue() const {
    return std::pow(static_cast<double>(scheme.q), 2.0 * (1.0 - static_cast<double>(m)));
}

FoldedTransfer::FoldedTransfer(TransferSpec spec, size_t single_cap, size_t operand_cap) : spec_(std::move(spec)) {
    if (spec_.m == 0) {
        fail(ErrorKind::InvalidDimension, "replica count must be >= 1");
    }
    single_dim_ = spec_.single_copy_dimension();
    operand_dim_ = spec_.operand_dimension(operand_cap);
    for (size_t z = 0; z < spec_.scheme.outcome_count(); z++) {
        singles_.push_back(single_outcome_transfer(spec_.gate, spec_.t, z, spec_.scheme, single_cap));
        conj_singles_.push_back(singles_.back().conjugate());
    }
}

namespace {

/// out = (1 x .. x M on axis `axis` x .. x 1) in, for `axes` axes of size `d`.
void apply_on_axis(const ComplexMatrix &m, size_t axis, size_t axes, size_t d, const ComplexVector &in, ComplexVector &out) {
    const size_t left = ipow(d, axis);
    const size_t right = ipow(d, axes - axis - 1);
    const auto r = static_cast<Eigen::Index>(right);
    const auto dd = static_cast<Eigen::Index>(d);
    const ComplexMatrix mt = m.transpose();
    for (size_t l = 0; l < left; l++) {
        Eigen::Map<const ComplexMatrix> block(in.data() + l * d * right, r, dd);
        Eigen::Map<ComplexMatrix> target(out.data() + l * d * right, r, dd);
        target.noalias() = block * mt;
    }
}

}  // namespace

ComplexVector FoldedTransfer::apply(const ComplexVector &operand) const {
    if (static_cast<size_t>(operand.size()) != operand_dim_) {
        fail(ErrorKind::DimensionMismatch, "operand length " + std::to_string(operand.size()) + " differs from " +
                                               std::to_string(operand_dim_));
    }
    const size_t axes = 2 * spec_.m;
    ComplexVector total = ComplexVector::Zero(operand.size());
    ComplexVector a(operand.size()), b(operand.size());
    for (size_t z = 0; z < singles_.size(); z++) {
        a = operand;
        for (size_t axis = 0; axis < axes; axis++) {
            apply_on_axis(axis % 2 == 0 ? singles_[z] : conj_singles_[z], axis, axes, single_dim_, a, b);
            a.swap(b);
        }
        total += a;
    }
    return total;
}

ComplexMatrix FoldedTransfer::dense(size_t cap) const {
    if (operand_dim_ > cap) {
        fail(ErrorKind::CapExceeded, "dense folded transfer of dimension " + std::to_string(operand_dim_) +
                                         " exceeds cap " + std::to_string(cap));
    }
    ComplexMatrix total = ComplexMatrix::Zero(operand_dim_, operand_dim_);
    for (size_t z = 0; z < singles_.size(); z++) {
        ComplexMatrix term = ComplexMatrix::Identity(1, 1);
        for (size_t c = 0; c < spec_.m; c++) {
            term = kron(kron(term, singles_[z]), conj_singles_[z]);
        }
        total += term;
    }
    return total;
}

ComplexVector permutation_eigenoperator(const Permutation &pi, size_t single_dim) {
    const size_t m = pi.degree();
    const size_t dim = ipow(single_dim, 2 * m);
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    const size_t primed_configs = ipow(single_dim, m);
    std::vector<size_t> digits(2 * m);
    for (size_t c = 0; c < primed_configs; c++) {
        std::vector<size_t> primed = index_to_digits(c, single_dim, m);
        for (size_t i = 0; i < m; i++) {
            digits[2 * i] = primed[pi(i)];
            digits[2 * i + 1] = primed[i];
        }
        out(static_cast<Eigen::Index>(digits_to_index(digits, single_dim))) = 1.0;
    }
    return out;
}

double verify_eigen(const FoldedTransfer &transfer, const Permutation &pi) {
    if (pi.degree() != transfer.spec().m) {
        fail(ErrorKind::DimensionMismatch, "permutation degree differs from replica count");
    }
    ComplexVector p = permutation_eigenoperator(pi, transfer.spec().single_copy_dimension());
    ComplexVector image = transfer.apply(p);
    return (image - transfer.spec().leading_eigenvalue() * p).norm() / p.norm();
}

namespace {

class DeflatedOperator {
   public:
    DeflatedOperator(const FoldedTransfer &transfer, const std::vector<ComplexVector> &deflate) : transfer_(transfer) {
        for (const auto &v : deflate) {
            ComplexVector u = v;
            for (int pass = 0; pass < 2; pass++) {
                for (const auto &b : basis_) {
                    u -= b * b.dot(u);
                }
            }
            double n = u.norm();
            if (n > 1e-10 * v.norm()) {
                basis_.push_back(u / n);
            }
        }
    }

    size_t deflated_count() const {
        return basis_.size();
    }

    void project(ComplexVector &x) const {
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis_) {
                x -= b * b.dot(x);
            }
        }
    }

    ComplexVector operator()(ComplexVector x) const {
        project(x);
        ComplexVector y = transfer_.apply(x);
        project(y);
        return y;
    }

   private:
    const FoldedTransfer &transfer_;
    std::vector<ComplexVector> basis_;
};

std::vector<EigenEstimate> sorted_estimates(const ComplexVector &values, const RealVector &residuals, double tol, double scale) {
    std::vector<size_t> order(static_cast<size_t>(values.size()));
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return std::abs(values(a)) > std::abs(values(b)); });
    std::vector<EigenEstimate> out;
    for (size_t i : order) {
        EigenEstimate e;
        e.value = values(i);
        e.magnitude = std::abs(values(i));
        e.residual = residuals(i);
        e.converged = residuals(i) <= tol * scale;
        out.push_back(e);
    }
    return out;
}

std::vector<EigenEstimate> dense_deflated_eigs(const DeflatedOperator &op, size_t n, size_t count) {
    ComplexMatrix a(n, n);
    for (size_t j = 0; j < n; j++) {
        a.col(j) = op(ComplexVector::Unit(n, j));
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    ComplexVector values = es.eigenvalues();
    std::vector<EigenEstimate> all = sorted_estimates(values, RealVector::Zero(values.size()), 1.0, 1.0);
    // The deflated directions are mapped to zero; drop that many smallest-magnitude values.
    all.resize(all.size() - std::min(all.size(), op.deflated_count()));
    if (all.size() > count) {
        all.resize(count);
    }
    return all;
}

}  // namespace

std::vector<EigenEstimate> leading_eigs(const FoldedTransfer &transfer,
                                        const std::vector<ComplexVector> &deflate,
                                        const LeadingEigsOptions &options) {
    DeflatedOperator op(transfer, deflate);
    const size_t n = transfer.operand_dimension();
    const size_t nev = std::max<size_t>(options.count, 1);
    if (n <= 256) {
        return dense_deflated_eigs(op, n, nev);
    }
    size_t ncv = options.krylov_dimension > 0 ? options.krylov_dimension : std::max<size_t>(2 * nev + 20, 40);
    ncv = std::min(ncv, n - op.deflated_count());
    if (ncv <= nev + 1) {
        return dense_deflated_eigs(op, n, nev);
    }
    const auto ncv_i = static_cast<Eigen::Index>(ncv);

    ComplexMatrix v(n, ncv + 1);
    ComplexMatrix h = ComplexMatrix::Zero(ncv + 1, ncv);
    GaussianSource rng(options.seed);
    ComplexVector start(n);
    for (size_t i = 0; i < n; i++) {
        start(i) = rng.complex_normal();
    }
    op.project(start);
    v.col(0) = start / start.norm();

    // Extends the Arnoldi factorization from `from` to ncv columns. Returns the size at
    // which an invariant subspace was found, or ncv.
    auto extend = [&](size_t from) -> size_t {
        for (size_t j = from; j < ncv; j++) {
            ComplexVector w = op(v.col(j));
            const double w_norm = w.norm();
            auto basis = v.leftCols(j + 1);
            ComplexVector coeff = basis.adjoint() * w;
            w -= basis * coeff;
            ComplexVector again = basis.adjoint() * w;
            w -= basis * again;
            coeff += again;
            h.col(j).head(j + 1) = coeff;
            const double beta = w.norm();
            h(j + 1, j) = beta;
            if (beta <= 1e-13 * std::max(w_norm, 1e-300)) {
                return j + 1;
            }
            v.col(j + 1) = w / beta;
        }
        return ncv;
    };

    size_t size = extend(0);
    std::vector<EigenEstimate> result;
    for (size_t restart = 0;; restart++) {
        const auto sz = static_cast<Eigen::Index>(size);
        ComplexMatrix hm = h.topLeftCorner(sz, sz);
        Eigen::ComplexEigenSolver<ComplexMatrix> es(hm);
        ComplexVector theta = es.eigenvalues();
        const double beta = size < ncv ? 0.0 : std::abs(h(ncv_i, ncv_i - 1));
        RealVector res(sz);
        for (Eigen::Index i = 0; i < sz; i++) {
            ComplexVector y = es.eigenvectors().col(i);
            res(i) = beta * std::abs(y(sz - 1)) / y.norm();
        }
        double scale = 0.0;
        for (Eigen::Index i = 0; i < sz; i++) {
            scale = std::max(scale, std::abs(theta(i)));
        }
        scale = std::max(scale, 1e-300);
        result = sorted_estimates(theta, res, options.tol, scale);
        if (result.size() > nev) {
            result.resize(nev);
        }
        bool done = size < ncv ||
                    std::all_of(result.begin(), result.end(), [](const EigenEstimate &e) { return e.converged; });
        if (done || restart + 1 >= options.max_restarts) {
            break;
        }

        // Implicit restart with the unwanted Ritz values as exact shifts.
        std::vector<size_t> order(size);
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return std::abs(theta(a)) > std::abs(theta(b)); });
        const size_t keep = std::min(ncv - 1, nev + (ncv - nev) / 2);
        ComplexMatrix qacc = ComplexMatrix::Identity(ncv_i, ncv_i);
        for (size_t s = keep; s < size; s++) {
            const cdouble mu = theta(order[s]);
            Eigen::HouseholderQR<ComplexMatrix> qr(hm - mu * ComplexMatrix::Identity(ncv_i, ncv_i));
            ComplexMatrix qj = qr.householderQ();
            hm = qj.adjoint() * hm * qj;
            qacc = qacc * qj;
        }
        for (Eigen::Index c = 0; c < ncv_i; c++) {
            for (Eigen::Index r = c + 2; r < ncv_i; r++) {
                hm(r, c) = 0.0;
            }
        }
        const auto k = static_cast<Eigen::Index>(keep);
        ComplexVector f = v.col(ncv_i) * h(ncv_i, ncv_i - 1);
        ComplexMatrix rotated = v.leftCols(ncv_i) * qacc.leftCols(k + 1);
        ComplexVector fk = rotated.col(k) * hm(k, k - 1) + f * qacc(ncv_i - 1, k - 1);
        op.project(fk);
        v.leftCols(k) = rotated.leftCols(k);
        h.setZero();
        h.topLeftCorner(k, k) = hm.topLeftCorner(k, k);
        const double beta_k = fk.norm();
        h(k, k - 1) = beta_k;
        if (beta_k <= 1e-300) {
            size = keep;
            continue;
        }
        v.col(k) = fk / beta_k;
        size = extend(keep);
    }
    return result;
}

SpectralReport spectral_report(const FoldedTransfer &transfer, const LeadingEigsOptions &options) {
    const TransferSpec &spec = transfer.spec();
    SpectralReport report;
    report.spec = spec.scheme.name() + " t=" + std::to_string(spec.t) + " m=" + std::to_string(spec.m) +
                  " q=" + std::to_string(spec.scheme.q);
    report.leading_eigenvalue = spec.leading_eigenvalue();
    std::vector<ComplexVector> operands;
    for (const auto &pi : all_permutations(spec.m)) {
        operands.push_back(permutation_eigenoperator(pi, spec.single_copy_dimension()));
        ComplexVector image = transfer.apply(operands.back());
        report.residuals.push_back((image - report.leading_eigenvalue * operands.back()).norm() / operands.back().norm());
    }
    report.deflated = leading_eigs(transfer, operands, options);
    report.gap = report.leading_eigenvalue - (report.deflated.empty() ? 0.0 : report.deflated.front().magnitude);
    return report;
}

}  // namespace dudesign
