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
#include <string>
#include <vector>

#include "dudesign/biunitary.hpp"
#include "dudesign/combinatorics.hpp"
#include "dudesign/states.hpp"

namespace dudesign {

/// Initial state and bath measurement seen by one spatial column of the circuit.
///
/// A column (cell) owns two neighbouring wires, "mid" w and "right" y; its left
/// neighbour wire x belongs to the previous cell. Layers are numbered 1..2t.
///
/// Computational: w and y start in fixed digits, gates (w,y) act at odd layers and
/// (x,w) at even layers, and the outcome (z0, z1) fixes the final values of (x, w).
/// Operand legs are x_1..x_{2t-1} (columns) and y_1..y_{2t-1} (rows), dimension q^{2t-1}.
///
/// Ueb: w and y start in one two-site MPS tensor N^{(w_0, y_0)}, gates (x,w) act at odd
/// layers and (w,y) at even layers, and the outcome alpha_n projects the final (x, w) on
/// <alpha_n| with <ij|alpha_n> = (alpha_n)_{ij} / sqrt(q). Operand legs are the bond
/// followed by x_0..x_{2t} (columns) or y_0..y_{2t} (rows), dimension chi q^{2t+1}.
///
/// In both cases the bond (if any) is the most significant digit and wire values are
/// ordered by ascending time.
struct TransferScheme {
    enum class Kind { Computational, Ueb };
    Kind kind = Kind::Computational;
    size_t q = 0;
    size_t initial_mid = 0;
    size_t initial_right = 0;
    std::optional<UnitaryErrorBasis> basis;
    std::optional<SolvableMPS> mps;

    static TransferScheme computational(size_t q, size_t initial_mid = 0, size_t initial_right = 0);
    static TransferScheme ueb(UnitaryErrorBasis basis, SolvableMPS mps);

    std::string name() const;
    size_t outcome_count() const {
        return q * q;
    }
    size_t bond_dimension() const;
    /// Dimension of one (unfolded) copy of the operand for t time steps.
    size_t single_copy_dimension(size_t t) const;
};

/// M_z for one measurement outcome; z = z0*q + z1 (computational) or the basis index n (ueb).
/// Row index: right legs; column index: left legs.
ComplexMatrix single_outcome_transfer(const Gate &gate,
                                      size_t t,
                                      size_t outcome,
                                      const TransferScheme &scheme,
                                      size_t cap = 256);

/// Common scale c of a matrix that is c times a unitary: sqrt of the mean diagonal of M^dagger M.
/// `violation` is max |M^dagger M / c^2 - I|.
struct ProportionalUnitary {
    double scale = 0.0;
    double violation = 0.0;
};
ProportionalUnitary proportional_unitary(const ComplexMatrix &m);

struct TransferSpec {
    Gate gate;
    size_t t = 1;
    TransferScheme scheme;
    size_t m = 1;

    size_t single_copy_dimension() const {
        return scheme.single_copy_dimension(t);
    }
    /// single_copy_dimension^(2m); throws CapExceeded above `cap`.
    size_t operand_dimension(size_t cap = size_t{1} << 24) const;
    /// Leading eigenvalue q^{2(1-m)} expected for solvable schemes.
    double leading_eigenvalue() const;
};

/// Folded transfer matrix T_m = sum_z M_z^{(x)m} (x) conj(M_z)^{(x)m}.
///
/// Operand legs are copy-major: (a_1, a'_1, a_2, a'_2, ..., a_m, a'_m), where unprimed
/// copies carry M_z and primed copies conj(M_z), and each a_i is a full single-copy index.
class FoldedTransfer {
   public:
    explicit FoldedTransfer(TransferSpec spec, size_t single_cap = 256, size_t operand_cap = size_t{1} << 24);

    const TransferSpec &spec() const {
        return spec_;
    }
    size_t operand_dimension() const {
        return operand_dim_;
    }
    const std::vector<ComplexMatrix> &single_outcome_matrices() const {
        return singles_;
    }

    /// Matrix-free application.
    ComplexVector apply(const ComplexVector &operand) const;
    /// Explicit matrix; only for operand dimension <= cap.
    ComplexMatrix dense(size_t cap = 4096) const;

   private:
    TransferSpec spec_;
    size_t single_dim_ = 0;
    size_t operand_dim_ = 0;
    std::vector<ComplexMatrix> singles_;
    std::vector<ComplexMatrix> conj_singles_;
};

/// P(pi)_a = prod_i delta(a_i, a'_{pi(i)}) on copies of dimension `single_dim`.
ComplexVector permutation_eigenoperator(const Permutation &pi, size_t single_dim);

/// || T |pi) - lambda |pi) || / || |pi) || with lambda = q^{2(1-m)}.
double verify_eigen(const FoldedTransfer &transfer, const Permutation &pi);

struct EigenEstimate {
    cdouble value;
    double magnitude = 0.0;
    double residual = 0.0;
    bool converged = false;
};

struct LeadingEigsOptions {
    size_t count = 4;
    size_t krylov_dimension = 0;  // 0 picks max(2 count + 20, 40), capped by the operand size
    size_t max_restarts = 2000;
    double tol = 1e-8;
    uint64_t seed = 1;
};

/// Largest-magnitude eigenvalues of T restricted to the orthogonal complement of `deflate`
/// (implicitly restarted Arnoldi). Vectors in `deflate` must be left eigenvectors of T for
/// the complement to be invariant; the permutation eigenoperators are.
std::vector<EigenEstimate> leading_eigs(const FoldedTransfer &transfer,
                                        const std::vector<ComplexVector> &deflate,
                                        const LeadingEigsOptions &options = {});

struct SpectralReport {
    std::string spec;
    double leading_eigenvalue = 0.0;
    std::vector<double> residuals;  // one per permutation of S_m, lexicographic order
    std::vector<EigenEstimate> deflated;
    /// leading_eigenvalue - largest deflated magnitude.
    double gap = 0.0;
};

SpectralReport spectral_report(const FoldedTransfer &transfer, const LeadingEigsOptions &options = {});

}  // namespace dudesign
