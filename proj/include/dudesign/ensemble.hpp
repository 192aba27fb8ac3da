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
#include "dudesign/states.hpp"

namespace dudesign {

inline constexpr double kDefaultProbabilityFloor = 1e-14;
inline constexpr size_t kDefaultFullCap = 4096;

/// How the bath is measured. The bath is the block of sites to the right of the system.
///
/// For the paired scheme, the first `single_sites_before_pairs` bath sites are measured in
/// the computational basis, then consecutive pairs are measured in the basis
/// {|alpha_n>}, <ij|alpha_n> = (alpha_n)_{ij} / sqrt(q); an unpaired last site is
/// measured in the computational basis.
struct MeasurementScheme {
    enum class Kind { SingleSiteComputational, TwoSiteUeb };
    Kind kind = Kind::SingleSiteComputational;
    std::optional<UnitaryErrorBasis> basis;
    size_t single_sites_before_pairs = 0;

    static MeasurementScheme computational();
    static MeasurementScheme ueb(UnitaryErrorBasis basis, size_t single_sites_before_pairs = 0);

    std::string name() const;
    /// Two-site basis-change unitary B with B[n, i*q+j] = conj((alpha_n)_{ij}) / sqrt(q).
    ComplexMatrix pair_basis_change() const;
    /// Max deviation of the measurement basis from an orthonormal resolution of identity.
    double completeness_violation() const;
};

struct ProjectedEnsemble {
    size_t d_a = 0;
    size_t n_a = 0;
    size_t n_b = 0;
    std::string scheme;
    std::vector<double> probabilities;
    /// Column e is the normalized projected state of entry e.
    ComplexMatrix states;
    /// Bath outcome index of each entry (mixed radix in the measurement basis).
    std::vector<size_t> outcomes;
    double dropped_mass = 0.0;

    size_t size() const {
        return probabilities.size();
    }
};

/// Unnormalized projected states: column z is (1_A x <z_B|) |psi> in the scheme's basis.
ComplexMatrix projected_amplitudes(const StateVector &state, size_t n_a, const MeasurementScheme &scheme);

ProjectedEnsemble project_ensemble(const StateVector &state,
                                   size_t n_a,
                                   const MeasurementScheme &scheme,
                                   double p_floor = kDefaultProbabilityFloor);

/// Orthonormal basis of the symmetric subspace of (C^d)^{(x)k}: nondecreasing index tuples in
/// lexicographic order.
class SymmetricBasis {
   public:
    SymmetricBasis(size_t d, size_t k);
    size_t d() const {
        return d_;
    }
    size_t k() const {
        return k_;
    }
    size_t size() const {
        return weights_.size();
    }
    const std::vector<size_t> &tuple(size_t i) const {
        return tuples_[i];
    }
    /// Coordinates of psi^{(x)k}: sqrt(k! / prod m_i!) prod psi_i^{m_i}.
    ComplexVector coords(const ComplexVector &psi) const;
    /// Isometry (d^k x D) embedding symmetric coordinates into the full tensor space.
    ComplexMatrix embedding() const;

   private:
    size_t d_;
    size_t k_;
    std::vector<std::vector<size_t>> tuples_;
    std::vector<double> weights_;
};

ComplexVector sym_coords(const ComplexVector &psi, size_t k);
uint64_t symmetric_dimension(size_t d, size_t k);

enum class MomentRepr { Full, Symmetric };

struct MomentOperator {
    size_t d = 0;
    size_t k = 0;
    MomentRepr repr = MomentRepr::Symmetric;
    ComplexMatrix matrix;
};

MomentOperator moment_k(const ProjectedEnsemble &ens,
                        size_t k,
                        MomentRepr repr = MomentRepr::Symmetric,
                        size_t full_cap = kDefaultFullCap,
                        size_t block = 1024);

MomentOperator haar_moment(size_t d, size_t k, MomentRepr repr = MomentRepr::Symmetric, size_t full_cap = kDefaultFullCap);

/// Half the trace norm of the difference of two moment operators of the same shape.
double trace_distance(const MomentOperator &a, const MomentOperator &b);

/// Delta^(k) = 1/2 || rho_E^(k) - rho_Haar^(k) ||_1.
///
/// The symmetric route never forms the moment when the ensemble is smaller than the
/// symmetric subspace: the nonzero spectrum of sum_e p_e |s_e><s_e| equals that of the
/// Gram matrix sqrt(p_e p_f) <psi_e|psi_f>^k.
double delta_k(const ProjectedEnsemble &ens, size_t k, MomentRepr repr = MomentRepr::Symmetric, size_t full_cap = kDefaultFullCap);

/// sum_z p(z)^n (|psi~(z)><psi~(z)|)^{(x)k} with unnormalized projected states, on d_A^k.
/// Outcomes with p <= p_floor are skipped (needed for negative n).
ComplexMatrix rho_nk(const StateVector &state,
                     size_t n_a,
                     const MeasurementScheme &scheme,
                     int n,
                     size_t k,
                     size_t full_cap = kDefaultFullCap,
                     double p_floor = kDefaultProbabilityFloor);

/// min_c ||X - c S||_F / ||X||_F with S = sum_{pi in S_k} P(pi) on (C^d)^{(x)k}.
double distance_to_permutation_span(const ComplexMatrix &x, size_t d, size_t k);

}  // namespace dudesign
