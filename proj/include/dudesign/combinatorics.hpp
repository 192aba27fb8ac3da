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

#include <cstdint>
#include <map>
#include <vector>

#include "dudesign/numerics.hpp"

namespace dudesign {

/// Bijection on {0..m-1}; images[i] is the image of i.
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<size_t> images);
    static Permutation identity(size_t m);

    size_t degree() const {
        return images_.size();
    }
    size_t operator()(size_t i) const {
        return images_[i];
    }
    const std::vector<size_t> &images() const {
        return images_;
    }

    /// (this * other)(i) = this(other(i)).
    Permutation operator*(const Permutation &other) const;
    Permutation inverse() const;

    bool operator==(const Permutation &other) const = default;
    auto operator<=>(const Permutation &other) const = default;

   private:
    std::vector<size_t> images_;
};

/// All of S_m in lexicographic order of the image list.
std::vector<Permutation> all_permutations(size_t m);

size_t cycle_count(const Permutation &p);
/// Cycle lengths sorted descending.
std::vector<size_t> cycle_type(const Permutation &p);

/// Unsigned Stirling number of the first kind [m, l].
uint64_t stirling_first(size_t m, size_t l);
/// d (d+1) ... (d+m-1); throws on overflow.
uint64_t rising_factorial(uint64_t d, size_t m);

/// P(pi)|i_1..i_k> = |i_{pi(1)}..i_{pi(k)}> on (C^d)^{(x)k}, first copy most significant.
ComplexMatrix permutation_operator(const Permutation &pi, size_t d);

struct WeingartenTable {
    size_t m = 0;
    size_t d = 0;
    /// Keyed by cycle type; each entry holds the lexicographically least representative.
    std::map<std::vector<size_t>, std::pair<Permutation, double>> by_class;

    double operator()(const Permutation &p) const;
};

/// Gram matrix G_{sigma,tau} = d^{c(sigma tau^{-1})} over S_m in lexicographic order.
Eigen::MatrixXd permutation_gram(size_t m, size_t d);

/// Weingarten function from the inverse of the Gram matrix. Requires d >= m.
WeingartenTable weingarten(size_t m, size_t d);

/// Exact E[U^{(x)m} (x) conj(U)^{(x)m}] over Haar U(d) from the Weingarten sum.
/// Row index (a_1..a_m, a'_1..a'_m), column (b_1..b_m, b'_1..b'_m).
ComplexMatrix haar_twirl_exact(size_t d, size_t m);

/// Monte-Carlo estimate of the same operator from `samples` Haar unitaries.
ComplexMatrix haar_twirl_mc(size_t d, size_t m, size_t samples, uint64_t seed, size_t cap = 4096);

}  // namespace dudesign
