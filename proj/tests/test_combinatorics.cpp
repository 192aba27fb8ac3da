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

#include <map>

#include "dudesign/combinatorics.hpp"
#include "dudesign/states.hpp"
#include "testing.hpp"

using namespace dudesign;
using dudesign::testing::error_kind_of;

TEST_CASE("permutation algebra") {
    Permutation p({1, 2, 0});
    Permutation q({1, 0, 2});
    CHECK((p * q).images() == std::vector<size_t>{2, 1, 0});
    CHECK(p * p.inverse() == Permutation::identity(3));
    CHECK(error_kind_of([] { Permutation({0, 0}); }) == ErrorKind::Shape);
    CHECK(all_permutations(4).size() == 24);
    CHECK(all_permutations(3).front() == Permutation::identity(3));
}

TEST_CASE("cycle counts") {
    CHECK(cycle_count(Permutation::identity(4)) == 4);
    CHECK(cycle_count(Permutation({1, 2, 0})) == 1);
    CHECK(cycle_count(Permutation({1, 0, 2, 3})) == 3);
    CHECK(cycle_type(Permutation({1, 0, 3, 4, 2})) == std::vector<size_t>{3, 2});
}

TEST_CASE("cycle-count census equals the Stirling numbers of the first kind") {
    for (size_t m = 1; m <= 6; m++) {
        std::vector<uint64_t> census(m + 1, 0);
        for (const auto &p : all_permutations(m)) {
            census[cycle_count(p)]++;
        }
        for (size_t l = 0; l <= m; l++) {
            CHECK(census[l] == stirling_first(m, l));
        }
    }
    CHECK(stirling_first(0, 0) == 1);
}

TEST_CASE("rising factorial") {
    CHECK(rising_factorial(2, 2) == 6);
    CHECK(rising_factorial(16, 4) == 93024);
    CHECK(rising_factorial(7, 0) == 1);
    CHECK(error_kind_of([] { rising_factorial(1ULL << 40, 3); }) == ErrorKind::Overflow);
}

TEST_CASE("sum of q^(N_A c(pi)) over S_k is the rising factorial of the dimension") {
    for (uint64_t q : {2, 3}) {
        for (size_t n_a = 1; n_a <= 4; n_a++) {
            const uint64_t d = ipow(q, n_a);
            for (size_t k = 1; k <= 4; k++) {
                uint64_t sum = 0;
                for (const auto &p : all_permutations(k)) {
                    sum += ipow(d, cycle_count(p));
                }
                CHECK(sum == rising_factorial(d, k));
            }
        }
    }
}

TEST_CASE("permutation_operator acts by permuting tensor factors") {
    const size_t d = 3;
    Permutation pi({1, 2, 0});
    ComplexMatrix p = permutation_operator(pi, d);
    CHECK(unitarity_violation(p) < 1e-15);
    for (size_t i0 = 0; i0 < d; i0++) {
        for (size_t i1 = 0; i1 < d; i1++) {
            for (size_t i2 = 0; i2 < d; i2++) {
                const size_t in = (i0 * d + i1) * d + i2;
                const size_t i[] = {i0, i1, i2};
                const size_t out = (i[pi(0)] * d + i[pi(1)]) * d + i[pi(2)];
                CHECK(p(out, in) == cdouble(1.0));
            }
        }
    }
}

TEST_CASE("Weingarten function") {
    for (size_t d : {2, 5}) {
        CHECK(weingarten(1, d)(Permutation::identity(1)) == doctest::Approx(1.0 / d).epsilon(1e-14));
    }
    CHECK(error_kind_of([] { weingarten(3, 2); }) == ErrorKind::DimensionTooSmall);
    CHECK(error_kind_of([] { weingarten(0, 2); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("Weingarten sum rule") {
    for (size_t m = 1; m <= 4; m++) {
        for (size_t d : {4, 8, 16}) {
            WeingartenTable wg = weingarten(m, d);
            double sum = 0.0;
            for (const auto &p : all_permutations(m)) {
                sum += wg(p);
            }
            CHECK(std::abs(sum - 1.0 / double(rising_factorial(d, m))) < 1e-12);
        }
    }
}

TEST_CASE("Weingarten inverts the Gram matrix and is a class function") {
    for (size_t m = 1; m <= 4; m++) {
        for (size_t d = m; d <= m + 3; d++) {
            const auto perms = all_permutations(m);
            Eigen::MatrixXd gram = permutation_gram(m, d);
            WeingartenTable wg = weingarten(m, d);
            double worst = 0.0;
            for (size_t s = 0; s < perms.size(); s++) {
                for (size_t p = 0; p < perms.size(); p++) {
                    double sum = 0.0;
                    for (size_t t = 0; t < perms.size(); t++) {
                        sum += gram(s, t) * wg(perms[t].inverse() * perms[p]);
                    }
                    worst = std::max(worst, std::abs(sum - (s == p ? 1.0 : 0.0)));
                }
            }
            CHECK(worst < 1e-10);
            std::map<std::vector<size_t>, double> by_type;
            for (const auto &p : perms) {
                auto [it, fresh] = by_type.emplace(cycle_type(p), wg(p));
                if (!fresh) {
                    CHECK(wg(p) == it->second);
                }
            }
        }
    }
}

TEST_CASE("exact Haar twirl, m = 1, has the delta structure / d") {
    const size_t d = 3;
    ComplexMatrix twirl = haar_twirl_exact(d, 1);
    ComplexMatrix expected = ComplexMatrix::Zero(d * d, d * d);
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            expected(a * d + a, b * d + b) = 1.0 / d;
        }
    }
    CHECK(max_abs(twirl - expected) < 1e-14);
}

TEST_CASE("Monte-Carlo Haar twirl converges to the exact twirl") {
    ComplexMatrix exact1 = haar_twirl_exact(2, 1);
    CHECK(max_abs(haar_twirl_mc(2, 1, 100000, 3) - exact1) < 0.01);
    ComplexMatrix exact2 = haar_twirl_exact(2, 2);
    CHECK(max_abs(haar_twirl_mc(2, 2, 100000, 4) - exact2) < 0.01);
    CHECK(error_kind_of([] { haar_twirl_mc(8, 3, 10, 0, 4096); }) == ErrorKind::CapExceeded);
}

TEST_CASE("exact Haar twirl is a projector onto twirl-invariant operators") {
    ComplexMatrix t = haar_twirl_exact(3, 2);
    CHECK(max_abs(t * t - t) < 1e-12);
}
