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

#include "dudesign/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dudesign/error.hpp"
#include "dudesign/states.hpp"

namespace dudesign {

Permutation::Permutation(std::vector<size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (size_t v : images_) {
        if (v >= images_.size() || seen[v]) {
            fail(ErrorKind::Shape, "permutation images are not a bijection");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(size_t m) {
    std::vector<size_t> images(m);
    std::iota(images.begin(), images.end(), size_t{0});
    return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation &other) const {
    if (degree() != other.degree()) {
        fail(ErrorKind::DimensionMismatch, "composing permutations of different degree");
    }
    std::vector<size_t> images(degree());
    for (size_t i = 0; i < degree(); i++) {
        images[i] = images_[other.images_[i]];
    }
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<size_t> images(degree());
    for (size_t i = 0; i < degree(); i++) {
        images[images_[i]] = i;
    }
    return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(size_t m) {
    std::vector<size_t> images(m);
    std::iota(images.begin(), images.end(), size_t{0});
    std::vector<Permutation> out;
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

std::vector<size_t> cycle_type(const Permutation &p) {
    std::vector<bool> visited(p.degree(), false);
    std::vector<size_t> lengths;
    for (size_t start = 0; start < p.degree(); start++) {
        if (visited[start]) {
            continue;
        }
        size_t len = 0;
        for (size_t i = start; !visited[i]; i = p(i)) {
            visited[i] = true;
            len++;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

size_t cycle_count(const Permutation &p) {
    return cycle_type(p).size();
}

namespace {

uint64_t checked_mul(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        fail(ErrorKind::Overflow, "64-bit overflow in combinatorial product");
    }
    return r;
}

uint64_t checked_add(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        fail(ErrorKind::Overflow, "64-bit overflow in combinatorial sum");
    }
    return r;
}

}  // namespace

uint64_t stirling_first(size_t m, size_t l) {
    if (l > m) {
        return 0;
    }
    // row[k] = [n, k], built up with [n+1, k] = n [n, k] + [n, k-1].
    std::vector<uint64_t> row(m + 1, 0);
    row[0] = 1;
    for (size_t n = 0; n < m; n++) {
        for (size_t k = n + 1; k >= 1; k--) {
            row[k] = checked_add(checked_mul(n, row[k]), row[k - 1]);
        }
        row[0] = 0;
    }
    return row[l];
}

uint64_t rising_factorial(uint64_t d, size_t m) {
    uint64_t r = 1;
    for (size_t i = 0; i < m; i++) {
        r = checked_mul(r, checked_add(d, i));
    }
    return r;
}

ComplexMatrix permutation_operator(const Permutation &pi, size_t d) {
    const size_t k = pi.degree();
    const size_t dim = ipow(d, k);
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    std::vector<size_t> out(k);
    for (size_t col = 0; col < dim; col++) {
        std::vector<size_t> in = index_to_digits(col, d, k);
        for (size_t r = 0; r < k; r++) {
            out[r] = in[pi(r)];
        }
        p(digits_to_index(out, d), col) = 1.0;
    }
    return p;
}

double WeingartenTable::operator()(const Permutation &p) const {
    auto it = by_class.find(cycle_type(p));
    if (it == by_class.end()) {
        fail(ErrorKind::DimensionMismatch, "permutation degree does not match Weingarten table");
    }
    return it->second.second;
}

Eigen::MatrixXd permutation_gram(size_t m, size_t d) {
    std::vector<Permutation> perms = all_permutations(m);
    const size_t n = perms.size();
    Eigen::MatrixXd gram(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            gram(i, j) = std::pow(static_cast<double>(d), static_cast<double>(cycle_count(perms[i] * perms[j].inverse())));
        }
    }
    return gram;
}

WeingartenTable weingarten(size_t m, size_t d) {
    if (m == 0) {
        fail(ErrorKind::InvalidDimension, "weingarten requires m >= 1");
    }
    if (d < m) {
        fail(ErrorKind::DimensionTooSmall, "permutation Gram matrix is singular for d < m");
    }
    std::vector<Permutation> perms = all_permutations(m);
    Eigen::MatrixXd gram = permutation_gram(m, d);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible()) {
        fail(ErrorKind::DimensionTooSmall, "permutation Gram matrix is singular");
    }
    // Wg(sigma tau^{-1}) = (G^{-1})_{sigma,tau}; column of the identity (index 0) gives Wg(sigma).
    Eigen::VectorXd e0 = Eigen::VectorXd::Unit(perms.size(), 0);
    Eigen::VectorXd wg = lu.solve(e0);

    WeingartenTable table;
    table.m = m;
    table.d = d;
    for (size_t i = 0; i < perms.size(); i++) {
        // Lexicographic enumeration: the first member seen of a class is the least.
        table.by_class.try_emplace(cycle_type(perms[i]), perms[i], wg(i));
    }
    return table;
}

ComplexMatrix haar_twirl_exact(size_t d, size_t m) {
    WeingartenTable wg = weingarten(m, d);
    std::vector<Permutation> perms = all_permutations(m);
    const size_t half = ipow(d, m);
    ComplexMatrix out = ComplexMatrix::Zero(half * half, half * half);
    for (const auto &sigma : perms) {
        for (const auto &tau : perms) {
            double w = wg(sigma * tau.inverse());
            // delta_{a_i, a'_{sigma(i)}}: the row index pair (a, a') with a = sigma-permuted a'.
            for (size_t ap = 0; ap < half; ap++) {
                std::vector<size_t> aprime = index_to_digits(ap, d, m);
                std::vector<size_t> a(m);
                for (size_t i = 0; i < m; i++) {
                    a[i] = aprime[sigma(i)];
                }
                size_t row = digits_to_index(a, d) * half + ap;
                for (size_t bp = 0; bp < half; bp++) {
                    std::vector<size_t> bprime = index_to_digits(bp, d, m);
                    std::vector<size_t> b(m);
                    for (size_t i = 0; i < m; i++) {
                        b[i] = bprime[tau(i)];
                    }
                    out(row, digits_to_index(b, d) * half + bp) += w;
                }
            }
        }
    }
    return out;
}

ComplexMatrix haar_twirl_mc(size_t d, size_t m, size_t samples, uint64_t seed, size_t cap) {
    const size_t dim = ipow(d, 2 * m);
    if (dim > cap) {
        fail(ErrorKind::CapExceeded, "twirl operator dimension " + std::to_string(dim) + " exceeds cap");
    }
    GaussianSource rng(seed);
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (size_t s = 0; s < samples; s++) {
        ComplexMatrix u = haar_unitary(d, rng);
        ComplexMatrix uc = u.conjugate();
        ComplexMatrix term = ComplexMatrix::Identity(1, 1);
        for (size_t i = 0; i < m; i++) {
            term = kron(term, u);
        }
        for (size_t i = 0; i < m; i++) {
            term = kron(term, uc);
        }
        acc += term;
    }
    return acc / static_cast<double>(samples);
}

}  // namespace dudesign
