// Copyright 2026 The qtruncate Authors
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

// Independent reference implementations used to pin expected values. These
// deliberately avoid the library's algorithms: the permanent is expanded over
// permutations, the basis is generated recursively, and transition amplitudes
// can be taken from the sequential engine when checking the permanent path
// (and vice versa).

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "qtruncate/circuit.hpp"
#include "qtruncate/evolution.hpp"
#include "qtruncate/fock.hpp"

namespace oracles {

using qtruncate::Circuit;
using qtruncate::cplx;
using qtruncate::Element;
using qtruncate::Matrix;
using qtruncate::OccupationVector;

/// Permanent by brute-force expansion over all n! permutations.
inline cplx permanent_naive(const Matrix& m) {
    const int n = m.size();
    if (n == 0) {
        return 1.0;
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        perm[static_cast<std::size_t>(i)] = i;
    }
    cplx total{};
    do {
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= m.at(i, perm[static_cast<std::size_t>(i)]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// All occupations with the given total, generated recursively in
/// lexicographic order.
inline void enumerate_recursive_into(int num_modes, int total, std::vector<int>& prefix,
                                     std::vector<OccupationVector>& out) {
    if (num_modes == 1) {
        prefix.push_back(total);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int head = 0; head <= total; ++head) {
        prefix.push_back(head);
        enumerate_recursive_into(num_modes - 1, total - head, prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<OccupationVector> enumerate_recursive(int num_modes, int total) {
    std::vector<OccupationVector> out;
    std::vector<int> prefix;
    enumerate_recursive_into(num_modes, total, prefix, out);
    return out;
}

/// Random circuit on `num_modes` modes with up to `max_elements` elements.
inline Circuit random_circuit(std::mt19937_64& rng, int num_modes, int max_elements) {
    std::uniform_int_distribution<int> count_dist(1, max_elements);
    std::uniform_int_distribution<int> mode_dist(1, num_modes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Circuit c;
    c.num_modes = num_modes;
    const int n_elem = count_dist(rng);
    for (int k = 0; k < n_elem; ++k) {
        if (num_modes >= 2 && unit(rng) < 0.6) {
            int a = mode_dist(rng);
            int b = mode_dist(rng);
            while (b == a) {
                b = mode_dist(rng);
            }
            c.elements.push_back(Element::beam_splitter(a, b, unit(rng)));
        } else {
            c.elements.push_back(Element::phase_shifter(mode_dist(rng), angle(rng)));
        }
    }
    return c;
}

/// Random occupation of `num_modes` modes with exactly `total` photons.
inline OccupationVector random_occupation(std::mt19937_64& rng, int num_modes, int total) {
    std::vector<int> occ(static_cast<std::size_t>(num_modes), 0);
    std::uniform_int_distribution<int> mode_dist(0, num_modes - 1);
    for (int k = 0; k < total; ++k) {
        occ[static_cast<std::size_t>(mode_dist(rng))] += 1;
    }
    return OccupationVector(occ);
}

}  // namespace oracles
