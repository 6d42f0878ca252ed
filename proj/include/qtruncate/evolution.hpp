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

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qtruncate/circuit.hpp"
#include "qtruncate/fock.hpp"

namespace qtruncate {

inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int k = 1; k <= 170; ++k) {
            t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * k;
        }
        return t;
    }();
    if (n < 0 || n > 170) {
        throw std::invalid_argument("factorial argument out of range");
    }
    return table[static_cast<std::size_t>(n)];
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

namespace detail {

/// x^k by repeated multiplication; keeps exact zeros and sign cancellations
/// bit-reproducible across platforms.
inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

}  // namespace detail

/// Permanent by Ryser's formula with Gray-code subset updates, O(2^n n).
/// The empty matrix has permanent 1.
inline cplx permanent(const Matrix& m) {
    const int n = m.size();
    if (n == 0) {
        return 1.0;
    }
    if (n > 62) {
        throw std::invalid_argument("permanent: matrix too large");
    }
    std::vector<cplx> row_sum(static_cast<std::size_t>(n));
    cplx total{};
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t diff = next ^ gray;
        const int j = std::countr_zero(diff);
        if (next & diff) {
            for (int i = 0; i < n; ++i) {
                row_sum[static_cast<std::size_t>(i)] += m.at(i, j);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                row_sum[static_cast<std::size_t>(i)] -= m.at(i, j);
            }
        }
        gray = next;
        cplx prod = row_sum[0];
        for (int i = 1; i < n; ++i) {
            prod *= row_sum[static_cast<std::size_t>(i)];
        }
        total += (std::popcount(gray) % 2 ? -prod : prod);
    }
    return (n % 2 ? -total : total);
}

/// A scattering matrix with row i repeated out_i times and column j repeated
/// in_j times: the index pattern behind Fock-basis transition amplitudes.
struct RepeatedIndexMatrix {
    ScatteringMatrix base;
    OccupationVector row_multiplicities;
    OccupationVector col_multiplicities;

    Matrix materialize() const {
        if (row_multiplicities.num_modes() != base.size() ||
            col_multiplicities.num_modes() != base.size()) {
            throw std::invalid_argument("multiplicity length does not match matrix size");
        }
        const int nu = row_multiplicities.total();
        if (col_multiplicities.total() != nu) {
            throw std::invalid_argument("row and column multiplicities must balance");
        }
        Matrix m(nu);
        int r = 0;
        for (int i = 0; i < base.size(); ++i) {
            for (int ri = 0; ri < row_multiplicities[i]; ++ri, ++r) {
                int c = 0;
                for (int j = 0; j < base.size(); ++j) {
                    for (int cj = 0; cj < col_multiplicities[j]; ++cj, ++c) {
                        m.at(r, c) = base.at(i, j);
                    }
                }
            }
        }
        return m;
    }
};

/// Fock-basis transition amplitude <out|U|in> for the interferometer with
/// scattering matrix S: perm(S[out|in]) / sqrt(prod out_i! prod in_j!).
/// Exactly 0 when the photon totals differ.
inline cplx matrix_element(const ScatteringMatrix& s, const OccupationVector& out_occ,
                           const OccupationVector& in_occ) {
    if (out_occ.num_modes() != s.size() || in_occ.num_modes() != s.size()) {
        throw std::invalid_argument("occupation length does not match matrix size");
    }
    if (out_occ.total() != in_occ.total()) {
        return cplx{};
    }
    RepeatedIndexMatrix rim{s, out_occ, in_occ};
    double norm = 1.0;
    for (int i = 0; i < s.size(); ++i) {
        norm *= factorial(out_occ[i]) * factorial(in_occ[i]);
    }
    return permanent(rim.materialize()) / std::sqrt(norm);
}

/// Apply one element to a state. Phase shifters multiply each amplitude by
/// e^{i k xi} with k the photon count on the shifted mode. Beam splitters
/// perform the creation-operator substitution
///   a+_p -> t b+_p - r b+_q,   a+_q -> r b+_p + t b+_q
/// with the usual sqrt-factorial weights, matching compile()'s convention.
inline StateVector apply_element(const StateVector& state, const Element& element) {
    element.validate(state.num_modes());
    StateVector out(state.num_modes());

    if (element.kind == Element::Kind::PhaseShifter) {
        const int m = element.mode_a - 1;
        for (const auto& [occ, amp] : state.terms()) {
            const int k = occ[m];
            out.add(occ, k == 0 ? amp : amp * std::polar(1.0, k * element.value));
        }
        return out;
    }

    const int p = element.mode_a - 1;
    const int q = element.mode_b - 1;
    const double t = std::sqrt(element.value);
    const double r = std::sqrt(1.0 - element.value);
    for (const auto& [occ, amp] : state.terms()) {
        const int mp = occ[p];
        const int mq = occ[q];
        const int tot = mp + mq;
        if (tot == 0) {
            out.add(occ, amp);
            continue;
        }
        const cplx base = amp / std::sqrt(factorial(mp) * factorial(mq));
        for (int k = 0; k <= tot; ++k) {
            double coef = 0.0;
            const int ilo = std::max(0, k - mq);
            const int ihi = std::min(k, mp);
            for (int i = ilo; i <= ihi; ++i) {
                const int j = k - i;
                coef += binomial(mp, i) * binomial(mq, j) * detail::ipow(t, i + mq - j) *
                        detail::ipow(-r, mp - i) * detail::ipow(r, j);
            }
            if (coef == 0.0) {
                continue;
            }
            out.add(occ.with(p, k).with(q, tot - k),
                    base * std::sqrt(factorial(k) * factorial(tot - k)) * coef);
        }
    }
    out.prune(0.0);
    return out;
}

/// Sequentially apply every element of the circuit.
inline StateVector evolve(const StateVector& state, const Circuit& circuit) {
    if (state.num_modes() != circuit.num_modes) {
        throw std::invalid_argument("state and circuit mode counts differ");
    }
    StateVector current = state;
    for (const Element& e : circuit.elements) {
        current = apply_element(current, e);
    }
    return current;
}

}  // namespace qtruncate
