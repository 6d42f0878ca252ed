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

#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtruncate {

using cplx = std::complex<double>;

/// Photon counts per mode; the basis label of the multi-mode Fock space.
class OccupationVector {
  public:
    OccupationVector() = default;

    explicit OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int n : counts_) {
            if (n < 0) {
                throw std::invalid_argument("occupation entries must be non-negative");
            }
        }
    }

    OccupationVector(std::initializer_list<int> counts)
        : OccupationVector(std::vector<int>(counts)) {}

    static OccupationVector vacuum(int num_modes) {
        return OccupationVector(std::vector<int>(static_cast<std::size_t>(num_modes), 0));
    }

    int num_modes() const { return static_cast<int>(counts_.size()); }

    /// Count on a mode, 0-based.
    int operator[](int mode) const { return counts_[static_cast<std::size_t>(mode)]; }

    /// Total photon number across all modes.
    int total() const {
        int s = 0;
        for (int n : counts_) {
            s += n;
        }
        return s;
    }

    const std::vector<int>& counts() const { return counts_; }

    /// Copy with the count on one mode (0-based) replaced.
    OccupationVector with(int mode, int count) const {
        std::vector<int> c = counts_;
        c[static_cast<std::size_t>(mode)] = count;
        return OccupationVector(std::move(c));
    }

    auto operator<=>(const OccupationVector&) const = default;

    std::string str() const {
        std::ostringstream out;
        out << '|';
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << counts_[i];
        }
        out << '>';
        return out.str();
    }

  private:
    std::vector<int> counts_;
};

/// Sparse multi-mode state: occupation -> complex amplitude. Not implicitly
/// normalized; callers query norm2() when they need the norm.
class StateVector {
  public:
    explicit StateVector(int num_modes) : num_modes_(num_modes) {
        if (num_modes < 1) {
            throw std::invalid_argument("state needs at least one mode");
        }
    }

    int num_modes() const { return num_modes_; }

    void set(const OccupationVector& occ, cplx amplitude) {
        check(occ);
        if (amplitude == cplx{}) {
            terms_.erase(occ);
        } else {
            terms_[occ] = amplitude;
        }
    }

    void add(const OccupationVector& occ, cplx amplitude) {
        check(occ);
        terms_[occ] += amplitude;
    }

    /// 0 for occupations not stored.
    cplx amplitude(const OccupationVector& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? cplx{} : it->second;
    }

    double norm2() const {
        double s = 0.0;
        for (const auto& [occ, amp] : terms_) {
            s += std::norm(amp);
        }
        return s;
    }

    /// Drop amplitudes with |amp| <= threshold (default: exact zeros only).
    void prune(double threshold = 0.0) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) <= threshold) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }

    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const std::map<OccupationVector, cplx>& terms() const { return terms_; }

  private:
    void check(const OccupationVector& occ) const {
        if (occ.num_modes() != num_modes_) {
            throw std::invalid_argument("occupation length does not match state mode count");
        }
    }

    int num_modes_ = 0;
    std::map<OccupationVector, cplx> terms_;
};

/// Single-mode signal specification: Fock state, photon-number-truncated
/// coherent state, or an explicit coefficient list gamma_0..gamma_cutoff.
class SingleModeInput {
  public:
    enum class Kind { Fock, Coherent, Custom };

    static SingleModeInput fock(int n) {
        if (n < 0) {
            throw std::invalid_argument("Fock index must be non-negative");
        }
        SingleModeInput in;
        in.kind_ = Kind::Fock;
        std::vector<cplx> g(static_cast<std::size_t>(n) + 1, cplx{});
        g.back() = 1.0;
        in.coefficients_ = std::move(g);
        return in;
    }

    /// Cutoff chosen so the dropped tail mass stays below 1e-12 for |alpha| <= 2.
    static int default_coherent_cutoff(cplx alpha) {
        double a = std::abs(alpha);
        return std::max(20, static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0)));
    }

    static SingleModeInput coherent(cplx alpha) {
        return coherent(alpha, default_coherent_cutoff(alpha));
    }

    static SingleModeInput coherent(cplx alpha, int cutoff) {
        if (cutoff < 0) {
            throw std::invalid_argument("coherent cutoff must be non-negative");
        }
        SingleModeInput in;
        in.kind_ = Kind::Coherent;
        in.alpha_ = alpha;
        std::vector<cplx> g(static_cast<std::size_t>(cutoff) + 1);
        // gamma_n = exp(-|a|^2/2) a^n / sqrt(n!), built up recursively.
        g[0] = std::exp(-0.5 * std::norm(alpha));
        for (int n = 1; n <= cutoff; ++n) {
            g[static_cast<std::size_t>(n)] =
                g[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(static_cast<double>(n));
        }
        in.coefficients_ = std::move(g);
        // Tail of the Poisson series beyond the cutoff, summed until it
        // stops contributing.
        double a2 = std::norm(alpha);
        double term = std::exp(-a2);
        for (int n = 1; n <= cutoff + 1; ++n) {
            term *= a2 / n;
        }
        double tail = 0.0;
        int n = cutoff + 1;
        while (term > 0.0) {
            tail += term;
            ++n;
            term *= a2 / n;
        }
        in.tail_mass_ = tail;
        return in;
    }

    static SingleModeInput custom(std::vector<cplx> coefficients) {
        bool any = false;
        for (const cplx& g : coefficients) {
            if (g != cplx{}) {
                any = true;
                break;
            }
        }
        if (!any) {
            throw std::invalid_argument("custom signal needs at least one nonzero coefficient");
        }
        SingleModeInput in;
        in.kind_ = Kind::Custom;
        in.coefficients_ = std::move(coefficients);
        return in;
    }

    Kind kind() const { return kind_; }
    cplx alpha() const { return alpha_; }
    int cutoff() const { return static_cast<int>(coefficients_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return coefficients_; }

    /// Probability mass dropped by the cutoff (nonzero only for coherent).
    double tail_mass() const { return tail_mass_; }

    double norm2() const {
        double s = 0.0;
        for (const cplx& g : coefficients_) {
            s += std::norm(g);
        }
        return s;
    }

  private:
    SingleModeInput() = default;

    Kind kind_ = Kind::Fock;
    cplx alpha_{};
    double tail_mass_ = 0.0;
    std::vector<cplx> coefficients_{1.0};
};

/// All occupations of `num_modes` modes carrying `total_photons` photons, in
/// ascending lexicographic order. Size is C(total+modes-1, modes-1).
inline std::vector<OccupationVector> enumerate_basis(int num_modes, int total_photons) {
    if (num_modes < 1) {
        throw std::invalid_argument("need at least one mode");
    }
    if (total_photons < 0) {
        throw std::invalid_argument("photon total must be non-negative");
    }
    std::vector<OccupationVector> basis;
    std::vector<int> occ(static_cast<std::size_t>(num_modes), 0);
    occ.back() = total_photons;
    for (;;) {
        basis.emplace_back(occ);
        if (occ.front() == total_photons) {
            break;
        }
        // Lexicographic successor: bump the rightmost position that still has
        // photons somewhere to its right, then pack the remainder at the end.
        int carry = 0;
        int i = num_modes - 1;
        for (; i >= 0; --i) {
            if (i < num_modes - 1 && carry > 0) {
                break;
            }
            carry += occ[static_cast<std::size_t>(i)];
            occ[static_cast<std::size_t>(i)] = 0;
        }
        occ[static_cast<std::size_t>(i)] += 1;
        occ.back() = carry - 1;
    }
    return basis;
}

/// Product input: the signal expansion on one mode (1-based index), Fock
/// ancillae on the rest in mode order.
inline StateVector make_input(const SingleModeInput& signal, const OccupationVector& ancilla,
                              int signal_mode_index) {
    const int num_modes = ancilla.num_modes() + 1;
    if (signal_mode_index < 1 || signal_mode_index > num_modes) {
        throw std::out_of_range("signal mode index out of range");
    }
    StateVector state(num_modes);
    const auto& gamma = signal.coefficients();
    for (int n = 0; n < static_cast<int>(gamma.size()); ++n) {
        const cplx g = gamma[static_cast<std::size_t>(n)];
        if (g == cplx{}) {
            continue;
        }
        std::vector<int> occ(static_cast<std::size_t>(num_modes));
        int a = 0;
        for (int m = 0; m < num_modes; ++m) {
            occ[static_cast<std::size_t>(m)] = (m == signal_mode_index - 1) ? n : ancilla[a++];
        }
        state.set(OccupationVector(std::move(occ)), g);
    }
    if (state.empty()) {
        throw std::invalid_argument("signal has no nonzero coefficients");
    }
    return state;
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_modes() != b.num_modes()) {
        throw std::invalid_argument("mode count mismatch");
    }
    const auto& small = a.term_count() <= b.term_count() ? a : b;
    const auto& large = a.term_count() <= b.term_count() ? b : a;
    cplx dot{};
    for (const auto& [occ, amp] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it != large.terms().end()) {
            dot += (&small == &a) ? std::conj(amp) * it->second : std::conj(it->second) * amp;
        }
    }
    return dot;
}

/// |<a|b>|^2 normalized by both norms; insensitive to scaling of either state.
inline double fidelity(const StateVector& a, const StateVector& b) {
    const double na = a.norm2();
    const double nb = b.norm2();
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("fidelity of a zero-norm state is undefined");
    }
    return std::norm(inner_product(a, b)) / (na * nb);
}

}  // namespace qtruncate
