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

#include <algorithm>
#include <set>
#include <utility>

#include "qtruncate/circuit.hpp"
#include "qtruncate/evolution.hpp"
#include "qtruncate/fock.hpp"

namespace qtruncate {

/// Detection total and ancilla total disagree: conditional truncation is only
/// defined when every input photon is accounted for by the detectors.
class SumMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Exact photon counts on the detected output modes. Mode 1 is the single
/// unmeasured output port.
struct DetectionPattern {
    std::vector<int> measured_modes;  // 1-based, distinct
    OccupationVector counts;          // one count per measured mode

    DetectionPattern() = default;
    DetectionPattern(std::vector<int> modes, OccupationVector counts)
        : measured_modes(std::move(modes)), counts(std::move(counts)) {}

    /// Detectors on modes 2..N in order.
    static DetectionPattern standard(const OccupationVector& counts) {
        std::vector<int> modes(static_cast<std::size_t>(counts.num_modes()));
        for (int i = 0; i < counts.num_modes(); ++i) {
            modes[static_cast<std::size_t>(i)] = i + 2;
        }
        return DetectionPattern(std::move(modes), counts);
    }

    int total() const { return counts.total(); }

    void validate(int num_modes) const {
        if (static_cast<int>(measured_modes.size()) != counts.num_modes()) {
            throw std::invalid_argument("detection counts and modes differ in length");
        }
        if (static_cast<int>(measured_modes.size()) != num_modes - 1) {
            throw std::invalid_argument("exactly one output mode must stay unmeasured");
        }
        std::set<int> seen;
        for (int m : measured_modes) {
            if (m < 2 || m > num_modes) {
                throw std::invalid_argument("measured modes must lie in 2..N");
            }
            if (!seen.insert(m).second) {
                throw std::invalid_argument("measured modes must be distinct");
            }
        }
    }
};

/// Which Fock components of the d-dimensional output should survive. The
/// complement of `kept` are the punched holes.
struct TargetPattern {
    int dimension = 1;
    std::set<int> kept{0};

    static TargetPattern truncation(int d) {
        TargetPattern t;
        t.dimension = d;
        t.kept.clear();
        for (int n = 0; n < d; ++n) {
            t.kept.insert(n);
        }
        t.validate();
        return t;
    }

    static TargetPattern punch(int d, const std::set<int>& holes) {
        TargetPattern t = truncation(d);
        for (int k : holes) {
            t.kept.erase(k);
        }
        t.validate();
        return t;
    }

    static TargetPattern fock_state(int d, int k) {
        TargetPattern t;
        t.dimension = d;
        t.kept = {k};
        t.validate();
        return t;
    }

    std::vector<int> holes() const {
        std::vector<int> h;
        for (int n = 0; n < dimension; ++n) {
            if (!kept.count(n)) {
                h.push_back(n);
            }
        }
        return h;
    }

    void validate() const {
        if (dimension < 1) {
            throw std::invalid_argument("target dimension must be positive");
        }
        if (kept.empty()) {
            throw std::invalid_argument("target must keep at least one component");
        }
        for (int n : kept) {
            if (n < 0 || n >= dimension) {
                throw std::invalid_argument("kept index outside 0..d-1");
            }
        }
    }
};

/// The conditional coefficients c_0..c_{d-1} scaling each surviving Fock
/// component, together with the device configuration they came from.
struct TruncationProfile {
    int d = 0;
    std::vector<cplx> c;
    Circuit circuit;
    OccupationVector ancilla;
    DetectionPattern detection;
};

/// Project the evolved state onto the detector outcome. Returns the
/// unnormalized single-mode state left on output mode 1 and the outcome
/// probability. An unreachable pattern gives probability 0 and an empty state.
inline std::pair<StateVector, double> project(const StateVector& evolved,
                                              const DetectionPattern& pattern) {
    pattern.validate(evolved.num_modes());
    StateVector reduced(1);
    double heralded = 0.0;
    for (const auto& [occ, amp] : evolved.terms()) {
        bool match = true;
        for (std::size_t k = 0; k < pattern.measured_modes.size(); ++k) {
            if (occ[pattern.measured_modes[k] - 1] != pattern.counts[static_cast<int>(k)]) {
                match = false;
                break;
            }
        }
        if (!match) {
            continue;
        }
        reduced.add(OccupationVector{occ[0]}, amp);
        heralded += std::norm(amp);
    }
    const double n2 = evolved.norm2();
    return {std::move(reduced), n2 > 0.0 ? heralded / n2 : 0.0};
}

namespace detail {

/// Profile coefficients straight from a scattering matrix; validation is the
/// caller's job.
inline std::vector<cplx> profile_from_scattering(const ScatteringMatrix& s,
                                                 const OccupationVector& ancilla,
                                                 const DetectionPattern& detection) {
    const int n_modes = s.size();
    const int d = ancilla.total() + 1;
    std::vector<int> in_base(static_cast<std::size_t>(n_modes), 0);
    for (int m = 0; m + 1 < n_modes; ++m) {
        in_base[static_cast<std::size_t>(m)] = ancilla[m];
    }
    std::vector<int> out_base(static_cast<std::size_t>(n_modes), 0);
    for (std::size_t k = 0; k < detection.measured_modes.size(); ++k) {
        out_base[static_cast<std::size_t>(detection.measured_modes[k] - 1)] =
            detection.counts[static_cast<int>(k)];
    }
    std::vector<cplx> c(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) {
        std::vector<int> in_occ = in_base;
        in_occ.back() = n;
        std::vector<int> out_occ = out_base;
        out_occ.front() = n;
        c[static_cast<std::size_t>(n)] = matrix_element(
            s, OccupationVector(std::move(out_occ)), OccupationVector(std::move(in_occ)));
    }
    return c;
}

}  // namespace detail

/// Conditional coefficients of the device: ancillae on modes 1..N-1, signal
/// on mode N, detectors on modes 2..N, output on mode 1. Computed through the
/// permanent engine one Fock component at a time.
inline TruncationProfile truncation_profile(const Circuit& circuit,
                                            const OccupationVector& ancilla,
                                            const DetectionPattern& detection) {
    const int n_modes = circuit.num_modes;
    if (ancilla.num_modes() != n_modes - 1) {
        throw std::invalid_argument("ancilla must cover all modes except the signal mode");
    }
    detection.validate(n_modes);
    if (detection.total() != ancilla.total()) {
        throw SumMismatch("detected photon total " + std::to_string(detection.total()) +
                          " does not match ancilla total " + std::to_string(ancilla.total()));
    }

    TruncationProfile profile;
    profile.d = ancilla.total() + 1;
    profile.circuit = circuit;
    profile.ancilla = ancilla;
    profile.detection = detection;
    profile.c = detail::profile_from_scattering(compile(circuit), ancilla, detection);
    return profile;
}

namespace detail {

inline double profile_fidelity_unchecked(const std::vector<cplx>& c, const std::set<int>& kept) {
    cplx kept_sum{};
    double norm2 = 0.0;
    for (const cplx& v : c) {
        norm2 += std::norm(v);
    }
    for (int n : kept) {
        kept_sum += c[static_cast<std::size_t>(n)];
    }
    const double den = norm2 * static_cast<double>(kept.size());
    return den > 0.0 ? std::norm(kept_sum) / den : 0.0;
}

}  // namespace detail

/// Overlap-squared of the profile with the kept-indicator direction, after the
/// optimal global phase. 1 exactly when c is a complex multiple of the
/// indicator, i.e. flat on kept indices and zero on holes.
inline double profile_fidelity(const TruncationProfile& profile, const TargetPattern& target) {
    target.validate();
    if (profile.d != target.dimension) {
        throw std::invalid_argument("profile and target dimensions differ");
    }
    bool all_zero = true;
    for (const cplx& v : profile.c) {
        if (v != cplx{}) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        throw std::invalid_argument("profile is identically zero");
    }
    return detail::profile_fidelity_unchecked(profile.c, target.kept);
}

namespace detail {

inline double success_probability_from(const std::vector<cplx>& c,
                                       const SingleModeInput& signal) {
    const auto& gamma = signal.coefficients();
    double p = 0.0;
    const std::size_t limit = std::min(c.size(), gamma.size());
    for (std::size_t n = 0; n < limit; ++n) {
        p += std::norm(gamma[n] * c[n]);
    }
    return p / signal.norm2();
}

}  // namespace detail

/// Probability of the heralding outcome for a signal with coefficients
/// gamma_n: sum_n |gamma_n c_n|^2 for the normalized signal. Agrees with
/// project() on a full simulation whenever the device truncates hard.
inline double success_probability(const TruncationProfile& profile,
                                  const SingleModeInput& signal) {
    return detail::success_probability_from(profile.c, signal);
}

/// Heralded output state: amplitude gamma_n * c_n on |n>, plus its fidelity
/// against the ideal kept-component superposition sum_kept gamma_n |n>.
inline std::pair<StateVector, double> output_state(const TruncationProfile& profile,
                                                   const SingleModeInput& signal,
                                                   const TargetPattern& target) {
    target.validate();
    if (profile.d != target.dimension) {
        throw std::invalid_argument("profile and target dimensions differ");
    }
    const auto& gamma = signal.coefficients();
    StateVector state(1);
    const int limit = std::min<int>(profile.d, static_cast<int>(gamma.size()));
    for (int n = 0; n < limit; ++n) {
        state.set(OccupationVector{n},
                  gamma[static_cast<std::size_t>(n)] * profile.c[static_cast<std::size_t>(n)]);
    }
    if (state.empty()) {
        throw std::invalid_argument("heralding impossible: every output component vanishes");
    }
    StateVector ideal(1);
    for (int n : target.kept) {
        if (n < static_cast<int>(gamma.size())) {
            ideal.set(OccupationVector{n}, gamma[static_cast<std::size_t>(n)]);
        }
    }
    // A signal with no support on the kept components has nothing to be
    // faithful to; report zero fidelity rather than failing.
    const double f = ideal.empty() ? 0.0 : fidelity(state, ideal);
    return {std::move(state), f};
}

}  // namespace qtruncate
