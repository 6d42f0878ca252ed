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
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtruncate/fock.hpp"

namespace qtruncate {

/// Dense square complex matrix, row-major. Sized for interferometers, not BLAS.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 1.0;
        }
        return m;
    }

    int size() const { return n_; }

    cplx& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const cplx& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    Matrix operator*(const Matrix& rhs) const {
        if (n_ != rhs.n_) {
            throw std::invalid_argument("matrix size mismatch");
        }
        Matrix out(n_);
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < n_; ++k) {
                const cplx a = at(i, k);
                if (a == cplx{}) {
                    continue;
                }
                for (int j = 0; j < n_; ++j) {
                    out.at(i, j) += a * rhs.at(k, j);
                }
            }
        }
        return out;
    }

    Matrix adjoint() const {
        Matrix out(n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                out.at(i, j) = std::conj(at(j, i));
            }
        }
        return out;
    }

    /// max_ij |(S^dag S - I)_ij|
    double unitarity_defect() const {
        Matrix g = adjoint() * (*this);
        double worst = 0.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                worst = std::max(worst, std::abs(g.at(i, j) - (i == j ? cplx{1.0} : cplx{})));
            }
        }
        return worst;
    }

  private:
    int n_ = 0;
    std::vector<cplx> e_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("matrix size mismatch");
    }
    double worst = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

/// N x N unitary relating output to input mode operators, b = S a.
using ScatteringMatrix = Matrix;

/// One passive optical element. Beam splitters act on an ordered mode pair
/// (a, b) as the real block [t, r; -r, t] with t = +sqrt(t2), r = +sqrt(1-t2);
/// phase shifters multiply one mode by e^{i xi}. Mode indices are 1-based.
struct Element {
    enum class Kind { BeamSplitter, PhaseShifter };

    Kind kind = Kind::BeamSplitter;
    int mode_a = 1;
    int mode_b = 2;     // unused for phase shifters
    double value = 1.0; // t2 for beam splitters, xi for phase shifters
    std::string label;

    static Element beam_splitter(int mode_a, int mode_b, double t2, std::string label = {}) {
        Element e;
        e.kind = Kind::BeamSplitter;
        e.mode_a = mode_a;
        e.mode_b = mode_b;
        e.value = t2;
        e.label = std::move(label);
        return e;
    }

    static Element phase_shifter(int mode, double xi, std::string label = {}) {
        Element e;
        e.kind = Kind::PhaseShifter;
        e.mode_a = mode;
        e.mode_b = mode;
        // Phases live on [0, 2*pi).
        double x = std::fmod(xi, 2.0 * std::numbers::pi);
        if (x < 0.0) {
            x += 2.0 * std::numbers::pi;
        }
        e.value = x;
        e.label = std::move(label);
        return e;
    }

    void validate(int num_modes) const {
        if (kind == Kind::BeamSplitter) {
            if (mode_a == mode_b) {
                throw std::invalid_argument("beam splitter modes must be distinct: " + label);
            }
            if (mode_a < 1 || mode_a > num_modes || mode_b < 1 || mode_b > num_modes) {
                throw std::invalid_argument("beam splitter mode out of range: " + label);
            }
            if (!(value >= 0.0 && value <= 1.0)) {
                throw std::invalid_argument("transmittance t2 must lie in [0, 1]: " + label);
            }
        } else {
            if (mode_a < 1 || mode_a > num_modes) {
                throw std::invalid_argument("phase shifter mode out of range: " + label);
            }
        }
    }
};

/// Ordered element list on a fixed number of modes. Elements apply
/// first-to-last; compile() left-multiplies accordingly.
struct Circuit {
    int num_modes = 0;
    std::vector<Element> elements;

    Circuit() = default;
    Circuit(int num_modes, std::vector<Element> elements)
        : num_modes(num_modes), elements(std::move(elements)) {
        validate();
    }

    void validate() const {
        if (num_modes < 1) {
            throw std::invalid_argument("circuit needs at least one mode");
        }
        for (const Element& e : elements) {
            e.validate(num_modes);
        }
    }
};

inline Matrix element_matrix(const Element& e, int num_modes) {
    Matrix m = Matrix::identity(num_modes);
    if (e.kind == Element::Kind::BeamSplitter) {
        const double t = std::sqrt(e.value);
        const double r = std::sqrt(1.0 - e.value);
        const int a = e.mode_a - 1;
        const int b = e.mode_b - 1;
        m.at(a, a) = t;
        m.at(a, b) = r;
        m.at(b, a) = -r;
        m.at(b, b) = t;
    } else {
        m.at(e.mode_a - 1, e.mode_a - 1) = std::polar(1.0, e.value);
    }
    return m;
}

/// Product of the element matrices in application order. Each element only
/// touches its own rows, so the product is applied as in-place row updates.
inline ScatteringMatrix compile(const Circuit& circuit) {
    circuit.validate();
    const int n = circuit.num_modes;
    Matrix s = Matrix::identity(n);
    for (const Element& e : circuit.elements) {
        if (e.kind == Element::Kind::BeamSplitter) {
            const double t = std::sqrt(e.value);
            const double r = std::sqrt(1.0 - e.value);
            const int a = e.mode_a - 1;
            const int b = e.mode_b - 1;
            for (int j = 0; j < n; ++j) {
                const cplx sa = s.at(a, j);
                const cplx sb = s.at(b, j);
                s.at(a, j) = t * sa + r * sb;
                s.at(b, j) = -r * sa + t * sb;
            }
        } else {
            const cplx phase = std::polar(1.0, e.value);
            const int m = e.mode_a - 1;
            for (int j = 0; j < n; ++j) {
                s.at(m, j) *= phase;
            }
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Presets.
//
// The six-port device mixes one ancilla pair, then mixes the signal in:
//   P1(2) B1(1,2), P4(3) B4(2,3)            modes: out=1, detector=2, signal=3
//
// The eight-port family routes the signal (mode 4) into the detected modes
// while output mode 1 is formed from modes 1..3 only, so S_14 vanishes
// identically: there is no direct signal-to-output path. Wirings differ in
// which pair the middle splitters couple and where each phase sits:
//   qsd8        P_i before B_i on the higher-indexed mode of its pair
//   qsd8-alt-1  P_i on the lower-indexed mode of its pair
//   qsd8-alt-2  B3 couples (3,4) and B5 couples (2,3)
//   qsd8-alt-3  B2 reflected: block placed on (3,1) instead of (1,3)
// ---------------------------------------------------------------------------

namespace detail {

/// One P_i + B_i pair of a preset. `index` carries the eight-port element
/// numbering (the six-port keeps B1/B4 from the full device), so labels
/// read P1/B1, P4/B4, ...
struct PresetStage {
    int index;
    int ps_mode;
    int bs_a;
    int bs_b;
};

struct PresetDef {
    std::string_view name;
    int num_modes;
    std::vector<PresetStage> stages;
};

inline const std::vector<PresetDef>& preset_table() {
    static const std::vector<PresetDef> table = {
        {"qsd6", 3, {{1, 2, 1, 2}, {4, 3, 2, 3}}},
        {"qsd8", 4, {{1, 2, 1, 2}, {2, 3, 1, 3}, {3, 3, 2, 3}, {4, 4, 2, 4}, {5, 4, 3, 4}}},
        {"qsd8-alt-1", 4, {{1, 1, 1, 2}, {2, 1, 1, 3}, {3, 2, 2, 3}, {4, 2, 2, 4}, {5, 3, 3, 4}}},
        {"qsd8-alt-2", 4, {{1, 2, 1, 2}, {2, 3, 1, 3}, {3, 4, 3, 4}, {4, 4, 2, 4}, {5, 3, 2, 3}}},
        {"qsd8-alt-3", 4, {{1, 2, 1, 2}, {2, 3, 3, 1}, {3, 3, 2, 3}, {4, 4, 2, 4}, {5, 4, 3, 4}}},
    };
    return table;
}

inline const PresetDef& find_preset(std::string_view name) {
    for (const PresetDef& def : preset_table()) {
        if (def.name == name) {
            return def;
        }
    }
    throw std::invalid_argument("unknown preset: " + std::string(name));
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& def : detail::preset_table()) {
        names.emplace_back(def.name);
    }
    return names;
}

inline bool is_preset(std::string_view name) {
    for (const auto& def : detail::preset_table()) {
        if (def.name == name) {
            return true;
        }
    }
    return false;
}

/// Number of (t2, xi) parameter slots a preset expects.
inline int preset_arity(std::string_view name) {
    return static_cast<int>(detail::find_preset(name).stages.size());
}

inline int preset_modes(std::string_view name) { return detail::find_preset(name).num_modes; }

/// Scattering matrix of a named device without building the element list;
/// same arithmetic as compile(preset(...)).
inline ScatteringMatrix preset_scattering(std::string_view name, std::span<const double> t2,
                                          std::span<const double> xi) {
    const detail::PresetDef& def = detail::find_preset(name);
    if (t2.size() != def.stages.size() || xi.size() != def.stages.size()) {
        throw std::invalid_argument("preset " + std::string(name) + " expects " +
                                    std::to_string(def.stages.size()) +
                                    " transmittances and phases");
    }
    const int n = def.num_modes;
    Matrix s = Matrix::identity(n);
    for (std::size_t k = 0; k < def.stages.size(); ++k) {
        const auto& st = def.stages[k];
        // Same reduction as Element::phase_shifter, so this path stays
        // bit-identical to compile(preset(...)).
        double x = std::fmod(xi[k], 2.0 * std::numbers::pi);
        if (x < 0.0) {
            x += 2.0 * std::numbers::pi;
        }
        const cplx phase = std::polar(1.0, x);
        const int m = st.ps_mode - 1;
        for (int j = 0; j < n; ++j) {
            s.at(m, j) *= phase;
        }
        if (!(t2[k] >= 0.0 && t2[k] <= 1.0)) {
            throw std::invalid_argument("transmittance t2 must lie in [0, 1]");
        }
        const double t = std::sqrt(t2[k]);
        const double r = std::sqrt(1.0 - t2[k]);
        const int a = st.bs_a - 1;
        const int b = st.bs_b - 1;
        for (int j = 0; j < n; ++j) {
            const cplx sa = s.at(a, j);
            const cplx sb = s.at(b, j);
            s.at(a, j) = t * sa + r * sb;
            s.at(b, j) = -r * sa + t * sb;
        }
    }
    return s;
}

/// Instantiate a named device. `t2` and `xi` supply one value per stage, in
/// stage order (qsd6: B1,B4; eight-port: B1..B5).
inline Circuit preset(std::string_view name, std::span<const double> t2,
                      std::span<const double> xi) {
    const detail::PresetDef& def = detail::find_preset(name);
    const std::size_t arity = def.stages.size();
    if (t2.size() != arity || xi.size() != arity) {
        throw std::invalid_argument("preset " + std::string(name) + " expects " +
                                    std::to_string(arity) + " transmittances and phases");
    }
    Circuit c;
    c.num_modes = def.num_modes;
    for (std::size_t k = 0; k < arity; ++k) {
        const auto& st = def.stages[k];
        c.elements.push_back(
            Element::phase_shifter(st.ps_mode, xi[k], "P" + std::to_string(st.index)));
        c.elements.push_back(
            Element::beam_splitter(st.bs_a, st.bs_b, t2[k], "B" + std::to_string(st.index)));
    }
    c.validate();
    return c;
}

}  // namespace qtruncate
