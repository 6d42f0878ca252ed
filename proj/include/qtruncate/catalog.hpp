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

#include <string>
#include <vector>

#include "qtruncate/conditioning.hpp"
#include "qtruncate/exact.hpp"
#include "qtruncate/fock.hpp"

namespace qtruncate {

/// A published device setting: preset parameters plus the ancilla/detection
/// configuration and the output pattern it is supposed to realize. Parameter
/// values are kept as exact literals and evaluated once in double precision.
struct CatalogEntry {
    std::string name;
    std::string preset;  // "qsd6" or the eight-port family
    OccupationVector ancilla;
    OccupationVector detection;  // counts on modes 2..N
    std::vector<std::string> t2_exact;
    std::vector<std::string> xi_exact;
    std::vector<double> t2;
    std::vector<double> xi;
    TargetPattern target;
    std::string note;
};

namespace detail {

inline CatalogEntry make_entry(std::string name, std::string preset, OccupationVector ancilla,
                               OccupationVector detection, std::vector<std::string> t2_exact,
                               std::vector<std::string> xi_exact, TargetPattern target,
                               std::string note) {
    CatalogEntry e;
    e.name = std::move(name);
    e.preset = std::move(preset);
    e.ancilla = std::move(ancilla);
    e.detection = std::move(detection);
    e.t2_exact = std::move(t2_exact);
    e.xi_exact = std::move(xi_exact);
    for (const std::string& s : e.t2_exact) {
        e.t2.push_back(parse_exact(s));
    }
    for (const std::string& s : e.xi_exact) {
        e.xi.push_back(parse_exact(s));
    }
    e.target = target;
    e.note = std::move(note);
    return e;
}

}  // namespace detail

/// Every published parameter set for the six-port and eight-port devices.
inline const std::vector<CatalogEntry>& catalog() {
    using detail::make_entry;
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;

        // Six-port truncation to two levels; the probability-optimal setting.
        v.push_back(make_entry("d2-opt", "qsd6", {1, 0}, {1, 0}, {"1/2", "1/2"}, {"0", "pi"},
                               TargetPattern::truncation(2),
                               "two-level truncation, maximum success probability"));

        // Six-port truncation to three levels; four settings share the
        // maximal success probability.
        v.push_back(make_entry("d3-sol1", "qsd6", {1, 1}, {1, 1},
                               {"(3-sqrt(3))/6", "(3-sqrt(3))/6"}, {"0", "0"},
                               TargetPattern::truncation(3), "three-level truncation"));
        v.push_back(make_entry("d3-sol2", "qsd6", {1, 1}, {1, 1},
                               {"(3+sqrt(3))/6", "(3+sqrt(3))/6"}, {"0", "0"},
                               TargetPattern::truncation(3), "three-level truncation"));
        v.push_back(make_entry("d3-sol3", "qsd6", {1, 1}, {1, 1},
                               {"(3-sqrt(3))/6", "(3+sqrt(3))/6"}, {"0", "pi"},
                               TargetPattern::truncation(3), "three-level truncation"));
        v.push_back(make_entry("d3-sol4", "qsd6", {1, 1}, {1, 1},
                               {"(3+sqrt(3))/6", "(3-sqrt(3))/6"}, {"0", "pi"},
                               TargetPattern::truncation(3), "three-level truncation"));

        // Eight-port truncation to four levels.
        v.push_back(make_entry("d4-simple", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"1/3", "1/4", "1", "1/3", "1/2"}, {"0", "0", "0", "0", "pi/2"},
                               TargetPattern::truncation(4), "four-level truncation"));

        // Eight-port truncation to five levels; transmittances known only to
        // three decimals, so exact reproduction is out of reach by design.
        v.push_back(make_entry("d5-numeric", "qsd8", {1, 2, 1}, {1, 2, 1},
                               {"0.305", "0.388", "1", "0.817", "0.184"},
                               {"0", "0", "0", "pi", "0"}, TargetPattern::truncation(5),
                               "five-level truncation, numerically found setting"));

        // Punched four-level outputs: holes at selected indices.
        v.push_back(make_entry("punch-01x3", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"(7+sqrt(21))/14", "1/3", "1", "1/2", "(5-sqrt(5))/10"},
                               {"0", "0", "0", "0", "0"}, TargetPattern::punch(4, {2}),
                               "hole at n=2"));
        v.push_back(make_entry("punch-x123", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"(7+sqrt(21))/14", "1/3", "1", "1/2", "(2-sqrt(2))/4"},
                               {"0", "0", "0", "0", "0"}, TargetPattern::punch(4, {0}),
                               "hole at n=0"));
        v.push_back(make_entry("punch-0x2x", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"1", "1/2", "1", "1", "1/2"}, {"0", "0", "0", "0", "0"},
                               TargetPattern::punch(4, {1, 3}), "two-state superposition, n=0 and 2"));
        v.push_back(make_entry("punch-x1x3", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"1/2", "(3-sqrt(3))/3", "1", "(3-sqrt(3))/3", "1/2"},
                               {"0", "0", "0", "0", "0"}, TargetPattern::punch(4, {0, 2}),
                               "two-state superposition, n=1 and 3; one-parameter family"));
        v.push_back(make_entry("punch-0xx3", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"(1-sqrt(5/133))/2", "1/2", "1", "1/6", "(1+3*sqrt(3/155))/2"},
                               {"0", "0", "0", "0", "0"}, TargetPattern::punch(4, {1, 2}),
                               "two-state superposition, n=0 and 3"));

        // Single Fock components synthesized from the four-level process.
        v.push_back(make_entry("fock-2", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"1", "1/2", "1/3", "1/2", "1"}, {"0", "0", "0", "0", "0"},
                               TargetPattern::fock_state(4, 2), "two-photon Fock output"));
        v.push_back(make_entry("fock-3", "qsd8", {1, 1, 1}, {1, 1, 1},
                               {"1/2", "1/2", "1", "1/2", "1/2"}, {"0", "0", "0", "0", "pi/2"},
                               TargetPattern::fock_state(4, 3), "three-photon Fock output"));
        return v;
    }();
    return entries;
}

inline const CatalogEntry& catalog_entry(std::string_view name) {
    for (const CatalogEntry& e : catalog()) {
        if (e.name == name) {
            return e;
        }
    }
    throw std::invalid_argument("unknown catalog entry: " + std::string(name));
}

}  // namespace qtruncate
