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

#include <fstream>
#include <string>

#include <json.hpp>

#include "qtruncate/circuit.hpp"
#include "qtruncate/exact.hpp"

namespace qtruncate {

// Circuit file schema:
//   {"modes": N,
//    "elements": [{"type": "bs", "modes": [a, b], "t2": x, "label": "B1"},
//                 {"type": "ps", "mode": m, "xi": x, "label": "P1"}, ...]}
// Mode indices are 1-based. "t2" and "xi" accept numbers or exact literals
// such as "pi/2" and "(3-sqrt(3))/6".

using json = nlohmann::ordered_json;

namespace detail {

inline double number_field(const json& j, const std::string& context) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        try {
            return parse_exact(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(context + ": " + e.what());
        }
    }
    throw std::invalid_argument(context + ": expected a number or exact literal");
}

}  // namespace detail

inline json circuit_to_json(const Circuit& circuit) {
    json j;
    j["modes"] = circuit.num_modes;
    j["elements"] = json::array();
    for (const Element& e : circuit.elements) {
        json ej;
        if (e.kind == Element::Kind::BeamSplitter) {
            ej["type"] = "bs";
            ej["modes"] = {e.mode_a, e.mode_b};
            ej["t2"] = e.value;
        } else {
            ej["type"] = "ps";
            ej["mode"] = e.mode_a;
            ej["xi"] = e.value;
        }
        if (!e.label.empty()) {
            ej["label"] = e.label;
        }
        j["elements"].push_back(std::move(ej));
    }
    return j;
}

inline Circuit circuit_from_json(const json& j) {
    if (!j.is_object() || !j.contains("modes") || !j.contains("elements")) {
        throw std::invalid_argument("circuit: expected an object with \"modes\" and \"elements\"");
    }
    if (!j["modes"].is_number_integer()) {
        throw std::invalid_argument("circuit.modes: expected an integer");
    }
    Circuit circuit;
    circuit.num_modes = j["modes"].get<int>();
    if (!j["elements"].is_array()) {
        throw std::invalid_argument("circuit.elements: expected an array");
    }
    int index = 0;
    for (const json& ej : j["elements"]) {
        const std::string context = "elements[" + std::to_string(index++) + "]";
        if (!ej.is_object() || !ej.contains("type")) {
            throw std::invalid_argument(context + ": expected an object with \"type\"");
        }
        const std::string type = ej["type"].get<std::string>();
        std::string label = ej.value("label", std::string{});
        if (type == "bs") {
            if (!ej.contains("modes") || !ej["modes"].is_array() || ej["modes"].size() != 2) {
                throw std::invalid_argument(context + ".modes: expected a pair of mode indices");
            }
            if (!ej.contains("t2")) {
                throw std::invalid_argument(context + ": beam splitter needs \"t2\"");
            }
            circuit.elements.push_back(
                Element::beam_splitter(ej["modes"][0].get<int>(), ej["modes"][1].get<int>(),
                                       detail::number_field(ej["t2"], context + ".t2"), label));
        } else if (type == "ps") {
            if (!ej.contains("mode") || !ej["mode"].is_number_integer()) {
                throw std::invalid_argument(context + ".mode: expected a mode index");
            }
            if (!ej.contains("xi")) {
                throw std::invalid_argument(context + ": phase shifter needs \"xi\"");
            }
            circuit.elements.push_back(Element::phase_shifter(
                ej["mode"].get<int>(), detail::number_field(ej["xi"], context + ".xi"), label));
        } else {
            throw std::invalid_argument(context + ".type: expected \"bs\" or \"ps\"");
        }
    }
    circuit.validate();
    return circuit;
}

inline Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    try {
        return circuit_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline void save_circuit_file(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write circuit file: " + path);
    }
    out << circuit_to_json(circuit).dump(2) << '\n';
}

}  // namespace qtruncate
