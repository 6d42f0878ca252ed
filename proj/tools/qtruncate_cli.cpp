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

// Command-line front end: simulate / verify / optimize / sweep.
// Exit codes: 0 success, 1 configuration or parse error, 2 verification or
// optimization failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qtruncate/qtruncate.hpp"

namespace {

using namespace qtruncate;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFailure = 2;

// ---------------------------------------------------------------------------
// Small parsing helpers.
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::vector<double> parse_exact_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) {
        values.push_back(parse_exact(part));
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (const std::string& part : split(text, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(part, &used);
        if (used != part.size()) {
            throw std::invalid_argument("bad integer list entry: " + part);
        }
        values.push_back(v);
    }
    return values;
}

TargetPattern parse_target(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.empty()) {
        throw std::invalid_argument("empty target spec");
    }
    if (parts[0] == "trunc" && parts.size() == 2) {
        return TargetPattern::truncation(std::stoi(parts[1]));
    }
    if (parts[0] == "punch" && parts.size() == 3) {
        std::set<int> holes;
        for (int k : parse_int_list(parts[2])) {
            holes.insert(k);
        }
        return TargetPattern::punch(std::stoi(parts[1]), holes);
    }
    if (parts[0] == "fock" && parts.size() == 3) {
        return TargetPattern::fock_state(std::stoi(parts[1]), std::stoi(parts[2]));
    }
    throw std::invalid_argument("bad target spec \"" + text +
                                "\" (use trunc:D, punch:D:K1,K2 or fock:D:K)");
}

SingleModeInput parse_signal(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.empty()) {
        throw std::invalid_argument("empty signal spec");
    }
    if (parts[0] == "coherent" && (parts.size() == 2 || parts.size() == 3)) {
        const double alpha = parse_exact(parts[1]);
        if (parts.size() == 3) {
            return SingleModeInput::coherent(alpha, std::stoi(parts[2]));
        }
        return SingleModeInput::coherent(alpha);
    }
    if (parts[0] == "fock" && parts.size() == 2) {
        return SingleModeInput::fock(std::stoi(parts[1]));
    }
    if (parts[0] == "custom" && parts.size() == 2) {
        std::ifstream in(parts[1]);
        if (!in) {
            throw std::invalid_argument("cannot open signal file: " + parts[1]);
        }
        json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(parts[1] + ": " + e.what());
        }
        if (!j.is_array()) {
            throw std::invalid_argument(parts[1] + ": expected a JSON array of coefficients");
        }
        std::vector<cplx> gamma;
        for (const json& v : j) {
            if (v.is_array() && v.size() == 2) {
                gamma.emplace_back(v[0].get<double>(), v[1].get<double>());
            } else if (v.is_number()) {
                gamma.emplace_back(v.get<double>(), 0.0);
            } else if (v.is_string()) {
                gamma.emplace_back(parse_exact(v.get<std::string>()), 0.0);
            } else {
                throw std::invalid_argument(parts[1] + ": coefficients must be numbers or [re,im]");
            }
        }
        return SingleModeInput::custom(std::move(gamma));
    }
    throw std::invalid_argument("bad signal spec \"" + text +
                                "\" (use coherent:ALPHA[:CUTOFF], fock:K or custom:FILE)");
}

// ---------------------------------------------------------------------------
// JSON emission, fixed to 12 significant digits.
// ---------------------------------------------------------------------------

json num(double v) { return round_sig12(v); }

json cplx_json(const cplx& z) { return json::array({num(z.real()), num(z.imag())}); }

json vector_json(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) {
        out.push_back(num(x));
    }
    return out;
}

json profile_json(const TruncationProfile& p) {
    json c = json::array();
    for (const cplx& v : p.c) {
        c.push_back(cplx_json(v));
    }
    return json{{"d", p.d}, {"c", std::move(c)}};
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) {
            row.push_back(cplx_json(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json target_json(const TargetPattern& t) {
    json kept = json::array();
    for (int n : t.kept) {
        kept.push_back(n);
    }
    return json{{"dimension", t.dimension}, {"kept", std::move(kept)}};
}

json signal_json(const SingleModeInput& s) {
    json j;
    switch (s.kind()) {
        case SingleModeInput::Kind::Fock:
            j["kind"] = "fock";
            j["n"] = s.cutoff();
            break;
        case SingleModeInput::Kind::Coherent:
            j["kind"] = "coherent";
            j["alpha"] = cplx_json(s.alpha());
            j["cutoff"] = s.cutoff();
            j["tail_mass"] = num(s.tail_mass());
            break;
        case SingleModeInput::Kind::Custom: {
            j["kind"] = "custom";
            json g = json::array();
            for (const cplx& v : s.coefficients()) {
                g.push_back(cplx_json(v));
            }
            j["coefficients"] = std::move(g);
            break;
        }
    }
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::invalid_argument("cannot write output file: " + out_path);
        }
        out << text << '\n';
    }
}

// ---------------------------------------------------------------------------
// Shared options.
// ---------------------------------------------------------------------------

struct DeviceOptions {
    std::string circuit_file;
    std::string preset_name;
    std::string t2_list;
    std::string xi_list;
    std::string ancilla_list;
    std::string detect_list;

    void add_to(CLI::App& cmd, bool with_circuit_file = true) {
        if (with_circuit_file) {
            cmd.add_option("--circuit", circuit_file, "circuit description file (JSON)");
        }
        cmd.add_option("--preset", preset_name, "device preset (qsd6, qsd8, qsd8-alt-<k>)");
        cmd.add_option("--t2", t2_list, "comma-separated transmittances (exact literals allowed)");
        cmd.add_option("--xi", xi_list, "comma-separated phases (exact literals allowed)");
        cmd.add_option("--ancilla", ancilla_list, "ancilla photon counts on modes 1..N-1");
        cmd.add_option("--detect", detect_list, "detector counts on modes 2..N");
    }

    Circuit build_circuit(json* desc = nullptr) const {
        if (!circuit_file.empty() && !preset_name.empty()) {
            throw std::invalid_argument("give either --circuit or --preset, not both");
        }
        if (!circuit_file.empty()) {
            const Circuit c = load_circuit_file(circuit_file);
            if (desc) {
                (*desc)["file"] = circuit_file;
                (*desc)["modes"] = c.num_modes;
            }
            return c;
        }
        if (preset_name.empty()) {
            throw std::invalid_argument("a circuit is required: --circuit FILE or --preset NAME");
        }
        const int arity = preset_arity(preset_name);
        std::vector<double> t2(static_cast<std::size_t>(arity), 1.0);
        std::vector<double> xi(static_cast<std::size_t>(arity), 0.0);
        if (!t2_list.empty()) {
            t2 = parse_exact_list(t2_list);
        }
        if (!xi_list.empty()) {
            xi = parse_exact_list(xi_list);
        }
        const Circuit c = preset(preset_name, t2, xi);
        if (desc) {
            (*desc)["preset"] = preset_name;
            (*desc)["modes"] = c.num_modes;
            (*desc)["t2"] = vector_json(t2);
            (*desc)["xi"] = vector_json(xi);
        }
        return c;
    }

    /// Canonical demo configuration per device when none is given.
    OccupationVector ancilla_or_default(int num_modes) const {
        if (!ancilla_list.empty()) {
            return OccupationVector(parse_int_list(ancilla_list));
        }
        if (preset_name == "qsd6") {
            return OccupationVector{1, 0};
        }
        if (!preset_name.empty()) {
            return OccupationVector(std::vector<int>(static_cast<std::size_t>(num_modes - 1), 1));
        }
        throw std::invalid_argument("--ancilla is required with --circuit");
    }

    OccupationVector detect_or_default(const OccupationVector& ancilla) const {
        if (!detect_list.empty()) {
            return OccupationVector(parse_int_list(detect_list));
        }
        return ancilla;
    }
};

int env_threads() {
    if (const char* v = std::getenv("QTRUNCATE_THREADS")) {
        const int n = std::atoi(v);
        if (n >= 1) {
            return n;
        }
    }
    return 1;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
    DeviceOptions device;
    std::string signal_spec = "coherent:1";
    std::string target_spec;
    std::string out_path;
};

int cmd_simulate(const SimulateOptions& opt) {
    json circuit_desc;
    const Circuit circuit = opt.device.build_circuit(&circuit_desc);
    const OccupationVector ancilla = opt.device.ancilla_or_default(circuit.num_modes);
    const OccupationVector detection = opt.device.detect_or_default(ancilla);
    const SingleModeInput signal = parse_signal(opt.signal_spec);

    const TruncationProfile profile =
        truncation_profile(circuit, ancilla, DetectionPattern::standard(detection));
    const TargetPattern target = opt.target_spec.empty()
                                     ? TargetPattern::truncation(profile.d)
                                     : parse_target(opt.target_spec);
    if (target.dimension != profile.d) {
        throw std::invalid_argument("target dimension " + std::to_string(target.dimension) +
                                    " does not match the device dimension " +
                                    std::to_string(profile.d));
    }

    json out;
    out["command"] = "simulate";
    out["circuit"] = std::move(circuit_desc);
    out["ancilla"] = ancilla.counts();
    out["detection"] = detection.counts();
    out["signal"] = signal_json(signal);
    out["target"] = target_json(target);
    out["scattering_matrix"] = matrix_json(compile(circuit));
    out["profile"] = profile_json(profile);

    const double probability = success_probability(profile, signal);
    out["success_probability"] = num(probability);

    bool zero_profile = true;
    for (const cplx& v : profile.c) {
        if (v != cplx{}) {
            zero_profile = false;
        }
    }
    out["profile_fidelity"] = zero_profile ? json() : json(num(profile_fidelity(profile, target)));

    if (probability > 0.0) {
        const auto [state, ideal] = output_state(profile, signal, target);
        json amps = json::array();
        for (int n = 0; n < profile.d; ++n) {
            amps.push_back(cplx_json(state.amplitude(OccupationVector{n})));
        }
        out["output_state"] = json{{"amplitudes", std::move(amps)}, {"norm2", num(state.norm2())}};
        out["ideal_fidelity"] = num(ideal);
    } else {
        // The heralding pattern can never fire for this signal.
        out["output_state"] = json();
        out["ideal_fidelity"] = json();
    }

    emit(out.dump(2), opt.out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string wirings_list;
    std::string entries_list;
    std::string format = "table";
    std::string out_path;
};

int cmd_verify(const VerifyOptions& opt) {
    std::vector<std::string> wirings = default_wirings();
    if (!opt.wirings_list.empty()) {
        wirings = split(opt.wirings_list, ',');
        for (const std::string& w : wirings) {
            if (!is_preset(w)) {
                throw std::invalid_argument("unknown wiring: " + w);
            }
        }
    }
    std::vector<CatalogEntry> entries;
    if (opt.entries_list.empty()) {
        entries = catalog();
    } else {
        for (const std::string& name : split(opt.entries_list, ',')) {
            entries.push_back(catalog_entry(name));
        }
    }

    const VerifyReport report = verify_catalog(wirings, entries);

    json out;
    out["command"] = "verify";
    out["wirings"] = wirings;
    json checks = json::array();
    for (const CatalogCheck& c : report.checks) {
        json profile = json::array();
        for (const cplx& v : c.profile) {
            profile.push_back(cplx_json(v));
        }
        checks.push_back(json{{"entry", c.entry},
                              {"wiring", c.wiring},
                              {"fidelity", num(c.fidelity)},
                              {"probability", num(c.probability)},
                              {"profile", std::move(profile)},
                              {"status", c.status}});
    }
    out["checks"] = std::move(checks);
    out["six_port_reproduced"] = report.six_port_reproduced;

    if (opt.format == "json") {
        emit(out.dump(2), opt.out_path);
    } else {
        std::ostringstream table;
        table << "entry         wiring        fidelity            probability         status\n";
        table << "------------  ------------  ------------------  ------------------  ----------\n";
        for (const CatalogCheck& c : report.checks) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-12s  %-12s  %-18s  %-18s  %s", c.entry.c_str(),
                          c.wiring.c_str(), format_sig12(c.fidelity).c_str(),
                          format_sig12(c.probability).c_str(), c.status.c_str());
            table << line << '\n';
        }
        table << "six-port entries reproduced: " << (report.six_port_reproduced ? "yes" : "no");
        std::cout << table.str() << '\n';
        if (!opt.out_path.empty()) {
            emit(out.dump(2), opt.out_path);  // JSON next to the table
        }
    }
    return report.six_port_reproduced ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

struct OptimizeOptions {
    std::string preset_name = "qsd8";
    std::string target_spec;
    std::string t2_list;
    std::string xi_list;
    std::string free_list;
    std::string ancilla_list;
    std::string detect_list;
    std::string signal_spec = "coherent:1:20";
    int starts = 20;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_optimize(const OptimizeOptions& opt) {
    if (opt.target_spec.empty()) {
        throw std::invalid_argument("--target is required");
    }
    OptimizationProblem problem =
        OptimizationProblem::standard(opt.preset_name, parse_target(opt.target_spec));
    problem.reference_signal = parse_signal(opt.signal_spec);
    if (!opt.ancilla_list.empty()) {
        problem.ancilla = OccupationVector(parse_int_list(opt.ancilla_list));
        problem.detection = problem.ancilla;
    }
    if (!opt.detect_list.empty()) {
        problem.detection = OccupationVector(parse_int_list(opt.detect_list));
    }
    if (!opt.t2_list.empty()) {
        problem.t2 = parse_exact_list(opt.t2_list);
    }
    if (!opt.xi_list.empty()) {
        problem.xi = parse_exact_list(opt.xi_list);
    }

    std::vector<std::string> free_names;
    if (!opt.free_list.empty()) {
        const int arity = preset_arity(opt.preset_name);
        problem.t2_free.assign(static_cast<std::size_t>(arity), false);
        problem.xi_free.assign(static_cast<std::size_t>(arity), false);
        const Circuit skeleton = problem.build(problem.t2, problem.xi);
        const auto names = opt.free_list == "none" ? std::vector<std::string>{}
                                                   : split(opt.free_list, ',');
        for (const std::string& name : names) {
            bool found = false;
            int bs_slot = 0;
            int ps_slot = 0;
            for (const Element& e : skeleton.elements) {
                if (e.kind == Element::Kind::BeamSplitter) {
                    if ("t" + e.label.substr(1) == name) {
                        problem.t2_free[static_cast<std::size_t>(bs_slot)] = true;
                        found = true;
                    }
                    ++bs_slot;
                } else {
                    if ("xi" + e.label.substr(1) == name) {
                        problem.xi_free[static_cast<std::size_t>(ps_slot)] = true;
                        found = true;
                    }
                    ++ps_slot;
                }
            }
            if (!found) {
                throw std::invalid_argument("unknown free parameter: " + name);
            }
            free_names.push_back(name);
        }
    }

    // Report the free-parameter names by stage label, whether defaulted or
    // chosen with --free.
    free_names.clear();
    {
        const Circuit skeleton = problem.build(problem.t2, problem.xi);
        int bs_slot = 0;
        int ps_slot = 0;
        for (const Element& e : skeleton.elements) {
            if (e.kind == Element::Kind::BeamSplitter) {
                if (problem.t2_free[static_cast<std::size_t>(bs_slot++)]) {
                    free_names.push_back("t" + e.label.substr(1));
                }
            } else {
                if (problem.xi_free[static_cast<std::size_t>(ps_slot++)]) {
                    free_names.push_back("xi" + e.label.substr(1));
                }
            }
        }
    }

    OptimizerConfig config;
    config.starts = opt.starts;
    config.seed = opt.seed;
    config.threads = env_threads();

    const Solution solution = optimize(problem, config);

    json out;
    out["command"] = "optimize";
    out["preset"] = opt.preset_name;
    out["target"] = target_json(problem.target);
    out["ancilla"] = problem.ancilla.counts();
    out["detection"] = problem.detection.counts();
    out["free"] = free_names;
    out["starts"] = solution.starts_used;
    out["seed"] = solution.seed;
    out["feasible"] = solution.feasible;
    out["t2"] = vector_json(solution.t2);
    out["xi"] = vector_json(solution.xi);
    out["profile_fidelity"] = num(solution.profile_fidelity);
    out["success_probability"] = num(solution.success_probability);
    json stages = json::array();
    for (const StageTrace& st : solution.trace) {
        stages.push_back(json{{"stage", st.stage},
                              {"initial", num(st.initial)},
                              {"final", num(st.final_value)},
                              {"iterations", st.iterations},
                              {"evaluations", st.evaluations}});
    }
    out["stages"] = std::move(stages);
    json clusters = json::array();
    for (const SolutionCluster& c : solution.clusters) {
        clusters.push_back(json{{"t2", vector_json(c.t2)},
                                {"xi", vector_json(c.xi)},
                                {"fidelity", num(c.profile_fidelity)},
                                {"probability", num(c.success_probability)},
                                {"hits", c.hits}});
    }
    out["clusters"] = std::move(clusters);

    emit(out.dump(2), opt.out_path);
    return solution.feasible ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    DeviceOptions device;
    std::string sweep_spec;
    std::string signal_spec = "coherent:1";
    std::string target_spec;
    std::string out_path;
};

int cmd_sweep(const SweepOptions& opt) {
    if (opt.device.preset_name.empty()) {
        throw std::invalid_argument("sweep needs --preset");
    }
    if (opt.sweep_spec.empty()) {
        throw std::invalid_argument("--sweep NAME=A:B:STEPS is required");
    }
    const auto eq = opt.sweep_spec.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("bad sweep spec (expected NAME=A:B:STEPS)");
    }
    const std::string param = opt.sweep_spec.substr(0, eq);
    const auto range_parts = split(opt.sweep_spec.substr(eq + 1), ':');
    if (range_parts.size() != 3) {
        throw std::invalid_argument("bad sweep range (expected A:B:STEPS)");
    }
    const double lo = parse_exact(range_parts[0]);
    const double hi = parse_exact(range_parts[1]);
    const int steps = std::stoi(range_parts[2]);
    if (steps < 1) {
        throw std::invalid_argument("sweep needs at least one step");
    }

    const int arity = preset_arity(opt.device.preset_name);
    std::vector<double> t2(static_cast<std::size_t>(arity), 1.0);
    std::vector<double> xi(static_cast<std::size_t>(arity), 0.0);
    if (!opt.device.t2_list.empty()) {
        t2 = parse_exact_list(opt.device.t2_list);
    }
    if (!opt.device.xi_list.empty()) {
        xi = parse_exact_list(opt.device.xi_list);
    }
    if (static_cast<int>(t2.size()) != arity || static_cast<int>(xi.size()) != arity) {
        throw std::invalid_argument("parameter lists must match the preset arity");
    }

    // Resolve the swept slot from the stage labels (t1/t4/..., xi1/xi4/...).
    const Circuit skeleton = preset(opt.device.preset_name, t2, xi);
    int slot = -1;
    bool sweep_t2 = true;
    int bs_slot = 0;
    int ps_slot = 0;
    for (const Element& e : skeleton.elements) {
        if (e.kind == Element::Kind::BeamSplitter) {
            if ("t" + e.label.substr(1) == param) {
                slot = bs_slot;
                sweep_t2 = true;
            }
            ++bs_slot;
        } else {
            if ("xi" + e.label.substr(1) == param) {
                slot = ps_slot;
                sweep_t2 = false;
            }
            ++ps_slot;
        }
    }
    if (slot < 0) {
        throw std::invalid_argument("unknown sweep parameter: " + param);
    }

    const OccupationVector ancilla =
        opt.device.ancilla_or_default(preset_modes(opt.device.preset_name));
    const OccupationVector detection = opt.device.detect_or_default(ancilla);
    const SingleModeInput signal = parse_signal(opt.signal_spec);
    const int d = ancilla.total() + 1;
    const TargetPattern target =
        opt.target_spec.empty() ? TargetPattern::truncation(d) : parse_target(opt.target_spec);
    if (target.dimension != d) {
        throw std::invalid_argument("target dimension does not match the device dimension");
    }

    std::ostringstream csv;
    csv << "param,fidelity,probability";
    for (int n = 0; n < d; ++n) {
        csv << ",c" << n << "_re,c" << n << "_im";
    }
    csv << '\n';

    for (int k = 0; k < steps; ++k) {
        const double value =
            steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
        std::vector<double> t2k = t2;
        std::vector<double> xik = xi;
        (sweep_t2 ? t2k : xik)[static_cast<std::size_t>(slot)] = value;
        const TruncationProfile profile =
            truncation_profile(preset(opt.device.preset_name, t2k, xik), ancilla,
                               DetectionPattern::standard(detection));
        bool zero_profile = true;
        for (const cplx& v : profile.c) {
            if (v != cplx{}) {
                zero_profile = false;
            }
        }
        const double fidelity = zero_profile ? 0.0 : profile_fidelity(profile, target);
        const double probability = success_probability(profile, signal);
        csv << format_sig12(value) << ',' << format_sig12(fidelity) << ','
            << format_sig12(probability);
        for (const cplx& v : profile.c) {
            csv << ',' << format_sig12(v.real()) << ',' << format_sig12(v.imag());
        }
        csv << '\n';
    }

    std::string text = csv.str();
    text.pop_back();  // emit() adds the final newline
    emit(text, opt.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear-optical quantum state truncation toolkit"};
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "evolve, condition and report");
    sim.device.add_to(*simulate);
    simulate->add_option("--signal", sim.signal_spec,
                         "coherent:ALPHA[:CUTOFF] | fock:K | custom:FILE");
    simulate->add_option("--target", sim.target_spec, "trunc:D | punch:D:K1,K2 | fock:D:K");
    simulate->add_option("--out", sim.out_path, "write the report to a file");

    VerifyOptions ver;
    CLI::App* verify = app.add_subcommand("verify", "reconcile the published solution catalog");
    verify->add_option("--wirings", ver.wirings_list, "comma-separated wiring presets");
    verify->add_option("--entries", ver.entries_list, "comma-separated catalog entry names");
    verify->add_option("--format", ver.format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));
    verify->add_option("--out", ver.out_path, "write the report to a file");

    OptimizeOptions optz;
    CLI::App* optimize = app.add_subcommand("optimize", "search device parameters for a target");
    optimize->add_option("--preset", optz.preset_name, "device preset to search");
    optimize->add_option("--target", optz.target_spec, "trunc:D | punch:D:K1,K2 | fock:D:K");
    optimize->add_option("--t2", optz.t2_list, "frozen transmittance values");
    optimize->add_option("--xi", optz.xi_list, "frozen phase values");
    optimize->add_option("--free", optz.free_list,
                         "free parameters, e.g. t1,t4,xi4 (default all)");
    optimize->add_option("--ancilla", optz.ancilla_list, "ancilla photon counts");
    optimize->add_option("--detect", optz.detect_list, "detector counts");
    optimize->add_option("--signal", optz.signal_spec,
                         "reference signal for the probability stage");
    optimize->add_option("--starts", optz.starts, "number of multi-start runs");
    optimize->add_option("--seed", optz.seed, "random seed");
    optimize->add_option("--out", optz.out_path, "write the report to a file");

    SweepOptions swp;
    CLI::App* sweep = app.add_subcommand("sweep", "scan one parameter, emit CSV");
    swp.device.add_to(*sweep, /*with_circuit_file=*/false);
    sweep->add_option("--sweep", swp.sweep_spec, "NAME=A:B:STEPS, e.g. t4=0:1:101");
    sweep->add_option("--signal", swp.signal_spec, "signal for the probability column");
    sweep->add_option("--target", swp.target_spec, "target for the fidelity column");
    sweep->add_option("--out", swp.out_path, "write the CSV to a file");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) {
            return cmd_simulate(sim);
        }
        if (verify->parsed()) {
            return cmd_verify(ver);
        }
        if (optimize->parsed()) {
            return cmd_optimize(optz);
        }
        if (sweep->parsed()) {
            return cmd_sweep(swp);
        }
        return kExitConfig;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
