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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qtruncate/conditioning.hpp"

using namespace qtruncate;

namespace {

Circuit balanced_qsd6() {
    return preset("qsd6", std::vector<double>{0.5, 0.5},
                  std::vector<double>{0.0, std::numbers::pi});
}

/// Heralded single-mode state computed the long way: build the product input,
/// evolve the full state sequentially, project on the detectors.
std::pair<StateVector, double> brute_force_heralded(const Circuit& circuit,
                                                    const SingleModeInput& signal,
                                                    const OccupationVector& ancilla,
                                                    const OccupationVector& detection) {
    const StateVector input = make_input(signal, ancilla, circuit.num_modes);
    const StateVector evolved = evolve(input, circuit);
    return project(evolved, DetectionPattern::standard(detection));
}

}  // namespace

TEST_CASE("projection keeps the matching components", "[conditioning]") {
    SECTION("product state is heralded with certainty") {
        StateVector evolved(2);
        evolved.set({1, 1}, 1.0);
        const auto [reduced, prob] = project(evolved, DetectionPattern::standard({1}));
        CHECK(prob == Catch::Approx(1.0));
        CHECK(reduced.amplitude({1}) == cplx{1.0});
    }
    SECTION("detection beyond the available photons is impossible") {
        StateVector evolved(2);
        evolved.set({1, 1}, 1.0);
        const auto [reduced, prob] = project(evolved, DetectionPattern::standard({5}));
        CHECK(prob == 0.0);
        CHECK(reduced.empty());
    }
    SECTION("balanced six-port heralds the truncated coherent state") {
        // Full-simulation value; comes out at e^{-1}/2 for alpha = 1.
        const auto [reduced, prob] = brute_force_heralded(
            balanced_qsd6(), SingleModeInput::coherent(1.0, 20), {1, 0}, {1, 0});
        CHECK(prob == Catch::Approx(std::exp(-1.0) / 2.0).epsilon(1e-10));
        CHECK(reduced.term_count() == 2);
        CHECK(std::abs(reduced.amplitude({0})) == Catch::Approx(std::abs(reduced.amplitude({1}))));
    }
}

TEST_CASE("truncation profiles come from the permanent engine", "[conditioning]") {
    SECTION("balanced six-port has a flat two-level profile") {
        const auto profile =
            truncation_profile(balanced_qsd6(), {1, 0}, DetectionPattern::standard({1, 0}));
        REQUIRE(profile.d == 2);
        CHECK(std::abs(profile.c[0]) > 0.0);
        CHECK(std::abs(profile.c[0] - profile.c[1]) < 1e-14);
    }
    SECTION("three-level setting keeps all three coefficients equal") {
        const double t = (3.0 - std::sqrt(3.0)) / 6.0;
        const auto profile =
            truncation_profile(preset("qsd6", std::vector<double>{t, t}, std::vector<double>{0, 0}),
                               {1, 1}, DetectionPattern::standard({1, 1}));
        REQUIRE(profile.d == 3);
        CHECK(std::abs(profile.c[0] - profile.c[1]) < 1e-12);
        CHECK(std::abs(profile.c[1] - profile.c[2]) < 1e-12);
    }
    SECTION("a transparent first splitter starves the detector of the ancilla photon") {
        // Brute-force derivation: with t1^2 = 1 the ancilla photon can only
        // exit on mode 1, so the n = 0 coefficient dies while n = 1 survives.
        const Circuit c = preset("qsd6", std::vector<double>{1.0, 0.5},
                                 std::vector<double>{0.0, std::numbers::pi});
        const auto profile = truncation_profile(c, {1, 0}, DetectionPattern::standard({1, 0}));
        const auto [brute, prob] =
            brute_force_heralded(c, SingleModeInput::custom({1.0, 1.0}), {1, 0}, {1, 0});
        CHECK(std::abs(profile.c[0]) <= 1e-15);
        CHECK(std::abs(profile.c[1]) > 0.1);
        CHECK(std::abs(brute.amplitude({0})) <= 1e-15);
        CHECK(std::abs(brute.amplitude({1}) - profile.c[1]) < 1e-12);
    }
    SECTION("detection total must match the ancilla total") {
        CHECK_THROWS_AS(
            truncation_profile(balanced_qsd6(), {1, 0}, DetectionPattern::standard({1, 1})),
            SumMismatch);
    }
}

TEST_CASE("profile fidelity compares against the kept-indicator direction", "[conditioning]") {
    auto make_profile = [](std::vector<cplx> c) {
        TruncationProfile p;
        p.d = static_cast<int>(c.size());
        p.c = std::move(c);
        return p;
    };

    const double h = 1.0 / std::sqrt(2.0);
    CHECK(profile_fidelity(make_profile({h, h}), TargetPattern::truncation(2)) ==
          Catch::Approx(1.0));
    CHECK(profile_fidelity(make_profile({1.0, 0.0}), TargetPattern::truncation(2)) ==
          Catch::Approx(0.5));

    SECTION("punched pattern at any scale") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unit(-2.0, 2.0);
        for (int trial = 0; trial < 100; ++trial) {
            const cplx z{unit(rng), unit(rng)};
            if (std::abs(z) < 1e-6) {
                continue;
            }
            const auto p = make_profile({0.0, z, 0.0, z});
            CHECK(profile_fidelity(p, TargetPattern::punch(4, {0, 2})) ==
                  Catch::Approx(1.0).margin(1e-12));
        }
    }
    SECTION("scale invariance") {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> unit(-2.0, 2.0);
        const auto base = make_profile({{0.3, 0.1}, {-0.2, 0.4}, {0.0, 0.9}});
        const double f0 = profile_fidelity(base, TargetPattern::truncation(3));
        for (int trial = 0; trial < 100; ++trial) {
            const cplx z{unit(rng), unit(rng)};
            if (std::abs(z) < 1e-6) {
                continue;
            }
            auto scaled = base;
            for (cplx& v : scaled.c) {
                v *= z;
            }
            CHECK(profile_fidelity(scaled, TargetPattern::truncation(3)) ==
                  Catch::Approx(f0).margin(1e-12));
        }
    }
    SECTION("flat profiles are exactly the fidelity-one profiles") {
        const auto flat = make_profile({{0.0, 0.4}, {0.0, 0.4}, {0.0, 0.4}});
        CHECK(profile_fidelity(flat, TargetPattern::truncation(3)) ==
              Catch::Approx(1.0).margin(1e-14));
        const auto bent = make_profile({{0.0, 0.4}, {0.0, 0.4}, {0.1, 0.4}});
        CHECK(profile_fidelity(bent, TargetPattern::truncation(3)) < 1.0 - 1e-4);

        // Both directions of the equivalence, over random global phases:
        // equal kept entries give fidelity 1; spreading any entry beyond
        // 1e-9 pulls the fidelity measurably below 1.
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::uniform_real_distribution<double> mag(0.2, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            const cplx z = std::polar(mag(rng), angle(rng));
            const auto equal = make_profile({z, z, z, z});
            CHECK(profile_fidelity(equal, TargetPattern::truncation(4)) >= 1.0 - 1e-12);
            auto spread = equal;
            spread.c[2] += std::polar(1e-3 * mag(rng), angle(rng));
            double worst_gap = 0.0;
            for (const cplx& v : spread.c) {
                worst_gap = std::max(worst_gap, std::abs(v - spread.c[0]));
            }
            if (worst_gap > 1e-9) {
                CHECK(profile_fidelity(spread, TargetPattern::truncation(4)) < 1.0 - 1e-10);
            }
        }
    }
    SECTION("degenerate inputs are rejected") {
        CHECK_THROWS_AS(profile_fidelity(make_profile({0.0, 0.0}), TargetPattern::truncation(2)),
                        std::invalid_argument);
        CHECK_THROWS_AS(profile_fidelity(make_profile({1.0, 1.0}), TargetPattern::truncation(3)),
                        std::invalid_argument);
    }
}

TEST_CASE("success probability matches the full simulation", "[conditioning]") {
    SECTION("flat profile with a vacuum signal") {
        TruncationProfile p;
        p.d = 2;
        p.c = {0.5, 0.5};
        CHECK(success_probability(p, SingleModeInput::fock(0)) == Catch::Approx(0.25));
    }
    SECTION("punched component never heralds") {
        TruncationProfile p;
        p.d = 4;
        p.c = {0.5, 0.5, 0.0, 0.5};
        CHECK(success_probability(p, SingleModeInput::fock(2)) == 0.0);
    }
    SECTION("two-level device probability equals the projection probability") {
        const auto profile =
            truncation_profile(balanced_qsd6(), {1, 0}, DetectionPattern::standard({1, 0}));
        const auto signal = SingleModeInput::coherent(1.0, 20);
        const auto [reduced, prob] =
            brute_force_heralded(balanced_qsd6(), signal, {1, 0}, {1, 0});
        CHECK(success_probability(profile, signal) == Catch::Approx(prob).margin(1e-12));
    }
    SECTION("agreement on random six-port and eight-port configurations") {
        std::mt19937_64 rng(91);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        for (int trial = 0; trial < 50; ++trial) {
            const bool six = trial % 2 == 0;
            const std::string name = six ? "qsd6" : "qsd8";
            const int arity = preset_arity(name);
            std::vector<double> t2(static_cast<std::size_t>(arity));
            std::vector<double> xi(static_cast<std::size_t>(arity));
            for (int i = 0; i < arity; ++i) {
                t2[static_cast<std::size_t>(i)] = unit(rng);
                xi[static_cast<std::size_t>(i)] = angle(rng);
            }
            const Circuit c = preset(name, t2, xi);
            const OccupationVector ancilla =
                six ? OccupationVector{1, 0} : OccupationVector{1, 1, 1};
            const OccupationVector detection = ancilla;
            const auto signal = SingleModeInput::coherent(cplx(0.4 + unit(rng), 0.0), 20);
            const auto profile =
                truncation_profile(c, ancilla, DetectionPattern::standard(detection));
            const auto [reduced, prob] = brute_force_heralded(c, signal, ancilla, detection);
            REQUIRE(success_probability(profile, signal) == Catch::Approx(prob).margin(1e-12));
        }
    }
}

TEST_CASE("output states scale the signal by the profile", "[conditioning]") {
    SECTION("perfect flat profile reproduces the truncated signal") {
        TruncationProfile p;
        p.d = 3;
        p.c = {0.5, 0.5, 0.5};
        const auto [state, f] =
            output_state(p, SingleModeInput::coherent(0.8), TargetPattern::truncation(3));
        CHECK(f == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("uneven profile degrades the fidelity by the known amount") {
        TruncationProfile p;
        p.d = 2;
        p.c = {1.0, 0.5};
        const double h = 1.0 / std::sqrt(2.0);
        const auto [state, f] =
            output_state(p, SingleModeInput::custom({h, h}), TargetPattern::truncation(2));
        CHECK(f == Catch::Approx(0.9).margin(1e-12));
    }
    SECTION("holes stay exactly empty for coherent signals") {
        TruncationProfile p;
        p.d = 4;
        p.c = {0.4, 0.0, 0.4, 0.0};
        for (double a : {0.5, 1.0, 2.0}) {
            const auto [state, f] = output_state(p, SingleModeInput::coherent(cplx(a, 0.0)),
                                                 TargetPattern::punch(4, {1, 3}));
            CHECK(state.amplitude({1}) == cplx{});
            CHECK(state.amplitude({3}) == cplx{});
            CHECK(f == Catch::Approx(1.0).margin(1e-12));
        }
    }
    SECTION("all-zero products cannot herald") {
        TruncationProfile p;
        p.d = 2;
        p.c = {0.0, 0.7};
        CHECK_THROWS_AS(output_state(p, SingleModeInput::fock(0), TargetPattern::truncation(2)),
                        std::invalid_argument);
    }
}

TEST_CASE("hard truncation holds through the full projection pipeline", "[conditioning]") {
    // Signals with support well past d never produce heralded components at
    // n >= d on either device family.
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 25; ++trial) {
        for (const std::string_view name : {"qsd6", "qsd8"}) {
            const int arity = preset_arity(name);
            std::vector<double> t2(static_cast<std::size_t>(arity));
            std::vector<double> xi(static_cast<std::size_t>(arity));
            for (int i = 0; i < arity; ++i) {
                t2[static_cast<std::size_t>(i)] = unit(rng);
                xi[static_cast<std::size_t>(i)] = angle(rng);
            }
            const Circuit c = preset(name, t2, xi);
            const OccupationVector ancilla =
                name == "qsd6" ? OccupationVector{1, 0} : OccupationVector{1, 1, 1};
            const int d = ancilla.total() + 1;
            std::vector<cplx> gamma(static_cast<std::size_t>(d + 4), 1.0);
            const auto [state, prob] =
                brute_force_heralded(c, SingleModeInput::custom(gamma), ancilla, ancilla);
            for (const auto& [occ, amp] : state.terms()) {
                if (occ[0] >= d) {
                    REQUIRE(std::abs(amp) <= 1e-12);
                }
            }
        }
    }
}
