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

#include "qtruncate/optimizer.hpp"

using namespace qtruncate;

namespace {

/// Two-level truncation on the six-port with t1, t4 and xi4 free; xi1 is a
/// pure input phase on an empty mode and stays frozen.
OptimizationProblem six_port_problem(int d) {
    OptimizationProblem p = OptimizationProblem::standard("qsd6", TargetPattern::truncation(d));
    p.xi_free = {false, true};
    return p;
}

double recomputed_fidelity(const OptimizationProblem& p, const Solution& s) {
    const auto profile = truncation_profile(p.build(s.t2, s.xi), p.ancilla,
                                            DetectionPattern::standard(p.detection));
    return profile_fidelity(profile, p.target);
}

}  // namespace

TEST_CASE("objective values at known points", "[optimizer]") {
    SECTION("the two-level catalog point is feasible") {
        const auto p = six_port_problem(2);
        const double obj =
            objective(p, std::vector<double>{0.5, 0.5},
                      std::vector<double>{0.0, std::numbers::pi}, ObjectiveStage::Feasibility);
        CHECK(obj <= 1e-12);
    }
    SECTION("a transparent network cannot flatten a four-level profile") {
        const auto p = OptimizationProblem::standard("qsd8", TargetPattern::truncation(4));
        const double obj =
            objective(p, std::vector<double>{1, 1, 1, 1, 1}, std::vector<double>{0, 0, 0, 0, 0},
                      ObjectiveStage::Feasibility);
        CHECK(obj > 1e-3);
    }
    SECTION("one-dimensional targets are trivially satisfied") {
        OptimizationProblem p = OptimizationProblem::standard("qsd6", TargetPattern::truncation(1));
        const double obj = objective(p, std::vector<double>{0.7, 0.3},
                                     std::vector<double>{0.0, 1.0}, ObjectiveStage::Feasibility);
        CHECK(obj <= 1e-12);
    }
    SECTION("probability stage rewards the heralding rate") {
        const auto p = six_port_problem(2);
        const double obj =
            objective(p, std::vector<double>{0.5, 0.5},
                      std::vector<double>{0.0, std::numbers::pi}, ObjectiveStage::Probability);
        // Feasible point: objective is minus the success probability.
        CHECK(obj == Catch::Approx(-std::exp(-1.0) / 2.0).epsilon(1e-6));
    }
}

TEST_CASE("the optimizer rediscovers the two-level setting", "[optimizer]") {
    OptimizerConfig cfg;
    cfg.starts = 12;
    cfg.seed = 1;
    const auto p = six_port_problem(2);
    const Solution s = optimize(p, cfg);

    REQUIRE(s.feasible);
    CHECK(s.profile_fidelity >= 1.0 - 1e-9);
    // The probability stage singles out the balanced point on the flat
    // family, with the sign flip on the mixing arm.
    CHECK(s.t2[0] == Catch::Approx(0.5).margin(1e-4));
    CHECK(s.t2[1] == Catch::Approx(0.5).margin(1e-4));
    CHECK(s.xi[1] == Catch::Approx(std::numbers::pi).margin(1e-4));
    CHECK(s.success_probability == Catch::Approx(std::exp(-1.0) / 2.0).epsilon(1e-4));

    SECTION("reported values match recomputation from the parameters") {
        CHECK(std::abs(recomputed_fidelity(p, s) - s.profile_fidelity) <= 1e-12);
    }
    SECTION("the winning start improved on its initial objective") {
        REQUIRE_FALSE(s.trace.empty());
        for (const auto& st : s.trace) {
            CHECK(st.final_value <= st.initial);
        }
    }
}

TEST_CASE("optimization is deterministic and monotone in the start count", "[optimizer]") {
    const auto p = six_port_problem(2);
    OptimizerConfig cfg;
    cfg.starts = 6;
    cfg.seed = 42;

    const Solution a = optimize(p, cfg);
    const Solution b = optimize(p, cfg);
    CHECK(a.t2 == b.t2);
    CHECK(a.xi == b.xi);
    CHECK(a.profile_fidelity == b.profile_fidelity);
    CHECK(a.success_probability == b.success_probability);
    CHECK(a.clusters.size() == b.clusters.size());

    SECTION("threaded runs give the same answer") {
        OptimizerConfig threaded = cfg;
        threaded.threads = 3;
        const Solution c = optimize(p, threaded);
        CHECK(a.t2 == c.t2);
        CHECK(a.profile_fidelity == c.profile_fidelity);
    }
    SECTION("more starts never lose ground") {
        OptimizerConfig more = cfg;
        more.starts = 12;
        const Solution c = optimize(p, more);
        CHECK(c.feasible >= a.feasible);
        if (a.feasible && c.feasible) {
            CHECK(c.success_probability >= a.success_probability - 1e-12);
        }
    }
}

TEST_CASE("infeasible problems return an explicit infeasible result", "[optimizer]") {
    // Freeze everything at a transparent network: the four-level flat target
    // is unreachable and there is nothing to search.
    OptimizationProblem p = OptimizationProblem::standard("qsd8", TargetPattern::truncation(4));
    p.t2_free.assign(5, false);
    p.xi_free.assign(5, false);
    OptimizerConfig cfg;
    cfg.starts = 2;
    const Solution s = optimize(p, cfg);
    CHECK_FALSE(s.feasible);
    CHECK(s.profile_fidelity < 1.0 - 1e-3);
    CHECK(s.clusters.empty());
}

TEST_CASE("the transform keeps transmittances inside the unit interval", "[optimizer]") {
    // Angles anywhere on the line map into [0, 1]; the boundary is reachable.
    for (double theta : {-5.0, -1.0, 0.0, 0.3, 1.5707963267948966, 2.0, 9.0}) {
        const double s = std::sin(theta);
        const double t2 = s * s;
        CHECK(t2 >= 0.0);
        CHECK(t2 <= 1.0);
    }
}

TEST_CASE("three-level rediscovery finds multiple catalog settings", "[optimizer]") {
    OptimizerConfig cfg;
    cfg.starts = 24;
    cfg.seed = 3;
    const auto p = six_port_problem(3);
    const Solution s = optimize(p, cfg);
    REQUIRE(s.feasible);
    CHECK(s.profile_fidelity >= 1.0 - 1e-9);

    const double lo = (3.0 - std::sqrt(3.0)) / 6.0;
    const double hi = (3.0 + std::sqrt(3.0)) / 6.0;
    const double pi = std::numbers::pi;
    const std::vector<std::array<double, 3>> known = {
        {lo, lo, 0.0}, {hi, hi, 0.0}, {lo, hi, pi}, {hi, lo, pi}};

    auto matches_known = [&](const std::vector<double>& t2, const std::vector<double>& xi) {
        for (const auto& k : known) {
            double gap = std::fmod(std::abs(xi[1] - k[2]), 2.0 * pi);
            gap = std::min(gap, 2.0 * pi - gap);
            if (std::abs(t2[0] - k[0]) <= 1e-4 && std::abs(t2[1] - k[1]) <= 1e-4 && gap <= 1e-3) {
                return true;
            }
        }
        return false;
    };

    CHECK(matches_known(s.t2, s.xi));

    int distinct = 0;
    for (const auto& c : s.clusters) {
        if (matches_known(c.t2, c.xi)) {
            ++distinct;
        }
    }
    CHECK(distinct >= 2);
}
