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
#include <atomic>
#include <cstdint>
#include <numeric>
#include <thread>

#include "qtruncate/catalog.hpp"
#include "qtruncate/conditioning.hpp"

namespace qtruncate {

/// Search space: a preset wiring with a chosen subset of transmittances and
/// phases free, the rest frozen, plus the conditioning configuration and the
/// pattern the profile should realize.
struct OptimizationProblem {
    std::string preset = "qsd8";
    std::vector<double> t2;       // full arity; frozen slots keep these values
    std::vector<double> xi;
    std::vector<bool> t2_free;
    std::vector<bool> xi_free;
    OccupationVector ancilla;
    OccupationVector detection;   // counts on modes 2..N
    TargetPattern target = TargetPattern::truncation(2);
    SingleModeInput reference_signal = SingleModeInput::coherent(1.0, 20);

    /// Standard configuration for a preset and target: ancilla/detection carry
    /// d-1 photons spread middle-heavy across the ancilla modes, every
    /// parameter free.
    static OptimizationProblem standard(std::string_view preset_name, const TargetPattern& target) {
        OptimizationProblem p;
        p.preset = std::string(preset_name);
        const int arity = preset_arity(preset_name);
        p.t2.assign(static_cast<std::size_t>(arity), 1.0);
        p.xi.assign(static_cast<std::size_t>(arity), 0.0);
        p.t2_free.assign(static_cast<std::size_t>(arity), true);
        p.xi_free.assign(static_cast<std::size_t>(arity), true);
        const int n_anc = preset_modes(preset_name) - 1;
        std::vector<int> anc(static_cast<std::size_t>(n_anc), (target.dimension - 1) / n_anc);
        int rem = (target.dimension - 1) % n_anc;
        for (int k = 0; rem > 0; ++k, --rem) {
            anc[static_cast<std::size_t>(((n_anc - 1) / 2 + k) % n_anc)] += 1;
        }
        p.ancilla = OccupationVector(anc);
        p.detection = p.ancilla;
        p.target = target;
        return p;
    }

    void validate() const {
        const std::size_t arity = static_cast<std::size_t>(preset_arity(preset));
        if (t2.size() != arity || xi.size() != arity || t2_free.size() != arity ||
            xi_free.size() != arity) {
            throw std::invalid_argument("parameter vectors must match the preset arity");
        }
        for (double v : t2) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("frozen t2 outside [0, 1]");
            }
        }
        target.validate();
        if (ancilla.total() + 1 != target.dimension) {
            throw std::invalid_argument("ancilla total must equal target dimension - 1");
        }
    }

    int free_count() const {
        auto ones = [](const std::vector<bool>& v) {
            return static_cast<int>(std::count(v.begin(), v.end(), true));
        };
        return ones(t2_free) + ones(xi_free);
    }

    Circuit build(std::span<const double> t2v, std::span<const double> xiv) const {
        return qtruncate::preset(preset, t2v, xiv);
    }
};

enum class ObjectiveStage { Feasibility, Probability };

struct OptimizerConfig {
    int starts = 20;
    std::uint64_t seed = 0;
    int max_iters = 2000;          // iteration budget per start, spent across stages
    double tol = 1e-12;            // stop when the simplex objective spread falls below
    double eps_feas = 1e-9;        // profile fidelity slack for "feasible"
    double penalty = 1e3;          // feasibility penalty weight in the probability stage
    double cluster_radius = 1e-3;  // distinct-optimum grouping distance
    int threads = 1;               // worker cap; starts are independent
};

/// Feasibility: 1 - profile fidelity. Probability: negated success
/// probability plus a penalty that switches on once the fidelity drops below
/// the feasibility slack. Works from the preset scattering matrix directly;
/// bit-identical to going through truncation_profile.
inline double objective(const OptimizationProblem& problem, std::span<const double> t2,
                        std::span<const double> xi, ObjectiveStage stage,
                        const OptimizerConfig& config = {}) {
    const std::vector<cplx> c =
        detail::profile_from_scattering(preset_scattering(problem.preset, t2, xi),
                                        problem.ancilla,
                                        DetectionPattern::standard(problem.detection));
    const double f = detail::profile_fidelity_unchecked(c, problem.target.kept);
    if (stage == ObjectiveStage::Feasibility) {
        return 1.0 - f;
    }
    const double p = detail::success_probability_from(c, problem.reference_signal);
    return -p + config.penalty * std::max(0.0, (1.0 - config.eps_feas) - f);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    int evaluations = 0;
};

/// Downhill simplex with standard coefficients; stops on objective spread or
/// the iteration cap. Deterministic: ties resolve by vertex index.
template <typename Fn>
NelderMeadResult nelder_mead(Fn&& f, std::span<const double> x0, std::span<const double> steps,
                             double tol, int max_iters) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    if (n == 0) {
        result.x.assign(x0.begin(), x0.end());
        result.fx = f(result.x);
        result.evaluations = 1;
        return result;
    }

    std::vector<std::vector<double>> xs(n + 1, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i + 1][i] += steps[i];
    }
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fs[i] = f(xs[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    };

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        sort_order();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];
        if (fs[worst] - fs[best] <= tol) {
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& xv = xs[order[k]];
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += xv[i];
            }
        }
        for (double& v : centroid) {
            v /= static_cast<double>(n);
        }

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = centroid[i] + coef * (centroid[i] - xs[worst][i]);
            }
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        ++evals;
        if (fr < fs[best]) {
            std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                xs[worst] = std::move(xe);
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
            continue;
        }
        if (fr < fs[second_worst]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
            continue;
        }
        if (fr < fs[worst]) {
            std::vector<double> xc = blend(0.5);  // outside contraction
            const double fc = f(xc);
            ++evals;
            if (fc <= fr) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
                continue;
            }
        } else {
            std::vector<double> xc = blend(-0.5);  // inside contraction
            const double fc = f(xc);
            ++evals;
            if (fc < fs[worst]) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t idx = order[k];
            for (std::size_t i = 0; i < n; ++i) {
                xs[idx][i] = xs[best][i] + 0.5 * (xs[idx][i] - xs[best][i]);
            }
            fs[idx] = f(xs[idx]);
            ++evals;
        }
    }

    sort_order();
    result.x = xs[order.front()];
    result.fx = fs[order.front()];
    result.iterations = iter;
    result.evaluations = evals;
    return result;
}

}  // namespace detail

struct StageTrace {
    std::string stage;
    double initial = 0.0;
    double final_value = 0.0;
    int iterations = 0;
    int evaluations = 0;
};

struct SolutionCluster {
    std::vector<double> t2;
    std::vector<double> xi;
    double profile_fidelity = 0.0;
    double success_probability = 0.0;
    int hits = 0;
};

struct Solution {
    bool feasible = false;
    std::vector<double> t2;
    std::vector<double> xi;
    double profile_fidelity = 0.0;
    double success_probability = 0.0;
    std::vector<StageTrace> trace;  // stages of the winning start
    int starts_used = 0;
    std::uint64_t seed = 0;
    std::vector<SolutionCluster> clusters;  // distinct feasible optima
};

namespace detail {

struct StartOutcome {
    bool feasible = false;
    std::vector<double> t2;
    std::vector<double> xi;
    double fidelity = 0.0;
    double probability = 0.0;
    std::vector<StageTrace> trace;
};

/// Free-parameter packing: free t2 slots become unconstrained angles theta
/// with t2 = sin^2(theta), free xi slots stay raw angles (reduced mod 2pi by
/// the element constructor). Frozen slots pass through untouched, so the
/// model never sees a transmittance outside [0, 1].
struct ParamMap {
    const OptimizationProblem* problem;
    std::vector<int> free_t2_idx;
    std::vector<int> free_xi_idx;

    explicit ParamMap(const OptimizationProblem& p) : problem(&p) {
        for (std::size_t i = 0; i < p.t2_free.size(); ++i) {
            if (p.t2_free[i]) {
                free_t2_idx.push_back(static_cast<int>(i));
            }
        }
        for (std::size_t i = 0; i < p.xi_free.size(); ++i) {
            if (p.xi_free[i]) {
                free_xi_idx.push_back(static_cast<int>(i));
            }
        }
    }

    std::size_t dim() const { return free_t2_idx.size() + free_xi_idx.size(); }

    void expand(std::span<const double> x, std::vector<double>& t2, std::vector<double>& xi) const {
        t2 = problem->t2;
        xi = problem->xi;
        std::size_t k = 0;
        for (int i : free_t2_idx) {
            const double s = std::sin(x[k++]);
            t2[static_cast<std::size_t>(i)] = s * s;
        }
        for (int i : free_xi_idx) {
            xi[static_cast<std::size_t>(i)] = x[k++];
        }
    }
};

inline StartOutcome run_single_start(const OptimizationProblem& problem,
                                     const OptimizerConfig& config, const ParamMap& map,
                                     int start_index) {
    constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                                         31, 37, 41, 43, 47, 53, 59, 61};
    const std::size_t dim = map.dim();
    const std::size_t n_t2 = map.free_t2_idx.size();

    std::vector<double> x0(dim);
    {
        std::uint64_t rng = config.seed;
        for (std::size_t j = 0; j < dim; ++j) {
            const double shift = to_unit(splitmix64(rng));
            double u = halton(static_cast<std::uint64_t>(start_index) + 1,
                              kPrimes[j % std::size(kPrimes)]) +
                       shift;
            u -= std::floor(u);
            const double pi = std::numbers::pi;
            x0[j] = (j < n_t2) ? u * (pi / 2.0) : u * 2.0 * pi;
        }
    }

    std::vector<double> t2_buf;
    std::vector<double> xi_buf;
    auto eval = [&](ObjectiveStage stage) {
        return [&, stage](const std::vector<double>& x) {
            map.expand(x, t2_buf, xi_buf);
            return objective(problem, t2_buf, xi_buf, stage, config);
        };
    };

    StartOutcome out;
    auto record = [&](const char* name, double initial, const NelderMeadResult& r) {
        out.trace.push_back({name, initial, r.fx, r.iterations, r.evaluations});
    };

    auto steps_of = [&](double theta_step, double xi_step) {
        std::vector<double> s(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            s[j] = j < n_t2 ? theta_step : xi_step;
        }
        return s;
    };

    // config.max_iters is the per-start budget, spent across the stages.
    auto feas = eval(ObjectiveStage::Feasibility);
    const double f0 = feas(x0);
    NelderMeadResult stage1 =
        nelder_mead(feas, x0, steps_of(0.25, 0.8), config.tol, config.max_iters);
    record("feasibility", f0, stage1);

    std::vector<double> x_final = stage1.x;
    if (1.0 - stage1.fx >= 1.0 - config.eps_feas && map.dim() > 0) {
        const int remaining = std::max(200, config.max_iters - stage1.iterations);
        auto prob = eval(ObjectiveStage::Probability);
        const double p0 = prob(stage1.x);
        NelderMeadResult stage2 =
            nelder_mead(prob, stage1.x, steps_of(0.05, 0.15), config.tol, remaining);
        record("probability", p0, stage2);

        // The penalty stage settles at the edge of the feasibility band; pull
        // the point back onto the feasible set without losing the probability
        // gains.
        const double g0 = feas(stage2.x);
        NelderMeadResult polish = nelder_mead(feas, stage2.x, steps_of(1e-4, 3e-4), config.tol,
                                              std::max(200, remaining - stage2.iterations));
        record("feasibility-polish", g0, polish);
        x_final = polish.x;
    }

    map.expand(x_final, out.t2, out.xi);
    const TruncationProfile profile = truncation_profile(
        problem.build(out.t2, out.xi), problem.ancilla, DetectionPattern::standard(problem.detection));
    out.fidelity = profile_fidelity_unchecked(profile.c, problem.target.kept);
    out.probability = success_probability(profile, problem.reference_signal);
    out.feasible = out.fidelity >= 1.0 - config.eps_feas;
    return out;
}

inline double circular_angle_gap(double a, double b) {
    const double two_pi = 2.0 * std::numbers::pi;
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

inline double parameter_distance(const StartOutcome& a, const StartOutcome& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.t2.size(); ++i) {
        worst = std::max(worst, std::abs(a.t2[i] - b.t2[i]));
    }
    for (std::size_t i = 0; i < a.xi.size(); ++i) {
        worst = std::max(worst, circular_angle_gap(a.xi[i], b.xi[i]));
    }
    return worst;
}

inline bool parameters_less(const StartOutcome& a, const StartOutcome& b) {
    if (a.t2 != b.t2) {
        return a.t2 < b.t2;
    }
    return a.xi < b.xi;
}

}  // namespace detail

/// Multi-start derivative-free search: a feasibility descent per start, then a
/// penalized success-probability descent from each feasible point, then a
/// closing feasibility polish. Deterministic for a fixed seed; the best start
/// wins by probability among feasible points.
inline Solution optimize(const OptimizationProblem& problem, const OptimizerConfig& config = {}) {
    problem.validate();
    if (config.starts < 1) {
        throw std::invalid_argument("need at least one start");
    }
    const detail::ParamMap map(problem);

    std::vector<detail::StartOutcome> outcomes(static_cast<std::size_t>(config.starts));
    const int workers = std::clamp(config.threads, 1, config.starts);
    if (workers == 1) {
        for (int k = 0; k < config.starts; ++k) {
            outcomes[static_cast<std::size_t>(k)] = detail::run_single_start(problem, config, map, k);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int k = next.fetch_add(1);
                    if (k >= config.starts) {
                        return;
                    }
                    outcomes[static_cast<std::size_t>(k)] =
                        detail::run_single_start(problem, config, map, k);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    int best = 0;
    for (int k = 1; k < config.starts; ++k) {
        const auto& cand = outcomes[static_cast<std::size_t>(k)];
        const auto& cur = outcomes[static_cast<std::size_t>(best)];
        const bool better = cand.feasible != cur.feasible
                                ? cand.feasible
                                : (cand.feasible ? cand.probability > cur.probability
                                                 : cand.fidelity > cur.fidelity);
        if (better) {
            best = k;
        }
    }

    Solution solution;
    const auto& win = outcomes[static_cast<std::size_t>(best)];
    solution.feasible = win.feasible;
    solution.t2 = win.t2;
    solution.xi = win.xi;
    solution.profile_fidelity = win.fidelity;
    solution.success_probability = win.probability;
    solution.trace = win.trace;
    solution.starts_used = config.starts;
    solution.seed = config.seed;

    // Group feasible optima; representatives are the lexicographically
    // smallest member of each group, reported in lexicographic order.
    std::vector<const detail::StartOutcome*> feas;
    for (const auto& o : outcomes) {
        if (o.feasible) {
            feas.push_back(&o);
        }
    }
    std::sort(feas.begin(), feas.end(),
              [](const auto* a, const auto* b) { return detail::parameters_less(*a, *b); });
    for (const auto* o : feas) {
        bool grouped = false;
        for (SolutionCluster& c : solution.clusters) {
            detail::StartOutcome rep;
            rep.t2 = c.t2;
            rep.xi = c.xi;
            if (detail::parameter_distance(*o, rep) <= config.cluster_radius) {
                c.hits += 1;
                grouped = true;
                break;
            }
        }
        if (!grouped) {
            solution.clusters.push_back({o->t2, o->xi, o->fidelity, o->probability, 1});
        }
    }
    return solution;
}

// ---------------------------------------------------------------------------
// Catalog reconciliation.
// ---------------------------------------------------------------------------

struct CatalogCheck {
    std::string entry;
    std::string wiring;
    double fidelity = 0.0;
    double probability = 0.0;
    std::vector<cplx> profile;
    std::string status;  // REPRODUCED | PARTIAL | NOT
};

struct VerifyReport {
    std::vector<CatalogCheck> checks;
    bool six_port_reproduced = true;
};

inline std::vector<std::string> default_wirings() {
    std::vector<std::string> w;
    for (const std::string& name : preset_names()) {
        if (name != "qsd6") {
            w.push_back(name);
        }
    }
    return w;
}

/// Evaluate every catalog entry under each candidate wiring (six-port entries
/// always run on the six-port). REPRODUCED needs fidelity 1 - 1e-9, PARTIAL
/// 1 - 1e-3.
inline VerifyReport verify_catalog(std::span<const std::string> wirings,
                                   std::span<const CatalogEntry> entries) {
    const SingleModeInput reference = SingleModeInput::coherent(1.0, 20);
    VerifyReport report;
    for (const CatalogEntry& entry : entries) {
        std::vector<std::string> applicable;
        if (entry.preset == "qsd6") {
            applicable = {"qsd6"};
        } else {
            applicable.assign(wirings.begin(), wirings.end());
        }
        for (const std::string& wiring : applicable) {
            CatalogCheck check;
            check.entry = entry.name;
            check.wiring = wiring;
            const TruncationProfile profile =
                truncation_profile(preset(wiring, entry.t2, entry.xi), entry.ancilla,
                                   DetectionPattern::standard(entry.detection));
            check.profile = profile.c;
            check.fidelity = detail::profile_fidelity_unchecked(profile.c, entry.target.kept);
            check.probability = success_probability(profile, reference);
            check.status = check.fidelity >= 1.0 - 1e-9   ? "REPRODUCED"
                           : check.fidelity >= 1.0 - 1e-3 ? "PARTIAL"
                                                          : "NOT";
            if (entry.preset == "qsd6" && check.status != "REPRODUCED") {
                report.six_port_reproduced = false;
            }
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

inline VerifyReport verify_catalog(std::span<const std::string> wirings) {
    return verify_catalog(wirings, catalog());
}

inline VerifyReport verify_catalog() {
    const std::vector<std::string> w = default_wirings();
    return verify_catalog(std::span<const std::string>(w));
}

}  // namespace qtruncate
