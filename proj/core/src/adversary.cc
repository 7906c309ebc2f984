// Copyright 2026 The qsms Authors
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

#include "qsms/adversary.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "parallel.h"
#include "qsms/error.h"

namespace qsms {

namespace {

std::string join(std::span<const std::uint64_t> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(values[i]);
    }
    return out;
}

std::vector<double> sums_distribution(std::span<const std::uint64_t> sums, std::uint64_t d) {
    std::vector<double> probs(d, 0.0);
    for (std::uint64_t s : sums) {
        probs[s] += 1.0;
    }
    for (auto &p : probs) {
        p /= static_cast<double>(sums.size());
    }
    return probs;
}

std::vector<double> point_mass(std::uint64_t value, std::uint64_t d) {
    std::vector<double> probs(d, 0.0);
    probs[value] = 1.0;
    return probs;
}

bool all_checks_pass(const AttackReport &report) {
    return std::all_of(report.tv_distances.begin(), report.tv_distances.end(),
                       [](const DistanceCheck &c) { return c.passed(); });
}

/// Counts, per constant term, the polynomials of degree < t over Z_d that
/// pass through every known (x, value) pair.
std::vector<double> consistent_constant_counts(std::span<const Share> known, std::size_t t, std::uint64_t d) {
    const std::uint64_t total = checked_state_size(d, t);
    std::vector<double> counts(d, 0.0);
    std::vector<std::uint64_t> coeffs(t, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (std::size_t k = 0; k < t; ++k) {
            coeffs[k] = rest % d;
            rest /= d;
        }
        bool consistent = true;
        for (const auto &share : known) {
            std::uint64_t acc = 0;
            for (std::size_t k = t; k-- > 0;) {
                acc = (acc * share.x.value() + coeffs[k]) % d;
            }
            if (acc != share.value.value()) {
                consistent = false;
                break;
            }
        }
        if (consistent) {
            counts[coeffs[0]] += 1.0;
        }
    }
    return counts;
}

}  // namespace

std::string_view attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::kIntercept:
            return "intercept";
        case AttackKind::kInterceptResend:
            return "intercept-resend";
        case AttackKind::kCollusion:
            return "collusion";
    }
    return "unknown";
}

AttackKind parse_attack_kind(std::string_view name) {
    for (auto kind : {AttackKind::kIntercept, AttackKind::kInterceptResend, AttackKind::kCollusion}) {
        if (attack_kind_name(kind) == name) {
            return kind;
        }
    }
    throw ConfigError("unknown attack kind '" + std::string(name) + "'");
}

const Distribution *AttackReport::distribution(std::string_view label) const {
    for (const auto &dist : distributions) {
        if (dist.label == label) {
            return &dist;
        }
    }
    return nullptr;
}

std::optional<double> AttackReport::metric(std::string_view name) const {
    for (const auto &m : metrics) {
        if (m.name == name) {
            return m.value;
        }
    }
    return std::nullopt;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions have different supports");
    }
    double l1 = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        l1 += std::abs(p[i] - q[i]);
    }
    return 0.5 * l1;
}

double tv_noise_bound(std::uint64_t d, std::size_t shots) {
    return 4.0 * std::sqrt(static_cast<double>(d) / static_cast<double>(shots));
}

double guess_rate_tolerance(std::uint64_t d, std::size_t shots) {
    const double p = 1.0 / static_cast<double>(d);
    return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots)) * std::sqrt(static_cast<double>(d));
}

std::vector<double> empirical_distribution(std::span<const std::uint32_t> samples, std::uint64_t d) {
    std::vector<double> probs(d, 0.0);
    for (std::uint32_t s : samples) {
        if (s >= d) {
            throw std::invalid_argument("sample outside Z_d");
        }
        probs[s] += 1.0;
    }
    for (auto &p : probs) {
        p /= static_cast<double>(samples.size());
    }
    return probs;
}

std::vector<double> uniform_distribution(std::uint64_t d) {
    return std::vector<double>(d, 1.0 / static_cast<double>(d));
}

AttackReport intercept_and_measure(const InterceptScenario &scenario) {
    if (scenario.secret_sets.size() < 2) {
        throw ConfigError("intercept needs at least two secret sets to compare");
    }
    if (scenario.tap_position < 2 || scenario.tap_position > scenario.t) {
        throw ConfigError("tap position must be in 2.." + std::to_string(scenario.t));
    }
    if (scenario.probes == 0) {
        throw ConfigError("intercept needs at least one probe");
    }
    const std::uint64_t d = scenario.d;
    const std::size_t tapped = scenario.tap_position - 1;
    const MeasuringTap tap(tapped);

    AttackReport report;
    report.scenario = "intercept";
    report.shots = scenario.probes;
    report.d = d;
    report.baseline = 1.0 / static_cast<double>(d);

    std::size_t hits = 0;
    for (std::size_t s = 0; s < scenario.secret_sets.size(); ++s) {
        RunConfig config;
        config.secrets = scenario.secret_sets[s];
        config.n = scenario.n;
        config.t = scenario.t;
        config.d = d;
        config.allow_any_prime = true;
        config.validate();
        const auto points = config.points();
        const std::vector<FieldElement> qualified_points(points.begin(), points.begin() + config.t);
        const std::uint64_t set_seed = derive_seed(scenario.seed, s);

        std::vector<std::uint32_t> seen(scenario.probes);
        std::vector<std::uint8_t> hit(scenario.probes);
        const std::size_t blocks = (scenario.probes + kShotBlock - 1) / kShotBlock;
        internal::parallel_for(blocks, [&](std::size_t b) {
            const std::size_t end = std::min(scenario.probes, (b + 1) * kShotBlock);
            for (std::size_t probe = b * kShotBlock; probe < end; ++probe) {
                Rng rng(derive_seed(set_seed, probe));
                ClassicalChannel channel;
                auto players = deal(config, channel, rng);
                PlayerState &victim = players[tapped];
                Shadow target = compute_shadow(combine_local(victim), victim.label, qualified_points);
                std::vector<std::uint32_t> observed;
                distribute_entanglement(config.t, d, 0, &tap, rng, &observed);
                seen[probe] = observed.at(0);
                hit[probe] = observed[0] == target.value.value();
            }
        });
        hits += static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
        report.distributions.push_back({"intercepted[" + join(config.secrets) + "]", empirical_distribution(seen, d)});
    }

    const auto uniform = uniform_distribution(d);
    const double bound = tv_noise_bound(d, scenario.probes);
    const std::size_t sets = report.distributions.size();
    for (std::size_t i = 0; i < sets; ++i) {
        const auto &di = report.distributions[i];
        report.tv_distances.push_back({di.label, "uniform", total_variation(di.probabilities, uniform), bound});
        for (std::size_t j = i + 1; j < sets; ++j) {
            const auto &dj = report.distributions[j];
            report.tv_distances.push_back(
                {di.label, dj.label, total_variation(di.probabilities, dj.probabilities), bound});
        }
    }
    const std::size_t total = scenario.probes * sets;
    report.guess_rate = static_cast<double>(hits) / static_cast<double>(total);
    report.guess_tolerance = guess_rate_tolerance(d, total);
    report.metrics.push_back({"tap_position", static_cast<double>(scenario.tap_position)});
    report.metrics.push_back({"secret_sets", static_cast<double>(sets)});
    report.pass = std::abs(report.guess_rate - report.baseline) <= report.guess_tolerance && all_checks_pass(report);
    return report;
}

std::vector<double> exact_aggregate_distribution(std::uint64_t d, std::span<const Shadow> shadows,
                                                 std::optional<std::size_t> tap_position) {
    const QuditState ghz = prepare_ghz(shadows.size(), d);
    std::vector<double> result(d, 0.0);
    auto accumulate = [&](QuditState state, double weight) {
        apply_player_operations(state, shadows);
        const auto amps = state.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            std::uint64_t digit_sum = 0;
            for (std::size_t rest = i; rest != 0; rest /= d) {
                digit_sum += rest % d;
            }
            result[digit_sum % d] += weight * std::norm(amps[i]);
        }
    };
    if (!tap_position) {
        accumulate(ghz, 1.0);
        return result;
    }
    const auto marginal = ghz.marginal(*tap_position);
    for (std::uint32_t c = 0; c < d; ++c) {
        if (marginal[c] <= 0) {
            continue;
        }
        QuditState collapsed = ghz;
        collapsed.project(*tap_position, c);
        accumulate(std::move(collapsed), marginal[c]);
    }
    return result;
}

AttackReport intercept_resend(const RunConfig &config, std::optional<std::size_t> tap_position) {
    config.validate();
    if (tap_position && (*tap_position < 1 || *tap_position > config.t || *tap_position - 1 == config.initiator)) {
        throw ConfigError("tap position must name a qualified position other than the initiator's");
    }
    const std::uint64_t d = config.d;
    const ProtocolTranscript honest = run_protocol(config);

    AttackReport report;
    report.scenario = "intercept-resend";
    report.shots = config.shots;
    report.d = d;
    report.baseline = 1.0 / static_cast<double>(d);
    const auto honest_dist = sums_distribution(honest.shot_sums, d);
    report.distributions.push_back({"aggregate/honest", honest_dist});

    if (!tap_position) {
        const ProtocolTranscript control = run_protocol(config);
        const bool identical = control.bulletin == honest.bulletin && control.shot_sums == honest.shot_sums;
        const auto control_dist = sums_distribution(control.shot_sums, d);
        report.distributions.push_back({"aggregate/attacked", control_dist});
        report.tv_distances.push_back(
            {"aggregate/attacked", "aggregate/honest", total_variation(control_dist, honest_dist), 0.0});
        report.metrics.push_back({"identical_to_honest", identical ? 1.0 : 0.0});
        report.pass = identical && all_checks_pass(report);
        return report;
    }

    const std::size_t tapped = *tap_position - 1;
    const MeasuringTap tap(tapped);
    const ProtocolTranscript attacked = run_protocol(config, &tap);
    const std::uint64_t target = attacked.shadows[tapped].value.value();

    std::vector<std::uint32_t> seen;
    seen.reserve(config.shots);
    for (const auto &obs : attacked.tap_observations) {
        seen.push_back(obs.at(0));
    }
    const auto hits = std::count(seen.begin(), seen.end(), static_cast<std::uint32_t>(target));
    report.guess_rate = static_cast<double>(hits) / static_cast<double>(seen.size());
    report.guess_tolerance = guess_rate_tolerance(d, seen.size());

    const auto intercepted = empirical_distribution(seen, d);
    const auto exact = exact_aggregate_distribution(d, attacked.shadows, tapped);
    const auto attacked_dist = sums_distribution(attacked.shot_sums, d);
    report.distributions.push_back({"intercepted", intercepted});
    report.distributions.push_back({"aggregate/attacked-exact", exact});
    report.distributions.push_back({"aggregate/attacked", attacked_dist});

    const double bound = tv_noise_bound(d, config.shots);
    report.tv_distances.push_back(
        {"intercepted", "uniform", total_variation(intercepted, uniform_distribution(d)), bound});
    report.tv_distances.push_back(
        {"aggregate/attacked", "aggregate/attacked-exact", total_variation(attacked_dist, exact), bound});

    std::uint64_t expected = 0;
    for (std::uint64_t s : config.secrets) {
        expected = (expected + s) % d;
    }
    report.metrics.push_back({"tap_position", static_cast<double>(*tap_position)});
    report.metrics.push_back({"honest_success", honest_dist[expected]});
    report.metrics.push_back({"attacked_success_exact", exact[expected]});
    report.metrics.push_back({"attacked_success", attacked_dist[expected]});
    report.metrics.push_back({"disturbance", total_variation(exact, point_mass(expected, d))});
    report.pass = std::abs(report.guess_rate - report.baseline) <= report.guess_tolerance && all_checks_pass(report);
    return report;
}

AttackReport collusion_inference(const ProtocolTranscript &run, std::span<const std::size_t> colluders,
                                 std::size_t target_dealer) {
    const RunConfig &config = run.config;
    if (colluders.empty()) {
        throw ConfigError("collusion needs at least one colluder");
    }
    if (colluders.size() >= config.t) {
        throw ConfigError("threshold reached; reconstruction is legitimate");
    }
    if (std::set<std::size_t>(colluders.begin(), colluders.end()).size() != colluders.size()) {
        throw ConfigError("colluder list has repeated players");
    }
    for (std::size_t label : colluders) {
        if (label < 1 || label > config.n) {
            throw ConfigError("colluder " + std::to_string(label) + " outside 1.." + std::to_string(config.n));
        }
    }
    const std::size_t dealers = config.secrets.size();
    if (dealers < 2) {
        throw ConfigError("collusion analysis needs at least two dealers; with one, the published sum is the secret");
    }
    if (target_dealer >= dealers) {
        throw ConfigError("target dealer out of range");
    }
    if (run.bulletin.empty()) {
        throw ConfigError("transcript has no broadcasts");
    }
    const std::uint64_t d = config.d;

    // The coalition's view. Broadcast digits from honest players depend on their
    // shadows only through the total, so conditioning on the published sum
    // captures everything the bulletin reveals.
    const std::uint64_t revealed_sum = aggregate(run.bulletin.front().digits, d).value();
    std::vector<std::vector<Share>> known(dealers);
    for (const auto &m : run.messages) {
        if (m.kind != MessageKind::kShare || !m.share) {
            continue;
        }
        for (std::size_t label : colluders) {
            if (m.receiver != player_name(label)) {
                continue;
            }
            for (std::size_t j = 0; j < dealers; ++j) {
                if (m.sender == dealer_name(j)) {
                    known[j].push_back(*m.share);
                }
            }
        }
    }

    const auto target_counts = consistent_constant_counts(known[target_dealer], config.t, d);
    // Distribution of the other dealers' secret total, as a convolution over Z_d.
    std::vector<double> others = point_mass(0, d);
    for (std::size_t j = 0; j < dealers; ++j) {
        if (j == target_dealer) {
            continue;
        }
        const auto counts = consistent_constant_counts(known[j], config.t, d);
        std::vector<double> next(d, 0.0);
        for (std::uint64_t a = 0; a < d; ++a) {
            for (std::uint64_t b = 0; b < d; ++b) {
                next[(a + b) % d] += others[a] * counts[b];
            }
        }
        others = std::move(next);
    }

    std::vector<double> posterior(d, 0.0);
    double mass = 0;
    std::size_t candidates = 0;
    for (std::uint64_t x = 0; x < d; ++x) {
        posterior[x] = target_counts[x] * others[(revealed_sum + d - x) % d];
        mass += posterior[x];
        candidates += posterior[x] > 0 ? 1 : 0;
    }
    for (auto &p : posterior) {
        p /= mass;
    }

    AttackReport report;
    report.scenario = "collusion";
    report.shots = 0;
    report.d = d;
    report.baseline = 1.0 / static_cast<double>(d);
    report.guess_rate = *std::max_element(posterior.begin(), posterior.end());
    report.guess_tolerance = 1e-12;
    const std::string label = "posterior/" + dealer_name(target_dealer);
    report.distributions.push_back({label, posterior});
    report.tv_distances.push_back({label, "uniform", total_variation(posterior, uniform_distribution(d)), 1e-12});
    report.metrics.push_back({"colluders", static_cast<double>(colluders.size())});
    report.metrics.push_back({"candidates", static_cast<double>(candidates)});
    report.metrics.push_back({"revealed_sum", static_cast<double>(revealed_sum)});
    report.pass = candidates == d && std::abs(report.guess_rate - report.baseline) <= report.guess_tolerance &&
                  all_checks_pass(report);
    return report;
}

BroadcastInference infer_shadows_from_broadcast(std::span<const std::uint32_t> broadcast, std::uint64_t d) {
    const std::size_t t = broadcast.size();
    const std::size_t tuples = checked_state_size(d, t);
    if (tuples > 4096) {
        throw GuardError("broadcast inference enumerates d^t states of d^t amplitudes; d^t must be <= 4096");
    }
    BroadcastInference inference;
    inference.shadow_marginals.assign(t, std::vector<double>(d, 0.0));
    std::vector<std::uint64_t> shadows(t);
    double mass = 0;
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t rest = code;
        for (std::size_t k = t; k-- > 0;) {
            shadows[k] = rest % d;
            rest /= d;
        }
        const double likelihood = std::norm(analytic_post_transform_state(d, shadows).amplitude(broadcast));
        if (likelihood <= 0) {
            continue;
        }
        ++inference.consistent;
        mass += likelihood;
        for (std::size_t k = 0; k < t; ++k) {
            inference.shadow_marginals[k][shadows[k]] += likelihood;
        }
    }
    for (auto &marginal : inference.shadow_marginals) {
        for (auto &p : marginal) {
            p /= mass;
        }
    }
    return inference;
}

void AttackScenario::validate(std::size_t t) const {
    if (probe_shots == 0) {
        throw ConfigError("attack needs at least one probe");
    }
    if (kind == AttackKind::kCollusion) {
        if (target.empty()) {
            throw ConfigError("collusion needs at least one colluder");
        }
        if (target.size() >= t) {
            throw ConfigError("threshold reached; reconstruction is legitimate");
        }
    } else if (target.size() > 1) {
        throw ConfigError("intercept attacks tap a single position");
    }
}

AttackReport run_attack(const AttackScenario &scenario, const RunConfig &base,
                        const std::vector<std::vector<std::uint64_t>> &compare_secrets) {
    scenario.validate(base.t);
    switch (scenario.kind) {
        case AttackKind::kIntercept: {
            InterceptScenario intercept;
            intercept.n = base.n;
            intercept.t = base.t;
            intercept.d = base.d;
            intercept.secret_sets = {base.secrets};
            intercept.secret_sets.insert(intercept.secret_sets.end(), compare_secrets.begin(), compare_secrets.end());
            intercept.tap_position = scenario.target.empty() ? 2 : scenario.target.front();
            intercept.probes = scenario.probe_shots;
            intercept.seed = base.seed;
            return intercept_and_measure(intercept);
        }
        case AttackKind::kInterceptResend: {
            RunConfig config = base;
            config.shots = scenario.probe_shots;
            std::optional<std::size_t> tap = 2;
            if (!scenario.target.empty()) {
                tap = scenario.target.front() == 0 ? std::nullopt : std::optional(scenario.target.front());
            }
            return intercept_resend(config, tap);
        }
        case AttackKind::kCollusion: {
            RunConfig config = base;
            config.shots = 1;
            return collusion_inference(run_protocol(config), scenario.target);
        }
    }
    throw ConfigError("unknown attack kind");
}

}  // namespace qsms
