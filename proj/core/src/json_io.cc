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

#include "qsms/json_io.h"

#include <set>
#include <string>

#include "qsms/error.h"

namespace qsms {

using nlohmann::ordered_json;

ordered_json to_json(const Share &share) {
    return ordered_json{{"x", share.x.value()}, {"value", share.value.value()}, {"modulus", share.value.modulus()}};
}

ordered_json to_json(std::span<const Share> shares) {
    ordered_json out = ordered_json::array();
    for (const auto &s : shares) {
        out.push_back(to_json(s));
    }
    return out;
}

ordered_json to_json(const RunConfig &config) {
    ordered_json points = ordered_json::array();
    for (const auto &x : config.points()) {
        points.push_back(x.value());
    }
    return ordered_json{
        {"secrets", config.secrets},
        {"n", config.n},
        {"t", config.t},
        {"d", config.d},
        {"allow_any_prime", config.allow_any_prime},
        {"qualified", config.qualified_set()},
        {"evaluation_points", points},
        {"polynomials", config.polynomials},
        {"initiator", config.initiator},
        {"shots", config.shots},
        {"seed", config.seed},
    };
}

ordered_json to_json(const Histogram &histogram) {
    ordered_json counts = ordered_json::object();
    for (const auto &[index, count] : histogram.counts) {
        counts[outcome_label(histogram.digits_of(index))] = count;
    }
    return ordered_json{
        {"d", histogram.d},
        {"t", histogram.t},
        {"shots", histogram.shots},
        {"seed", histogram.seed},
        {"counts", counts},
    };
}

namespace {

std::string_view kind_name(MessageKind kind) {
    return kind == MessageKind::kShare ? "share" : "qudit";
}

}  // namespace

ordered_json to_json(const ProtocolTranscript &transcript) {
    const RunConfig &config = transcript.config;

    // Dealer rows are recovered from the message log since players discard them.
    ordered_json shares = ordered_json::object();
    for (std::size_t j = 0; j < config.secrets.size(); ++j) {
        std::vector<Share> row;
        for (const auto &m : transcript.messages) {
            if (m.kind == MessageKind::kShare && m.sender == dealer_name(j) && m.share) {
                row.push_back(*m.share);
            }
        }
        shares[dealer_name(j)] = to_json(std::span<const Share>(row));
    }
    std::vector<Share> combined;
    for (const auto &p : transcript.players) {
        if (p.combined) {
            combined.push_back(*p.combined);
        }
    }
    shares["combined"] = to_json(std::span<const Share>(combined));

    ordered_json shadows = ordered_json::array();
    for (const auto &s : transcript.shadows) {
        shadows.push_back(ordered_json{{"player", s.owner}, {"value", s.value.value()}});
    }

    ordered_json messages = ordered_json::array();
    for (const auto &m : transcript.messages) {
        messages.push_back(ordered_json{
            {"from", m.sender},
            {"to", m.receiver},
            {"kind", kind_name(m.kind)},
            {"payload", m.share ? to_json(*m.share) : ordered_json(nullptr)},
        });
    }

    ordered_json out;
    out["config"] = to_json(config);
    out["shares"] = shares;
    out["shadows"] = shadows;
    out["messages"] = messages;
    out["histogram"] = to_json(transcript.histogram);
    out["result"] = transcript.result ? ordered_json(*transcript.result) : ordered_json(nullptr);
    out["result_binary"] = transcript.result ? ordered_json(to_binary(*transcript.result)) : ordered_json(nullptr);
    out["all_shots_agree"] = transcript.all_shots_agree();
    out["seed"] = config.seed;
    return out;
}

ordered_json to_json(const AttackReport &report) {
    ordered_json distributions = ordered_json::object();
    for (const auto &d : report.distributions) {
        distributions[d.label] = d.probabilities;
    }
    ordered_json distances = ordered_json::array();
    for (const auto &c : report.tv_distances) {
        distances.push_back(ordered_json{
            {"between", {c.first, c.second}},
            {"tv", c.tv},
            {"bound", c.bound},
            {"pass", c.passed()},
        });
    }
    ordered_json metrics = ordered_json::object();
    for (const auto &m : report.metrics) {
        metrics[m.name] = m.value;
    }
    return ordered_json{
        {"scenario", report.scenario},
        {"shots", report.shots},
        {"d", report.d},
        {"distributions", distributions},
        {"tv_distances", distances},
        {"guess_rate", report.guess_rate},
        {"baseline", report.baseline},
        {"guess_tolerance", report.guess_tolerance},
        {"metrics", metrics},
        {"pass", report.pass},
    };
}

RunConfig run_config_from_json(const nlohmann::json &doc, RunConfig base) {
    static const std::set<std::string> known{"secrets",     "n",        "t",         "d",     "allow_any_prime",
                                             "qualified",   "evaluation_points",    "polynomials",
                                             "initiator",   "shots",    "seed"};
    if (!doc.is_object()) {
        throw ConfigError("config document must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    try {
        auto read = [&](const char *key, auto &field) {
            if (doc.contains(key)) {
                doc.at(key).get_to(field);
            }
        };
        read("secrets", base.secrets);
        read("n", base.n);
        read("t", base.t);
        read("d", base.d);
        read("allow_any_prime", base.allow_any_prime);
        read("qualified", base.qualified);
        read("evaluation_points", base.evaluation_points);
        read("polynomials", base.polynomials);
        read("initiator", base.initiator);
        read("shots", base.shots);
        read("seed", base.seed);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return base;
}

}  // namespace qsms
