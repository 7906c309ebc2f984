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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsms/adversary.h"
#include "qsms/error.h"
#include "qsms/json_io.h"
#include "qsms/protocol.h"
#include "qsms/qudit.h"

namespace qsms::cli {
namespace {

using nlohmann::ordered_json;

struct Flags {
    std::string config_path;
    std::vector<std::uint64_t> secrets;
    std::size_t n = 0;
    std::size_t t = 0;
    std::uint64_t d = 0;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> qualified;
    std::string poly;
    bool allow_any_prime = false;
    std::string output;
    std::string format = "pretty";

    // attack
    std::string kind = "intercept";
    std::size_t tap = 0;
    std::vector<std::size_t> colluders;
    std::string compare = "7,9";

    // verify
    std::vector<std::uint64_t> shadows;
};

std::uint64_t parse_number(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError("bad number '" + std::string(text) + "' in " + std::string(what));
    }
    return value;
}

// "2,1,1;3,1,1" -> {{2,1,1},{3,1,1}}
std::vector<std::vector<std::uint64_t>> parse_lists(const std::string &text, std::string_view what) {
    std::vector<std::vector<std::uint64_t>> lists;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<std::uint64_t> row;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            row.push_back(parse_number(item, what));
        }
        if (row.empty()) {
            throw ConfigError("empty list in " + std::string(what));
        }
        lists.push_back(std::move(row));
    }
    if (lists.empty()) {
        throw ConfigError(std::string(what) + " is empty");
    }
    return lists;
}

void add_config_options(CLI::App *sub, Flags &f) {
    sub->add_option("--config", f.config_path, "JSON run configuration; flags override its fields")
        ->check(CLI::ExistingFile);
    sub->add_option("--secrets", f.secrets, "Dealer secrets, comma separated")->delimiter(',');
    sub->add_option("--n", f.n, "Number of players");
    sub->add_option("--t", f.t, "Threshold");
    sub->add_option("--d", f.d, "Prime field size (default: smallest usable prime above n)");
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--qualified", f.qualified, "Qualified player labels, comma separated")->delimiter(',');
    sub->add_option("--poly", f.poly, "Pinned polynomial coefficients, e.g. 2,1,1;3,1,1");
    sub->add_flag("--allow-any-prime", f.allow_any_prime, "Accept primes outside [n, 2n]");
}

void add_output_options(CLI::App *sub, Flags &f) {
    sub->add_option("--output", f.output, "Output JSON path");
    sub->add_option("--format", f.format, "Console format")->check(CLI::IsMember({"json", "csv", "pretty"}));
}

RunConfig build_config(const CLI::App *sub, const Flags &f, RunConfig config) {
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error &e) {
            throw ConfigError(f.config_path + ": " + e.what());
        }
        config = run_config_from_json(doc, config);
    }
    if (sub->count("--secrets")) {
        config.secrets = f.secrets;
        if (!sub->count("--poly")) {
            config.polynomials.clear();
        }
    }
    if (sub->count("--n")) {
        config.n = f.n;
    }
    if (sub->count("--t")) {
        config.t = f.t;
    }
    if (sub->count("--d")) {
        config.d = f.d;
    }
    if (sub->count("--shots")) {
        config.shots = f.shots;
    }
    if (sub->count("--seed")) {
        config.seed = f.seed;
    }
    if (sub->count("--qualified")) {
        config.qualified = f.qualified;
        config.initiator = 0;
    }
    if (sub->count("--poly")) {
        config.polynomials = parse_lists(f.poly, "--poly");
    }
    if (f.allow_any_prime) {
        config.allow_any_prime = true;
    }
    if (config.d == 0 && config.n > 0) {
        config.d = smallest_shareable_prime(config.n);
    }
    if (config.secrets.empty()) {
        throw ConfigError("no secrets given (use --secrets or --config)");
    }
    config.validate();
    return config;
}

std::filesystem::path output_path(const Flags &f, const std::string &default_name) {
    if (!f.output.empty()) {
        return f.output;
    }
    const char *dir = std::getenv("QSMS_OUTPUT_DIR");
    return std::filesystem::path(dir && *dir ? dir : ".") / default_name;
}

void write_json(const std::filesystem::path &path, const ordered_json &doc) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream file(path);
    file << doc.dump(2) << '\n';
    if (!file) {
        throw ConfigError("cannot write " + path.string());
    }
}

std::string row_label(std::size_t dealer, std::size_t dealers) {
    if (dealers <= 2) {
        return dealer == 0 ? "f(x_i)" : "g(x_i)";
    }
    return "f" + std::to_string(dealer + 1) + "(x_i)";
}

// Dealer rows, then the combined row, one column per player.
void print_share_table(const ordered_json &shares, std::size_t dealers, std::ostream &out) {
    const auto &combined = shares["combined"];
    out << std::left << std::setw(10) << "Players";
    for (const auto &s : combined) {
        out << std::right << std::setw(5) << ("P" + std::to_string(s["x"].get<std::uint64_t>()));
    }
    out << '\n';
    auto row = [&](const std::string &label, const ordered_json &cells) {
        out << std::left << std::setw(10) << label;
        for (const auto &s : cells) {
            out << std::right << std::setw(5) << s["value"].get<std::uint64_t>();
        }
        out << '\n';
    };
    for (std::size_t j = 0; j < dealers; ++j) {
        row(row_label(j, dealers), shares[dealer_name(j)]);
    }
    row("h(x_i)", combined);
}

void print_histogram_csv(const Histogram &histogram, std::ostream &out) {
    out << "outcome,count\n";
    for (const auto &[index, count] : histogram.counts) {
        out << outcome_label(histogram.digits_of(index)) << ',' << count << '\n';
    }
}

void print_transcript(const ProtocolTranscript &run, const ordered_json &doc, const std::string &format,
                      std::ostream &out) {
    if (format == "json") {
        out << doc.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        print_histogram_csv(run.histogram, out);
        return;
    }
    print_share_table(doc["shares"], run.config.secrets.size(), out);
    out << "shadows:";
    for (const auto &s : run.shadows) {
        out << ' ' << player_name(s.owner) << '=' << s.value.value();
    }
    out << '\n';
    out << "shots: " << run.histogram.shots << ", distinct outcomes: " << run.histogram.counts.size() << '\n';
    if (run.result) {
        out << "result: " << *run.result << " (binary " << to_binary(*run.result) << ")\n";
    } else {
        out << "result: shots disagree\n";
    }
}

int cmd_run(const CLI::App *sub, const Flags &f, std::ostream &out, std::ostream &err) {
    RunConfig config = build_config(sub, f, RunConfig{});
    auto run = run_protocol(config);
    auto doc = to_json(run);
    auto path = output_path(f, "transcript.json");
    write_json(path, doc);
    print_transcript(run, doc, f.format, out);
    if (f.format == "pretty") {
        out << "transcript: " << path.string() << '\n';
    }
    if (!run.result) {
        err << "error: shots disagree on the aggregate\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_demo(const Flags &f, std::ostream &out, std::ostream &err) {
    RunConfig config = demo_config();
    auto run = run_protocol(config);
    auto doc = to_json(run);
    auto path = output_path(f, "demo_transcript.json");
    write_json(path, doc);
    print_transcript(run, doc, f.format, out);

    std::vector<std::string> diff;
    auto check_row = [&](const std::string &label, const ordered_json &cells, std::vector<std::uint64_t> want) {
        std::vector<std::uint64_t> got;
        for (const auto &s : cells) {
            got.push_back(s["value"].get<std::uint64_t>());
        }
        if (got != want) {
            std::ostringstream line;
            line << label << ": expected";
            for (auto v : want) line << ' ' << v;
            line << ", got";
            for (auto v : got) line << ' ' << v;
            diff.push_back(line.str());
        }
    };
    check_row("f", doc["shares"]["D1"], {4, 8, 3, 0, 10, 0, 3});
    check_row("g", doc["shares"]["D2"], {5, 9, 4, 1, 0, 1, 4});
    check_row("h", doc["shares"]["combined"], {9, 6, 7, 1, 10, 1, 7});
    std::vector<std::uint64_t> shadows;
    for (const auto &s : run.shadows) {
        shadows.push_back(s.value.value());
    }
    if (shadows != std::vector<std::uint64_t>{5, 4, 7}) {
        diff.push_back("shadows differ from 5 4 7");
    }
    if (run.result != std::optional<std::uint64_t>(5)) {
        diff.push_back("result: expected 5, got " + (run.result ? std::to_string(*run.result) : "none"));
    } else if (to_binary(*run.result) != "101") {
        diff.push_back("binary: expected 101, got " + to_binary(*run.result));
    }
    for (const auto &line : diff) {
        err << "mismatch: " << line << '\n';
    }
    return diff.empty() ? kExitOk : kExitFailed;
}

void print_report(const AttackReport &report, const std::string &format, std::ostream &out) {
    if (format == "json") {
        out << to_json(report).dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "distribution";
        for (std::uint64_t k = 0; k < report.d; ++k) {
            out << ',' << k;
        }
        out << '\n';
        for (const auto &dist : report.distributions) {
            out << dist.label;
            for (double p : dist.probabilities) {
                out << ',' << p;
            }
            out << '\n';
        }
        return;
    }
    out << "attack: " << report.scenario << " (d=" << report.d << ", shots=" << report.shots << ")\n";
    for (const auto &check : report.tv_distances) {
        out << "  tv " << check.first << " vs " << check.second << ": " << check.tv << " (bound " << check.bound
            << ") " << (check.passed() ? "ok" : "FAIL") << '\n';
    }
    if (report.guess_tolerance > 0) {
        out << "  guess rate " << report.guess_rate << ", baseline " << report.baseline << " +/- "
            << report.guess_tolerance << '\n';
    }
    for (const auto &m : report.metrics) {
        out << "  " << m.name << ": " << m.value << '\n';
    }
    out << (report.pass ? "pass" : "FAIL") << '\n';
}

int cmd_attack(const CLI::App *sub, const Flags &f, std::ostream &out, std::ostream &err) {
    AttackScenario scenario;
    scenario.kind = parse_attack_kind(f.kind);
    if (sub->count("--shots")) {
        scenario.probe_shots = f.shots;
    } else if (scenario.kind == AttackKind::kInterceptResend) {
        scenario.probe_shots = 8192;
    }
    if (scenario.kind == AttackKind::kCollusion) {
        if (sub->count("--tap") || sub->count("--compare")) {
            throw ConfigError("--tap and --compare do not apply to collusion");
        }
        if (!sub->count("--colluders")) {
            throw ConfigError("collusion needs --colluders");
        }
        scenario.target = f.colluders;
    } else {
        if (sub->count("--colluders")) {
            throw ConfigError("--colluders only applies to collusion");
        }
        if (sub->count("--tap")) {
            scenario.target = {f.tap};
        }
        if (scenario.kind == AttackKind::kInterceptResend && sub->count("--compare")) {
            throw ConfigError("--compare only applies to intercept");
        }
    }

    RunConfig base = demo_config();
    base.shots = 1;
    // Flags describing a different setup drop the demo's pinned polynomials.
    if (sub->count("--n") || sub->count("--t") || sub->count("--d")) {
        base.polynomials.clear();
        base.qualified.clear();
        if (!sub->count("--d")) {
            base.d = 0;
        }
    }
    RunConfig config = build_config(sub, f, base);
    scenario.validate(config.t);

    auto compare = parse_lists(f.compare, "--compare");
    auto report = run_attack(scenario, config, compare);
    auto path = output_path(f, "attack_" + std::string(attack_kind_name(scenario.kind)) + ".json");
    write_json(path, to_json(report));
    print_report(report, f.format, out);
    if (!report.pass) {
        err << "error: attack report failed its bounds\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_verify(const CLI::App *sub, const Flags &f, std::ostream &out, std::ostream &err) {
    if (!sub->count("--d") || f.shadows.empty()) {
        throw ConfigError("verify needs --d and --shadows");
    }
    if (sub->count("--t") && f.t != f.shadows.size()) {
        throw ConfigError("--t does not match the number of shadows");
    }
    checked_state_size(f.d, f.shadows.size());

    std::vector<Shadow> shadows;
    std::vector<std::uint64_t> reduced;
    for (std::size_t u = 0; u < f.shadows.size(); ++u) {
        shadows.push_back(Shadow{u + 1, FieldElement(f.shadows[u], f.d)});
        reduced.push_back(shadows.back().value.value());
    }
    QuditState simulated = prepare_ghz(shadows.size(), f.d);
    apply_player_operations(simulated, shadows);
    QuditState analytic = analytic_post_transform_state(f.d, reduced);

    double max_diff = 0.0;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < simulated.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(simulated.amplitudes()[i] - analytic.amplitudes()[i]));
        if (std::norm(simulated.amplitudes()[i]) > kMeasurementTolerance) {
            support.push_back(i);
        }
    }
    const bool pass = max_diff <= kOperationTolerance;

    if (f.format == "json") {
        ordered_json doc;
        doc["d"] = f.d;
        doc["t"] = shadows.size();
        doc["shadows"] = reduced;
        doc["max_amplitude_difference"] = max_diff;
        doc["support_size"] = support.size();
        doc["pass"] = pass;
        out << doc.dump(2) << '\n';
    } else {
        out << "max amplitude difference: " << max_diff << '\n';
        out << "support size: " << support.size() << '\n';
        if (support.size() <= 64) {
            out << "support:";
            for (auto i : support) {
                out << ' ' << outcome_label(simulated.digits_of(i));
            }
            out << '\n';
        }
        out << (pass ? "pass" : "FAIL") << '\n';
    }
    if (!pass) {
        err << "error: simulated state differs from the closed form\n";
        return kExitFailed;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Threshold quantum secure multiparty summation simulator", "qsms"};
    app.require_subcommand(1);
    Flags f;

    auto *run = app.add_subcommand("run", "Run the protocol and write a transcript");
    add_config_options(run, f);
    run->add_option("--shots", f.shots, "Protocol repetitions")->check(CLI::PositiveNumber);
    add_output_options(run, f);

    auto *demo = app.add_subcommand("demo", "Reproduce the worked example (t=3, n=7, d=11)");
    add_output_options(demo, f);

    auto *attack = app.add_subcommand("attack", "Run an adversary scenario");
    add_config_options(attack, f);
    attack->add_option("--kind", f.kind, "intercept, intercept-resend or collusion")
        ->check(CLI::IsMember({"intercept", "intercept-resend", "collusion"}));
    attack->add_option("--shots", f.shots, "Probe count")->check(CLI::PositiveNumber);
    attack->add_option("--tap", f.tap, "Tapped position in the qualified set (1-based; 0 = control run)");
    attack->add_option("--colluders", f.colluders, "Colluding player labels")->delimiter(',');
    attack->add_option("--compare", f.compare, "Secret sets to compare against, e.g. 7,9;1,1");
    add_output_options(attack, f);

    auto *verify = app.add_subcommand("verify", "Compare the simulated state with its closed form");
    verify->add_option("--d", f.d, "Qudit dimension (prime)");
    verify->add_option("--t", f.t, "Number of qudits");
    verify->add_option("--shadows", f.shadows, "Shadows, comma separated")->delimiter(',');
    verify->add_option("--format", f.format, "Console format")->check(CLI::IsMember({"json", "pretty"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run, f, out, err);
        }
        if (demo->parsed()) {
            return cmd_demo(f, out, err);
        }
        if (attack->parsed()) {
            return cmd_attack(attack, f, out, err);
        }
        return cmd_verify(verify, f, out, err);
    } catch (const GuardError &e) {
        err << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

}  // namespace qsms::cli
