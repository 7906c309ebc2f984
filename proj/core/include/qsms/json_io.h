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

#ifndef QSMS_JSON_IO_H_
#define QSMS_JSON_IO_H_

#include <span>

#include <nlohmann/json.hpp>

#include "qsms/adversary.h"
#include "qsms/protocol.h"
#include "qsms/qudit.h"
#include "qsms/shamir.h"

namespace qsms {

/// {"x": .., "value": .., "modulus": ..}
nlohmann::ordered_json to_json(const Share &share);
nlohmann::ordered_json to_json(std::span<const Share> shares);
nlohmann::ordered_json to_json(const RunConfig &config);
/// {"d", "t", "shots", "seed", "counts": {"c1-c2-...": count}}, counts in basis order.
nlohmann::ordered_json to_json(const Histogram &histogram);
/// Sections: config, shares, shadows, messages, histogram, result,
/// result_binary, all_shots_agree, seed. Key order is fixed.
nlohmann::ordered_json to_json(const ProtocolTranscript &transcript);
/// {scenario, shots, d, distributions, tv_distances, guess_rate, baseline,
///  guess_tolerance, metrics, pass}
nlohmann::ordered_json to_json(const AttackReport &report);

/// Reads RunConfig fields present in `doc` on top of `base`. Unknown keys or
/// ill-typed values throw ConfigError.
RunConfig run_config_from_json(const nlohmann::json &doc, RunConfig base = {});

}  // namespace qsms

#endif  // QSMS_JSON_IO_H_
