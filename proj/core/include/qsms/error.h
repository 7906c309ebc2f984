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

#ifndef QSMS_ERROR_H_
#define QSMS_ERROR_H_

#include <stdexcept>
#include <string>

namespace qsms {

/// Invalid run configuration or attack scenario. Raised before any work starts.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The state-vector engine refused a request that would exceed its resource guard.
class GuardError : public std::length_error {
   public:
    using std::length_error::length_error;
};

}  // namespace qsms

#endif  // QSMS_ERROR_H_
