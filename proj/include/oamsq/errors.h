// Copyright 2026 The oamsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OAMSQ_ERRORS_H
#define OAMSQ_ERRORS_H

#include <stdexcept>
#include <string>

namespace oamsq {

enum class Errc {
    invalid_grid,
    incompatible_grids,
    not_normalized,
    bad_index,
    out_of_range,
    above_threshold,
    unreachable_target,
    insufficient_cutoff,
    not_unitary,
    bad_labels,
    insufficient_data,
    linearization_invalid,
};

const char *errc_name(Errc code);

/// A physics-domain failure: the inputs are well formed but describe
/// something the model cannot represent (above threshold, unreachable
/// squeezing target, non-unitary mode map, ...).
class DomainError : public std::domain_error {
   public:
    DomainError(Errc code, const std::string &what)
        : std::domain_error(std::string(errc_name(code)) + ": " + what), code_(code) {
    }
    Errc code() const noexcept {
        return code_;
    }

   private:
    Errc code_;
};

/// A scenario/config schema violation. `field` is the dotted path of the
/// offending entry, e.g. "chain.eta_det".
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {
    }
    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

}  // namespace oamsq

#endif
