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

#include "oamsq/errors.h"

namespace oamsq {

const char *errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_grid:
            return "invalid grid";
        case Errc::incompatible_grids:
            return "incompatible grids";
        case Errc::not_normalized:
            return "not normalized";
        case Errc::bad_index:
            return "bad mode index";
        case Errc::out_of_range:
            return "out of range";
        case Errc::above_threshold:
            return "above threshold";
        case Errc::unreachable_target:
            return "unreachable target";
        case Errc::insufficient_cutoff:
            return "insufficient cutoff";
        case Errc::not_unitary:
            return "not unitary";
        case Errc::bad_labels:
            return "bad mode labels";
        case Errc::insufficient_data:
            return "insufficient data";
        case Errc::linearization_invalid:
            return "linearization invalid";
    }
    return "unknown";
}

}  // namespace oamsq
