// Copyright 2026 The qremote Authors
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

#include "qremote/analysis_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qremote/errors.hpp"

namespace qrc::bounds {

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::AtLeast:
            return ">=";
        case Direction::AtMost:
            return "<=";
        default:
            return "==";
    }
}

BoundCheck make_check(std::string name, double measured, Direction direction, double bound, double tolerance) {
    BoundCheck c{std::move(name), measured, bound, direction, tolerance, false};
    switch (direction) {
        case Direction::AtLeast:
            c.passed = measured >= bound - tolerance;
            break;
        case Direction::AtMost:
            c.passed = measured <= bound + tolerance;
            break;
        case Direction::Equal:
            c.passed = std::abs(measured - bound) <= tolerance;
            break;
    }
    return c;
}

std::vector<BoundCheck> check_lower_bounds(const ResourceLedger& ledger) {
    return {
        make_check("ebits_lower_bound", ledger.ebits_consumed, Direction::AtLeast, kMinEbits, 0.0),
        make_check("cbits_a_to_b_lower_bound", ledger.cbits_a_to_b, Direction::AtLeast, kMinCbitsAliceToBob, 0.0),
    };
}

BoundCheck check_upper_bound(const ResourceLedger& ledger) {
    const double ratio = std::max(static_cast<double>(ledger.total_cbits()) / kUpperBoundCbits,
                                  static_cast<double>(ledger.ebits_consumed) / kUpperBoundEbits);
    return make_check("resources_upper_bound", ratio, Direction::AtMost, 1.0, 0.0);
}

double bipartite_entanglement(const PureState& state, std::span<const Label> side) {
    if (std::abs(state.amplitudes().norm() - 1.0) > PureState::kNormTolerance) {
        throw ValidationError("bipartite_entanglement requires a normalized pure state");
    }
    return linalg::von_neumann_entropy(state.reduced(side));
}

bool all_passed(std::span<const BoundCheck> checks) {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

}  // namespace qrc::bounds
