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

#ifndef QREMOTE_ANALYSIS_BOUNDS_HPP
#define QREMOTE_ANALYSIS_BOUNDS_HPP

#include <span>
#include <string>
#include <vector>

#include "qremote/locc_runtime.hpp"
#include "qremote/pure_state.hpp"

namespace qrc::bounds {

using linalg::Label;
using linalg::PureState;
using locc::ResourceLedger;

/// Resource floor for universal U-teleportation: shared ebits.
inline constexpr int kMinEbits = 2;
/// Resource floor for universal U-teleportation: bits from Alice to Bob.
inline constexpr int kMinCbitsAliceToBob = 2;
/// Resources of bidirectional state teleportation, the best known scheme.
inline constexpr int kUpperBoundCbits = 4;
inline constexpr int kUpperBoundEbits = 2;
/// Tolerance applied to entropy comparisons; ledger comparisons are exact.
inline constexpr double kEntropyTolerance = 1e-9;

enum class Direction { AtLeast, AtMost, Equal };

std::string_view to_string(Direction d);

struct BoundCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    Direction direction = Direction::AtLeast;
    double tolerance = 0.0;
    bool passed = false;
};

/// Evaluates `measured (direction) bound` within `tolerance`.
BoundCheck make_check(std::string name, double measured, Direction direction, double bound, double tolerance);

/// ebits >= 2 and cbits_a_to_b >= 2.
std::vector<BoundCheck> check_lower_bounds(const ResourceLedger& ledger);

/// Single check that the run fits in 4 classical bits and 2 ebits. The
/// measured value is the larger of total_cbits/4 and ebits/2, compared
/// against 1.
BoundCheck check_upper_bound(const ResourceLedger& ledger);

/// Von Neumann entropy of the reduced state on `side`. Throws
/// ValidationError for an unnormalized state.
double bipartite_entanglement(const PureState& state, std::span<const Label> side);

bool all_passed(std::span<const BoundCheck> checks);

}  // namespace qrc::bounds

#endif  // QREMOTE_ANALYSIS_BOUNDS_HPP
