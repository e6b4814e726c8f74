// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "mmrelay/relay_queue.hpp"
#include "mmrelay/scenario.hpp"
#include "mmrelay/sinr_success.hpp"

#include <string_view>

namespace mmrelay {

enum class Regime { Stable, Unstable };

std::string_view to_string(Regime r);

/// Per-user and aggregate throughput for one scenario, in packets per slot.
struct ThroughputReport
{
    double t_ud0 = 0.0;   ///< direct delivery, relay silent
    double t_ud1 = 0.0;   ///< direct delivery, relay interfering
    double t_ur_fd = 0.0; ///< FD packets accepted by the relay
    double t_ur0 = 0.0;   ///< BR packets accepted by the relay, relay silent
    double t_ur1 = 0.0;   ///< BR packets accepted by the relay, relay interfering
    double t_ud = 0.0;
    double t_ur = 0.0;
    double t_aggregate = 0.0;
    double t_d = 0.0; ///< aggregate delivered directly, N * t_ud
    double t_r = 0.0; ///< aggregate credited via the relay
    Regime regime = Regime::Stable;
    QueueSolution queue;

    /// Probability that the relay interferes in a slot, q_r * P(Q != 0).
    double relay_busy = 0.0;
};

/// T_ud^0 (relay silent) or T_ud^1 (relay interfering) for one tagged UE.
double per_user_direct(const ScenarioConfig& cfg, const SuccessTable& table, bool relay_interfering);

/// The three ingredients of T_ur before mixing over the relay state.
struct RelayedTerms
{
    double fd = 0.0;
    double br_silent = 0.0;
    double br_busy = 0.0;

    double mix(double relay_busy) const { return fd + (1.0 - relay_busy) * br_silent + relay_busy * br_busy; }
};

RelayedTerms per_user_relayed_terms(const ScenarioConfig& cfg, const SuccessTable& table);

/// T_ur mixed with q_r P(Q != 0). When the queue is unstable this is the
/// acceptance rate with the relay busy whenever it may be, and is not credited.
double per_user_relayed(const ScenarioConfig& cfg, const SuccessTable& table);

/// T = N (T_ud + T_ur) when stable, T = N T_ud + mu_r otherwise.
ThroughputReport aggregate_throughput(const ScenarioConfig& cfg, const SuccessTable& table);
ThroughputReport aggregate_throughput(const ScenarioConfig& cfg);

/// Assembles a report from precomputed parts. Exposed for boundary studies.
ThroughputReport assemble_report(const ScenarioConfig& cfg, const QueueSolution& queue, double t_ud0, double t_ud1,
                                 const RelayedTerms& relayed);

} // namespace mmrelay
