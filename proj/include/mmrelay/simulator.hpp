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

#include "mmrelay/scenario.hpp"
#include "mmrelay/throughput.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mmrelay {

/// How LOS states are sampled within a slot.
///
/// Decoupled: every reception draws its own states for its desired and
/// interfering links, which is the independence the analysis assumes.
/// Physical: one draw per directed link per slot, shared by all receptions.
enum class LosMode { Decoupled, Physical };

std::string_view to_string(LosMode m);
LosMode parse_los_mode(std::string_view s);

struct SimOptions
{
    std::uint64_t n_slots = 1'000'000;
    std::uint64_t seed = 1;
    LosMode mode = LosMode::Decoupled;
    int batches = 40;
};

/// A value with its batch-means standard error.
struct Estimate
{
    double value = 0.0;
    double std_error = 0.0;
};

struct SimStats
{
    std::uint64_t slots = 0;
    std::uint64_t warmup_slots = 0;
    std::uint64_t measured_slots = 0;
    int batches = 0;
    std::uint64_t seed = 0;
    LosMode mode = LosMode::Decoupled;

    // measured window
    std::uint64_t delivered_direct = 0;
    std::uint64_t delivered_relay = 0;
    Estimate t_sim;       ///< delivered packets per slot
    Estimate lambda_sim;  ///< packets accepted by the relay per slot
    Estimate mu_sim;      ///< departures per slot with a nonempty queue; NaN if never nonempty
    Estimate p_empty_sim; ///< fraction of slots starting with an empty queue
    Estimate drift_sim;   ///< queue growth per slot
    double mean_queue = 0.0;
    std::uint64_t max_queue = 0;

    // whole run
    std::uint64_t enqueued_total = 0;
    std::uint64_t dequeued_total = 0;
    std::uint64_t final_queue = 0;
    double queue_mean_head = 0.0; ///< mean queue over the first tenth of all slots
    double queue_mean_tail = 0.0; ///< mean queue over the last tenth of all slots
};

/// Per-slot view handed to an optional observer.
struct SlotRecord
{
    std::uint64_t slot;
    std::uint64_t queue;
    std::uint64_t enqueued_total;
    std::uint64_t dequeued_total;
    int arrivals;
    bool relay_transmitted;
    bool departed;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

/// Slot-level Monte Carlo run. Identical inputs give bit-identical results.
SimStats simulate(const ScenarioConfig& cfg, const SimOptions& opts, const SlotObserver& observer = {});

struct MetricComparison
{
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool observed = true; ///< false when the simulation never saw the event (e.g. mu with an always-empty queue)
    bool pass = true;
};

struct Comparison
{
    std::vector<MetricComparison> metrics;
    bool regime_mismatch = false; ///< analytic regime disagrees with the empirical drift

    bool all_pass() const;
};

/// z-scores of T, lambda, mu_r and P(Q=0); a metric passes at |z| <= z_limit.
Comparison compare(const ThroughputReport& report, const SimStats& stats, double z_limit = 3.0);

/// Long-run arrival rate implied by the analysis: P(Q=0) lambda0 + P(Q!=0) lambda1.
double analytic_arrival_rate(const QueueSolution& q);

} // namespace mmrelay
