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
#include "mmrelay/sinr_success.hpp"

#include <vector>

namespace mmrelay {

/// What every UE does in one slot, up to relabeling.
struct SlotConfiguration
{
    int n_fr = 0;   ///< FD towards the relay
    int n_fd = 0;   ///< FD towards the access point
    int n_b = 0;    ///< broadcast
    int n_idle = 0; ///< silent
    bool relay_tx = false;
    double weight = 0.0; ///< multinomial probability of the counts
};

/// All count vectors of n_ues UEs with nonzero multinomial weight in
/// (q_u q_uf q_ur, q_u q_uf q_ud, q_u q_ub, 1 - q_u).
std::vector<SlotConfiguration> enumerate_configurations(const ScenarioConfig& cfg, int n_ues, bool relay_tx);

inline std::vector<SlotConfiguration> enumerate_configurations(const ScenarioConfig& cfg, bool relay_tx)
{
    return enumerate_configurations(cfg, cfg.n_ues, relay_tx);
}

/// Per-UE acceptance and relay departure probabilities within one configuration.
struct ConfigurationOutcome
{
    double fd_arrival;   ///< an FD-to-relay UE is decoded by the relay
    double br_arrival;   ///< a BR UE is decoded by the relay and missed by the AP
    double departure;    ///< the relay's packet is decoded by the AP
};

ConfigurationOutcome configuration_outcome(const SlotConfiguration& c, const SuccessTable& table);

/// Count distribution of packets accepted by the relay in one configuration.
std::vector<double> configuration_arrivals(const SlotConfiguration& c, const SuccessTable& table);

/// Distribution over 0..N accepted packets per slot.
std::vector<double> arrival_distribution(const ScenarioConfig& cfg, const SuccessTable& table, bool relay_tx);

/// B_r: probability that a relay transmission is decoded at the access point.
double service_success_probability(const ScenarioConfig& cfg, const SuccessTable& table);

/// Net per-slot change of the relay queue length.
struct NetChangeDistribution
{
    std::vector<double> p_empty;    ///< index k is +k, k = 0..N
    std::vector<double> p_nonempty; ///< index k is k - 1, k = -1..N

    double empty(int k) const;
    double nonempty(int k) const;
    int n_ues() const noexcept { return static_cast<int>(p_empty.size()) - 1; }
};

/// Arrivals and the departure are mixed per configuration, so their coupling
/// through shared interferers is preserved.
NetChangeDistribution net_change_distribution(const ScenarioConfig& cfg, const SuccessTable& table);

struct StabilityThreshold
{
    double q_r_min = 0.0;      ///< clamped to 1 when never stable
    bool never_stable = false; ///< lambda0 + B_r - A_r <= 0 or ratio >= 1
};

StabilityThreshold stability_threshold(double lambda0, double a_r, double b_r);
StabilityThreshold stability_threshold(const ScenarioConfig& cfg, const SuccessTable& table);

struct QueueSolution
{
    double lambda0 = 0.0; ///< mean arrivals per slot, queue empty
    double lambda1 = 0.0; ///< mean arrivals per slot, queue nonempty
    double a_r = 0.0;     ///< mean arrivals per slot while the relay transmits
    double b_r = 0.0;
    double mu_r = 0.0;
    double q_r_min = 0.0;
    bool never_stable = false;
    double p_empty = 0.0; ///< P(Q = 0); 0 when unstable
    bool stable = false;
};

/// The queue is stable iff q_r > q_r_min, or trivially when nothing ever arrives.
QueueSolution solve_queue(const ScenarioConfig& cfg, const SuccessTable& table);

/// P(Q = 0) from the net-change distribution. Throws std::domain_error when unstable.
double empty_probability(const ScenarioConfig& cfg, const SuccessTable& table);
double empty_probability(const NetChangeDistribution& dist, double lambda0);

/// (mu_r - lambda1) / (mu_r - lambda1 + lambda0)
double empty_probability_drift_form(const QueueSolution& q);

} // namespace mmrelay
