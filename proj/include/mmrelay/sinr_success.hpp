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

#include "mmrelay/geometry_channel.hpp"
#include "mmrelay/scenario.hpp"

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace mmrelay {

enum class Scheme { Fd, Br };

/// Interferers seen by one reception, counted by class.
///
/// n_f counts FD transmissions aimed at the same receiver; FD transmissions
/// aimed at the other receiver never interfere. relay_active only matters at
/// the access point: the relay cancels its own transmission.
struct InterfererProfile
{
    int n_f = 0;
    int n_b = 0;
    bool relay_active = false;

    friend bool operator==(const InterfererProfile&, const InterfererProfile&) = default;
};

/// One LOS/NLOS split of the interferers of an InterfererProfile.
struct LosPartition
{
    int f_los = 0;
    int f_nlos = 0;
    int b_los = 0;
    int b_nlos = 0;
    std::optional<LinkState> relay; ///< set iff the relay interferes
};

/// SINR and LOS-averaged success probabilities for one scenario.
class SinrModel
{
public:
    explicit SinrModel(const ScenarioConfig& cfg);

    const ChannelModel& channel() const noexcept { return channel_; }
    double alpha() const noexcept { return alpha_; }
    double threshold_linear() const noexcept { return gamma_; }

    /// SINR of the desired reception given the state of every link.
    double sinr_linear(LinkKind desired, LinkState desired_state, Scheme scheme, const LosPartition& partition) const;

    /// Probability that the SINR clears the threshold, averaged over the LOS
    /// state of the desired link and over the binomial LOS splits of the FD
    /// and BR interferers. Uncached.
    double success_probability(LinkKind desired, Scheme scheme, InterfererProfile profile) const;

    double transmit_gain(Scheme s) const noexcept { return s == Scheme::Fd ? channel_.fd_gain() : channel_.br_gain(); }

    /// The link that carries an interfering UE's signal to the desired receiver.
    static LinkKind interferer_link(LinkKind desired) noexcept
    {
        return desired == LinkKind::UeToRelay ? LinkKind::UeToRelay : LinkKind::UeToAp;
    }

private:
    ChannelModel channel_;
    double alpha_;
    double gamma_;
};

/// Memoized success probabilities keyed by (link, scheme, profile).
///
/// Safe for concurrent use; a racing first evaluation of one key computes
/// the same value on every thread and only one insert wins.
class SuccessTable
{
public:
    explicit SuccessTable(const ScenarioConfig& cfg) : model_(cfg) {}

    const SinrModel& model() const noexcept { return model_; }

    double get(LinkKind desired, Scheme scheme, InterfererProfile profile) const;

    /// P^f_{ur/...}: FD packet at the relay with n_f FD-to-relay and n_b BR interferers.
    double fd_to_relay(int n_f, int n_b) const { return get(LinkKind::UeToRelay, Scheme::Fd, {n_f, n_b, false}); }
    double fd_to_ap(int n_f, int n_b, bool relay) const { return get(LinkKind::UeToAp, Scheme::Fd, {n_f, n_b, relay}); }
    double br_at_relay(int n_f, int n_b) const { return get(LinkKind::UeToRelay, Scheme::Br, {n_f, n_b, false}); }
    double br_at_ap(int n_f, int n_b, bool relay) const { return get(LinkKind::UeToAp, Scheme::Br, {n_f, n_b, relay}); }
    double relay_to_ap(int n_f, int n_b) const { return get(LinkKind::RelayToAp, Scheme::Fd, {n_f, n_b, false}); }

    std::size_t size() const;

private:
    SinrModel model_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::uint64_t, double> cache_;
};

} // namespace mmrelay
