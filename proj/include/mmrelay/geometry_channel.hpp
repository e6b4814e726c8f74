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

#include <array>

namespace mmrelay {

enum class LinkState { Los, Nlos };

/// The three directed links the model needs. UEs never receive.
enum class LinkKind { UeToAp, UeToRelay, RelayToAp };

/// Antenna heights of the two link endpoints, in 3GPP naming.
struct Heights
{
    double bs_m; ///< higher endpoint (access point or relay)
    double ut_m; ///< lower endpoint
};

/// Law of cosines on the UE-centred triangle. Angle in [0, 180] degrees.
double relay_mmap_distance(double d_ur_m, double d_ud_m, double theta_rd_deg);

/// 3GPP TR 38.901 UMi street canyon LOS probability (Table 7.4.2-1).
double los_probability(double d_2d_m);

/// 3GPP TR 38.901 UMi street canyon path loss without shadow fading.
/// NLOS is max(PL_LOS, PL'_NLOS). Throws std::domain_error below 1 m or when
/// the 3D distance is shorter than the height difference.
double path_loss_db(double d_3d_m, double f_c_ghz, LinkState state, Heights heights);

/// Ideal sectored antenna: 2*pi / theta inside the main lobe.
double beam_gain(double theta_bw_deg);

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// One directed link with its path loss resolved for both states.
struct Link
{
    LinkKind kind;
    double distance_2d_m;
    double distance_3d_m;
    double p_los;
    std::array<double, 2> path_loss_db; ///< indexed by LinkState

    double loss_db(LinkState s) const { return path_loss_db[static_cast<int>(s)]; }
};

/// p_t * g_tx * g_rx * 10^(-PL/10)
double received_power_w(const Link& link, LinkState state, double tx_gain, double rx_gain, double p_t_w);

/// Resolved geometry, gains and powers for a scenario.
///
/// Receivers (access point and relay) use the FD beamwidth for every
/// received stream. The relay-to-AP link is LOS with probability one.
class ChannelModel
{
public:
    explicit ChannelModel(const ScenarioConfig& cfg);

    const Link& link(LinkKind k) const { return links_[static_cast<int>(k)]; }

    double fd_gain() const noexcept { return fd_gain_; }
    double br_gain() const noexcept { return br_gain_; }
    double rx_gain() const noexcept { return rx_gain_; }
    double transmit_power_w() const noexcept { return p_t_w_; }
    double noise_power_w() const noexcept { return p_n_w_; }

    /// Power at the link's receiver for a transmitter using the given gain.
    double received(LinkKind k, LinkState s, double tx_gain) const
    {
        return received_power_w(link(k), s, tx_gain, rx_gain_, p_t_w_);
    }

private:
    std::array<Link, 3> links_;
    double fd_gain_;
    double br_gain_;
    double rx_gain_;
    double p_t_w_;
    double p_n_w_;
};

} // namespace mmrelay
