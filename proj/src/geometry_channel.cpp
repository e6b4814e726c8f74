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

#include "mmrelay/geometry_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmrelay {

namespace {

constexpr double kSpeedOfLight = 3.0e8;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

Link make_link(LinkKind kind, double d_2d, Heights h, double f_c_ghz, double p_los)
{
    const double dh = h.bs_m - h.ut_m;
    const double d_3d = std::sqrt(d_2d * d_2d + dh * dh);
    return Link{kind,
                d_2d,
                d_3d,
                p_los,
                {path_loss_db(d_3d, f_c_ghz, LinkState::Los, h), path_loss_db(d_3d, f_c_ghz, LinkState::Nlos, h)}};
}

} // namespace

double relay_mmap_distance(double d_ur_m, double d_ud_m, double theta_rd_deg)
{
    if (!(d_ur_m > 0.0) || !(d_ud_m > 0.0))
        throw std::domain_error("relay_mmap_distance: distances must be positive");
    if (!(theta_rd_deg >= 0.0 && theta_rd_deg <= 180.0))
        throw std::domain_error("relay_mmap_distance: angle must lie in [0, 180] degrees");
    const double c = std::cos(deg_to_rad(theta_rd_deg));
    const double sq = d_ur_m * d_ur_m + d_ud_m * d_ud_m - 2.0 * d_ur_m * d_ud_m * c;
    return std::sqrt(std::max(sq, 0.0));
}

double los_probability(double d_2d_m)
{
    if (!(d_2d_m >= 0.0))
        throw std::domain_error("los_probability: negative distance");
    if (d_2d_m <= 18.0)
        return 1.0;
    return 18.0 / d_2d_m + std::exp(-d_2d_m / 36.0) * (1.0 - 18.0 / d_2d_m);
}

double path_loss_db(double d_3d_m, double f_c_ghz, LinkState state, Heights heights)
{
    if (!(d_3d_m >= 1.0))
        throw std::domain_error("path_loss_db: distance below the 1 m validity floor");
    if (!(f_c_ghz > 0.0))
        throw std::domain_error("path_loss_db: carrier frequency must be positive");
    const double dh = heights.bs_m - heights.ut_m;
    if (d_3d_m < std::abs(dh))
        throw std::domain_error("path_loss_db: 3D distance shorter than the height difference");
    const double d_2d = std::sqrt(d_3d_m * d_3d_m - dh * dh);

    // effective heights with h_E = 1 m (TR 38.901 Table 7.4.1-1, note 1)
    const double d_bp = 4.0 * (heights.bs_m - 1.0) * (heights.ut_m - 1.0) * f_c_ghz * 1e9 / kSpeedOfLight;
    const double log_fc = std::log10(f_c_ghz);

    double los = 0.0;
    if (d_2d <= d_bp)
        los = 32.4 + 21.0 * std::log10(d_3d_m) + 20.0 * log_fc;
    else
        los = 32.4 + 40.0 * std::log10(d_3d_m) + 20.0 * log_fc - 9.5 * std::log10(d_bp * d_bp + dh * dh);

    if (state == LinkState::Los)
        return los;

    const double nlos = 35.3 * std::log10(d_3d_m) + 22.4 + 21.3 * log_fc - 0.3 * (heights.ut_m - 1.5);
    return std::max(los, nlos);
}

double beam_gain(double theta_bw_deg)
{
    if (!(theta_bw_deg > 0.0 && theta_bw_deg <= 360.0))
        throw std::domain_error("beam_gain: beamwidth must lie in (0, 360] degrees");
    return 2.0 * std::numbers::pi / deg_to_rad(theta_bw_deg);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double received_power_w(const Link& link, LinkState state, double tx_gain, double rx_gain, double p_t_w)
{
    if (tx_gain < 0.0 || rx_gain < 0.0)
        throw std::domain_error("received_power_w: gains must be non-negative");
    return p_t_w * tx_gain * rx_gain * db_to_linear(-link.loss_db(state));
}

ChannelModel::ChannelModel(const ScenarioConfig& cfg)
    : links_{make_link(LinkKind::UeToAp, cfg.d_ud_m, {cfg.h_ap_m, cfg.h_ue_m}, cfg.f_c_ghz, los_probability(cfg.d_ud_m)),
             make_link(LinkKind::UeToRelay, cfg.d_ur_m, {cfg.h_relay_m(), cfg.h_ue_m}, cfg.f_c_ghz,
                       los_probability(cfg.d_ur_m)),
             make_link(LinkKind::RelayToAp, relay_mmap_distance(cfg.d_ur_m, cfg.d_ud_m, cfg.theta_rd_deg),
                       {cfg.h_ap_m, cfg.h_relay_m()}, cfg.f_c_ghz, 1.0)},
      fd_gain_(beam_gain(cfg.theta_bw_fd_deg)),
      br_gain_(beam_gain(cfg.br_beamwidth_deg())),
      rx_gain_(beam_gain(cfg.theta_bw_fd_deg)),
      p_t_w_(dbm_to_watts(cfg.p_t_dbm)),
      p_n_w_(dbm_to_watts(cfg.p_n_dbm))
{
}

} // namespace mmrelay
