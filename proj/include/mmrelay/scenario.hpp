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

#include <optional>
#include <stdexcept>
#include <string>

namespace mmrelay {

/// Raised when a scenario parameter lies outside its domain.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Every free parameter of the relay network model.
///
/// Defaults follow the reference numerical setup: 3GPP UMi street canyon at
/// 30 GHz, 24 dBm transmit power, -80 dBm noise, 10 m access point, 1.5 m UEs,
/// 30 m to the relay and 50 m to the access point, 10 dB threshold, alpha 0.1.
/// The broadcast beamwidth tracks theta_rd unless set explicitly.
struct ScenarioConfig
{
    int n_ues = 10;

    double q_u = 0.1;  ///< UE transmit probability
    double q_uf = 0.5; ///< P(FD scheme | transmit)
    double q_ur = 0.5; ///< P(aim at relay | FD)
    double q_r = 1.0;  ///< relay transmit probability when its queue is nonempty

    double gamma_db = 10.0;
    double alpha = 0.1;

    double p_t_dbm = 24.0;
    double p_n_dbm = -80.0;
    double f_c_ghz = 30.0;
    double h_ap_m = 10.0;
    double h_ue_m = 1.5;

    double d_ur_m = 30.0;
    double d_ud_m = 50.0;
    double theta_rd_deg = 30.0;

    double theta_bw_fd_deg = 5.0;
    std::optional<double> theta_bw_br_deg;

    double q_ub() const noexcept { return 1.0 - q_uf; }
    double q_ud() const noexcept { return 1.0 - q_ur; }
    double br_beamwidth_deg() const noexcept { return theta_bw_br_deg.value_or(theta_rd_deg); }
    /// The relay sits at access point height; it is placed to see the AP in LOS.
    double h_relay_m() const noexcept { return h_ap_m; }
};

/// Throws ConfigError naming the first offending field.
void validate(const ScenarioConfig& cfg);

} // namespace mmrelay
