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

#include "mmrelay/scenario.hpp"

#include <cmath>

namespace mmrelay {

namespace {

void require_probability(const char* name, double v)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError(name, "must lie in [0, 1], got " + std::to_string(v));
}

void require_positive(const char* name, double v)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(name, "must be strictly positive, got " + std::to_string(v));
}

void require_finite(const char* name, double v)
{
    if (!std::isfinite(v))
        throw ConfigError(name, "must be finite");
}

} // namespace

void validate(const ScenarioConfig& cfg)
{
    if (cfg.n_ues < 1)
        throw ConfigError("n_ues", "must be a positive integer, got " + std::to_string(cfg.n_ues));
    require_probability("q_u", cfg.q_u);
    require_probability("q_uf", cfg.q_uf);
    require_probability("q_ur", cfg.q_ur);
    require_probability("q_r", cfg.q_r);
    require_probability("alpha", cfg.alpha);
    require_finite("gamma_db", cfg.gamma_db);
    // Powers are logarithmic; only finiteness is meaningful for them.
    require_finite("p_t_dbm", cfg.p_t_dbm);
    require_finite("p_n_dbm", cfg.p_n_dbm);
    require_positive("f_c_ghz", cfg.f_c_ghz);
    require_positive("h_ap_m", cfg.h_ap_m);
    require_positive("h_ue_m", cfg.h_ue_m);
    require_positive("d_ur_m", cfg.d_ur_m);
    require_positive("d_ud_m", cfg.d_ud_m);
    require_positive("theta_bw_fd_deg", cfg.theta_bw_fd_deg);
    if (!(cfg.theta_rd_deg > 0.0 && cfg.theta_rd_deg < 180.0))
        throw ConfigError("theta_rd_deg", "must lie in (0, 180) degrees, got " + std::to_string(cfg.theta_rd_deg));
    if (cfg.theta_bw_fd_deg > 360.0)
        throw ConfigError("theta_bw_fd_deg", "must not exceed 360 degrees");
    const double br = cfg.br_beamwidth_deg();
    if (!(br > 0.0 && br <= 360.0))
        throw ConfigError("theta_bw_br_deg", "must lie in (0, 360] degrees");
    if (cfg.q_uf < 1.0 && br < cfg.theta_rd_deg)
        throw ConfigError("theta_bw_br_deg", "a broadcast beam must cover both receivers (>= theta_rd_deg)");
}

} // namespace mmrelay
