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

#include "mmrelay/sinr_success.hpp"

#include "mmrelay/numeric.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mmrelay {

SinrModel::SinrModel(const ScenarioConfig& cfg)
    : channel_((validate(cfg), cfg)), alpha_(cfg.alpha), gamma_(db_to_linear(cfg.gamma_db))
{
}

double SinrModel::sinr_linear(LinkKind desired, LinkState desired_state, Scheme scheme,
                              const LosPartition& partition) const
{
    if (desired == LinkKind::RelayToAp && scheme != Scheme::Fd)
        throw std::invalid_argument("sinr_linear: the relay only transmits FD");
    if (desired == LinkKind::UeToRelay && partition.relay)
        throw std::invalid_argument("sinr_linear: the relay does not interfere with its own reception");

    const double signal = channel_.received(desired, desired_state, transmit_gain(scheme));

    const LinkKind via = interferer_link(desired);
    const double fd = channel_.fd_gain();
    const double br = channel_.br_gain();
    double interference = partition.f_los * channel_.received(via, LinkState::Los, fd)
                        + partition.f_nlos * channel_.received(via, LinkState::Nlos, fd)
                        + partition.b_los * channel_.received(via, LinkState::Los, br)
                        + partition.b_nlos * channel_.received(via, LinkState::Nlos, br);
    if (partition.relay)
        interference += channel_.received(LinkKind::RelayToAp, *partition.relay, fd);

    return signal / (channel_.noise_power_w() + alpha_ * interference);
}

double SinrModel::success_probability(LinkKind desired, Scheme scheme, InterfererProfile profile) const
{
    if (profile.n_f < 0 || profile.n_b < 0)
        throw std::invalid_argument("success_probability: negative interferer count");
    if (desired == LinkKind::UeToRelay)
        profile.relay_active = false;

    const double p_desired = channel_.link(desired).p_los;
    const double p_interf = channel_.link(interferer_link(desired)).p_los;
    const double p_relay = channel_.link(LinkKind::RelayToAp).p_los;

    const auto w_f = binomial_pmf(profile.n_f, p_interf);
    const auto w_b = binomial_pmf(profile.n_b, p_interf);

    KahanSum<long double> total;
    for (const LinkState ds : {LinkState::Los, LinkState::Nlos}) {
        const double w_d = ds == LinkState::Los ? p_desired : 1.0 - p_desired;
        if (w_d == 0.0)
            continue;
        for (int k = 0; k <= profile.n_f; ++k) {
            for (int h = 0; h <= profile.n_b; ++h) {
                const double w_fb = w_f[k] * w_b[h];
                if (w_fb == 0.0)
                    continue;
                LosPartition part{k, profile.n_f - k, h, profile.n_b - h, std::nullopt};
                if (!profile.relay_active) {
                    if (sinr_linear(desired, ds, scheme, part) >= gamma_)
                        total += static_cast<long double>(w_d) * w_fb;
                    continue;
                }
                for (const LinkState rs : {LinkState::Los, LinkState::Nlos}) {
                    const double w_r = rs == LinkState::Los ? p_relay : 1.0 - p_relay;
                    if (w_r == 0.0)
                        continue;
                    part.relay = rs;
                    if (sinr_linear(desired, ds, scheme, part) >= gamma_)
                        total += static_cast<long double>(w_d) * w_fb * w_r;
                }
            }
        }
    }
    return clamp_probability(static_cast<double>(total.value()));
}

namespace {

std::uint64_t pack_key(LinkKind desired, Scheme scheme, const InterfererProfile& p)
{
    return (static_cast<std::uint64_t>(desired) << 56) | (static_cast<std::uint64_t>(scheme) << 48)
         | (static_cast<std::uint64_t>(p.relay_active) << 40) | (static_cast<std::uint64_t>(p.n_f) << 20)
         | static_cast<std::uint64_t>(p.n_b);
}

} // namespace

double SuccessTable::get(LinkKind desired, Scheme scheme, InterfererProfile profile) const
{
    if (desired == LinkKind::UeToRelay)
        profile.relay_active = false;
    const auto key = pack_key(desired, scheme, profile);
    {
        std::shared_lock lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    const double value = model_.success_probability(desired, scheme, profile);
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(key, value).first->second;
}

std::size_t SuccessTable::size() const
{
    std::shared_lock lock(mutex_);
    return cache_.size();
}

} // namespace mmrelay
