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

#include "mmrelay/relay_queue.hpp"

#include "mmrelay/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace mmrelay {

namespace {

long double power(double base, int exponent)
{
    return exponent == 0 ? 1.0L : std::pow(static_cast<long double>(base), exponent);
}

} // namespace

std::vector<SlotConfiguration> enumerate_configurations(const ScenarioConfig& cfg, int n_ues, bool relay_tx)
{
    if (n_ues < 0)
        throw std::invalid_argument("enumerate_configurations: negative UE count");
    const double p_fr = cfg.q_u * cfg.q_uf * cfg.q_ur;
    const double p_fd = cfg.q_u * cfg.q_uf * cfg.q_ud();
    const double p_b = cfg.q_u * cfg.q_ub();
    const double p_idle = 1.0 - cfg.q_u;

    std::vector<SlotConfiguration> out;
    for (int fr = 0; fr <= n_ues; ++fr) {
        for (int fd = 0; fr + fd <= n_ues; ++fd) {
            for (int b = 0; fr + fd + b <= n_ues; ++b) {
                const int idle = n_ues - fr - fd - b;
                const long double coeff = static_cast<long double>(binomial_coefficient(n_ues, fr))
                                        * binomial_coefficient(n_ues - fr, fd)
                                        * binomial_coefficient(n_ues - fr - fd, b);
                const long double w = coeff * power(p_fr, fr) * power(p_fd, fd) * power(p_b, b) * power(p_idle, idle);
                if (w == 0.0L)
                    continue;
                out.push_back({fr, fd, b, idle, relay_tx, static_cast<double>(w)});
            }
        }
    }
    return out;
}

ConfigurationOutcome configuration_outcome(const SlotConfiguration& c, const SuccessTable& table)
{
    ConfigurationOutcome o{0.0, 0.0, 0.0};
    if (c.n_fr > 0)
        o.fd_arrival = table.fd_to_relay(c.n_fr - 1, c.n_b);
    if (c.n_b > 0)
        o.br_arrival = table.br_at_relay(c.n_fr, c.n_b - 1) * (1.0 - table.br_at_ap(c.n_fd, c.n_b - 1, c.relay_tx));
    o.departure = table.relay_to_ap(c.n_fd, c.n_b);
    return o;
}

std::vector<double> configuration_arrivals(const SlotConfiguration& c, const SuccessTable& table)
{
    const auto o = configuration_outcome(c, table);
    return convolve(binomial_pmf(c.n_fr, o.fd_arrival), binomial_pmf(c.n_b, o.br_arrival));
}

std::vector<double> arrival_distribution(const ScenarioConfig& cfg, const SuccessTable& table, bool relay_tx)
{
    const int n = cfg.n_ues;
    std::vector<KahanSum<long double>> acc(static_cast<std::size_t>(n) + 1);
    for (const auto& c : enumerate_configurations(cfg, relay_tx)) {
        const auto arr = configuration_arrivals(c, table);
        for (std::size_t k = 0; k < arr.size(); ++k)
            acc[k] += static_cast<long double>(c.weight) * arr[k];
    }
    std::vector<double> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k)
        out[k] = clamp_probability(static_cast<double>(acc[k].value()));
    return out;
}

double service_success_probability(const ScenarioConfig& cfg, const SuccessTable& table)
{
    KahanSum<long double> acc;
    for (const auto& c : enumerate_configurations(cfg, true))
        acc += static_cast<long double>(c.weight) * table.relay_to_ap(c.n_fd, c.n_b);
    return clamp_probability(static_cast<double>(acc.value()));
}

double NetChangeDistribution::empty(int k) const
{
    if (k < 0 || k > n_ues())
        return 0.0;
    return p_empty[static_cast<std::size_t>(k)];
}

double NetChangeDistribution::nonempty(int k) const
{
    if (k < -1 || k > n_ues())
        return 0.0;
    return p_nonempty[static_cast<std::size_t>(k + 1)];
}

NetChangeDistribution net_change_distribution(const ScenarioConfig& cfg, const SuccessTable& table)
{
    const int n = cfg.n_ues;
    NetChangeDistribution out;
    out.p_empty = arrival_distribution(cfg, table, false);

    // Relay transmitting: per configuration, arrivals and departure are
    // conditionally independent; net change = arrivals - departure.
    std::vector<KahanSum<long double>> busy(static_cast<std::size_t>(n) + 2);
    for (const auto& c : enumerate_configurations(cfg, true)) {
        const auto arr = configuration_arrivals(c, table);
        const double dep = configuration_outcome(c, table).departure;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const long double w = static_cast<long double>(c.weight) * arr[k];
            busy[k] += w * dep;             // k arrivals, one departure: k - 1
            busy[k + 1] += w * (1.0 - dep); // k arrivals, no departure: k
        }
    }

    out.p_nonempty.assign(static_cast<std::size_t>(n) + 2, 0.0);
    for (std::size_t i = 0; i < out.p_nonempty.size(); ++i) {
        long double v = cfg.q_r * busy[i].value();
        if (i >= 1)
            v += (1.0L - cfg.q_r) * out.p_empty[i - 1];
        out.p_nonempty[i] = clamp_probability(static_cast<double>(v));
    }
    return out;
}

StabilityThreshold stability_threshold(double lambda0, double a_r, double b_r)
{
    if (lambda0 == 0.0)
        return {0.0, false};
    const double denom = lambda0 + b_r - a_r;
    if (!(denom > 0.0))
        return {1.0, true};
    const double ratio = lambda0 / denom;
    if (ratio >= 1.0)
        return {1.0, true};
    return {ratio, false};
}

namespace {

double mean_of(const std::vector<double>& pmf)
{
    KahanSum<long double> m;
    for (std::size_t k = 1; k < pmf.size(); ++k)
        m += static_cast<long double>(k) * pmf[k];
    return static_cast<double>(m.value());
}

} // namespace

StabilityThreshold stability_threshold(const ScenarioConfig& cfg, const SuccessTable& table)
{
    return stability_threshold(mean_of(arrival_distribution(cfg, table, false)),
                               mean_of(arrival_distribution(cfg, table, true)), service_success_probability(cfg, table));
}

double empty_probability(const NetChangeDistribution& dist, double lambda0)
{
    if (lambda0 == 0.0)
        return 1.0;
    KahanSum<long double> drift;
    drift += dist.nonempty(-1);
    for (int k = 1; k <= dist.n_ues(); ++k)
        drift += -static_cast<long double>(k) * dist.nonempty(k);
    const long double down = drift.value();
    if (!(down > 0.0L))
        throw std::domain_error("empty probability undefined; use unstable-regime throughput");
    return static_cast<double>(down / (down + lambda0));
}

double empty_probability(const ScenarioConfig& cfg, const SuccessTable& table)
{
    const auto q = solve_queue(cfg, table);
    if (!q.stable)
        throw std::domain_error("empty probability undefined; use unstable-regime throughput");
    return empty_probability(net_change_distribution(cfg, table), q.lambda0);
}

double empty_probability_drift_form(const QueueSolution& q)
{
    if (q.lambda0 == 0.0)
        return 1.0;
    const double down = q.mu_r - q.lambda1;
    if (!(down > 0.0))
        throw std::domain_error("empty probability undefined; use unstable-regime throughput");
    return down / (down + q.lambda0);
}

QueueSolution solve_queue(const ScenarioConfig& cfg, const SuccessTable& table)
{
    QueueSolution q;
    const auto dist = net_change_distribution(cfg, table);
    q.lambda0 = mean_of(dist.p_empty);
    q.a_r = mean_of(arrival_distribution(cfg, table, true));
    q.b_r = service_success_probability(cfg, table);
    q.mu_r = cfg.q_r * q.b_r;
    q.lambda1 = (1.0 - cfg.q_r) * q.lambda0 + cfg.q_r * q.a_r;

    const auto th = stability_threshold(q.lambda0, q.a_r, q.b_r);
    q.q_r_min = th.q_r_min;
    q.never_stable = th.never_stable;

    if (q.lambda0 == 0.0) {
        q.stable = true;
        q.p_empty = 1.0;
    } else {
        q.stable = !th.never_stable && cfg.q_r > th.q_r_min;
        // Guard against q_r a hair above q_r_min where rounding leaves no drift.
        if (q.stable && !(q.mu_r > q.lambda1))
            q.stable = false;
        q.p_empty = q.stable ? empty_probability(dist, q.lambda0) : 0.0;
    }
    return q;
}

} // namespace mmrelay
