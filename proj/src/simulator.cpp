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

#include "mmrelay/simulator.hpp"

#include "mmrelay/geometry_channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mmrelay {

std::string_view to_string(LosMode m) { return m == LosMode::Decoupled ? "decoupled" : "physical"; }

LosMode parse_los_mode(std::string_view s)
{
    if (s == "decoupled")
        return LosMode::Decoupled;
    if (s == "physical")
        return LosMode::Physical;
    throw std::invalid_argument("unknown LOS mode '" + std::string(s) + "' (expected decoupled or physical)");
}

namespace {

/// One independent uniform stream per purpose.
class Stream
{
public:
    Stream(std::uint64_t seed, std::uint32_t purpose)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), purpose};
        engine_.seed(seq);
    }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

enum class Action : std::uint8_t { Idle, FdRelay, FdAp, Broadcast };

bool heard_at_ap(Action a) { return a == Action::FdAp || a == Action::Broadcast; }
bool heard_at_relay(Action a) { return a == Action::FdRelay || a == Action::Broadcast; }

/// Batch accumulator for ratio estimators sum(x) / sum(s).
struct BatchSeries
{
    std::vector<double> num;
    std::vector<double> den;

    explicit BatchSeries(int b) : num(static_cast<std::size_t>(b), 0.0), den(static_cast<std::size_t>(b), 0.0) {}

    Estimate estimate() const
    {
        double sn = 0.0, sd = 0.0;
        for (std::size_t i = 0; i < num.size(); ++i) {
            sn += num[i];
            sd += den[i];
        }
        if (sd == 0.0)
            return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        const double ratio = sn / sd;
        const auto b = static_cast<double>(num.size());
        if (num.size() < 2)
            return {ratio, 0.0};
        double ss = 0.0;
        for (std::size_t i = 0; i < num.size(); ++i) {
            const double e = num[i] - ratio * den[i];
            ss += e * e;
        }
        const double mean_den = sd / b;
        return {ratio, std::sqrt(ss / (b * (b - 1.0))) / mean_den};
    }
};

class SlotEngine
{
public:
    SlotEngine(const ScenarioConfig& cfg, const SimOptions& opts)
        : cfg_(cfg), mode_(opts.mode), channel_(cfg), tx_(opts.seed, 1), los_(opts.seed, 2), rx_(opts.seed, 3),
          actions_(static_cast<std::size_t>(cfg.n_ues)), los_ap_(static_cast<std::size_t>(cfg.n_ues)),
          los_relay_(static_cast<std::size_t>(cfg.n_ues)), gamma_(db_to_linear(cfg.gamma_db))
    {
        for (int l = 0; l < 3; ++l)
            for (int s = 0; s < 2; ++s) {
                const auto k = static_cast<LinkKind>(l);
                const auto st = static_cast<LinkState>(s);
                power_[l][s][0] = channel_.received(k, st, channel_.fd_gain());
                power_[l][s][1] = channel_.received(k, st, channel_.br_gain());
            }
    }

    struct Outcome
    {
        int direct = 0;
        int arrivals = 0;
        bool relay_tx = false;
        bool departed = false;
    };

    Outcome step(std::uint64_t queue)
    {
        const int n = cfg_.n_ues;
        for (int k = 0; k < n; ++k) {
            const double u = tx_.uniform(), v = tx_.uniform(), w = tx_.uniform();
            Action a = Action::Idle;
            if (u < cfg_.q_u)
                a = v < cfg_.q_uf ? (w < cfg_.q_ur ? Action::FdRelay : Action::FdAp) : Action::Broadcast;
            actions_[static_cast<std::size_t>(k)] = a;
        }
        Outcome out;
        out.relay_tx = tx_.uniform() < cfg_.q_r && queue > 0;

        if (mode_ == LosMode::Physical) {
            const double p_ap = channel_.link(LinkKind::UeToAp).p_los;
            const double p_r = channel_.link(LinkKind::UeToRelay).p_los;
            for (int k = 0; k < n; ++k) {
                los_ap_[static_cast<std::size_t>(k)] = los_.uniform() < p_ap;
                los_relay_[static_cast<std::size_t>(k)] = los_.uniform() < p_r;
            }
            relay_los_ = los_.uniform() < channel_.link(LinkKind::RelayToAp).p_los;
        }

        for (int k = 0; k < n; ++k) {
            const Action a = actions_[static_cast<std::size_t>(k)];
            if (a == Action::Idle)
                continue;
            const int beam = a == Action::Broadcast ? 1 : 0;
            bool at_ap = false;
            if (heard_at_ap(a)) {
                at_ap = decoded(LinkKind::UeToAp, k, beam, out.relay_tx);
                out.direct += at_ap ? 1 : 0;
            }
            if (heard_at_relay(a) && !at_ap && decoded(LinkKind::UeToRelay, k, beam, false))
                ++out.arrivals;
        }
        if (out.relay_tx)
            out.departed = decoded(LinkKind::RelayToAp, -1, 0, false);
        return out;
    }

private:
    bool draw_los(LinkKind k)
    {
        return rx_.uniform() < channel_.link(k).p_los;
    }

    LinkState state_of(LinkKind via, int ue)
    {
        if (mode_ == LosMode::Decoupled)
            return draw_los(via) ? LinkState::Los : LinkState::Nlos;
        const auto i = static_cast<std::size_t>(ue);
        const bool los = via == LinkKind::UeToAp ? los_ap_[i] : los_relay_[i];
        return los ? LinkState::Los : LinkState::Nlos;
    }

    double power(LinkKind k, LinkState s, int beam) const
    {
        return power_[static_cast<int>(k)][static_cast<int>(s)][beam];
    }

    /// Desired transmitter is UE index `ue` (or the relay when ue < 0).
    bool decoded(LinkKind desired, int ue, int beam, bool relay_interferes)
    {
        LinkState ds;
        if (ue < 0)
            ds = mode_ == LosMode::Decoupled ? (draw_los(LinkKind::RelayToAp) ? LinkState::Los : LinkState::Nlos)
                                             : (relay_los_ ? LinkState::Los : LinkState::Nlos);
        else
            ds = state_of(desired, ue);
        const double signal = power(desired, ds, beam);

        const bool at_relay = desired == LinkKind::UeToRelay;
        const LinkKind via = at_relay ? LinkKind::UeToRelay : LinkKind::UeToAp;
        double interference = 0.0;
        for (int k = 0; k < cfg_.n_ues; ++k) {
            if (k == ue)
                continue;
            const Action a = actions_[static_cast<std::size_t>(k)];
            if (at_relay ? !heard_at_relay(a) : !heard_at_ap(a))
                continue;
            interference += power(via, state_of(via, k), a == Action::Broadcast ? 1 : 0);
        }
        if (relay_interferes) {
            const LinkState rs = mode_ == LosMode::Decoupled
                                   ? (draw_los(LinkKind::RelayToAp) ? LinkState::Los : LinkState::Nlos)
                                   : (relay_los_ ? LinkState::Los : LinkState::Nlos);
            interference += power(LinkKind::RelayToAp, rs, 0);
        }
        return signal / (channel_.noise_power_w() + cfg_.alpha * interference) >= gamma_;
    }

    const ScenarioConfig& cfg_;
    LosMode mode_;
    ChannelModel channel_;
    Stream tx_;
    Stream los_;
    Stream rx_;
    std::vector<Action> actions_;
    std::vector<bool> los_ap_;
    std::vector<bool> los_relay_;
    bool relay_los_ = true;
    double gamma_;
    std::array<std::array<std::array<double, 2>, 2>, 3> power_{};
};

} // namespace

SimStats simulate(const ScenarioConfig& cfg, const SimOptions& opts, const SlotObserver& observer)
{
    validate(cfg);
    if (opts.n_slots < 1)
        throw std::invalid_argument("simulate: n_slots must be at least 1");
    if (opts.batches < 2)
        throw std::invalid_argument("simulate: at least two batches are required");

    SimStats st;
    st.slots = opts.n_slots;
    st.seed = opts.seed;
    st.mode = opts.mode;
    st.warmup_slots = std::min<std::uint64_t>(opts.n_slots / 10, 100'000);
    st.measured_slots = opts.n_slots - st.warmup_slots;
    const int nb = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(opts.batches), st.measured_slots));
    st.batches = nb;

    BatchSeries delivered(nb), arrivals(nb), departures(nb), empty(nb), drift(nb);
    double queue_sum = 0.0;
    const std::uint64_t tenth = std::max<std::uint64_t>(opts.n_slots / 10, 1);
    double head_sum = 0.0, tail_sum = 0.0;

    SlotEngine engine(cfg, opts);
    std::uint64_t queue = 0;
    for (std::uint64_t t = 0; t < opts.n_slots; ++t) {
        const std::uint64_t q0 = queue;
        const auto o = engine.step(q0);
        if (o.departed) {
            --queue;
            ++st.dequeued_total;
        }
        queue += static_cast<std::uint64_t>(o.arrivals);
        st.enqueued_total += static_cast<std::uint64_t>(o.arrivals);

        if (t < tenth)
            head_sum += static_cast<double>(q0);
        if (t >= opts.n_slots - tenth)
            tail_sum += static_cast<double>(q0);

        if (t >= st.warmup_slots) {
            const auto b = static_cast<std::size_t>((t - st.warmup_slots) * static_cast<std::uint64_t>(nb) / st.measured_slots);
            st.delivered_direct += static_cast<std::uint64_t>(o.direct);
            st.delivered_relay += o.departed ? 1 : 0;
            delivered.num[b] += o.direct + (o.departed ? 1 : 0);
            arrivals.num[b] += o.arrivals;
            departures.num[b] += o.departed ? 1 : 0;
            departures.den[b] += q0 > 0 ? 1 : 0;
            empty.num[b] += q0 == 0 ? 1 : 0;
            drift.num[b] += static_cast<double>(queue) - static_cast<double>(q0);
            for (auto* s : {&delivered, &arrivals, &empty, &drift})
                s->den[b] += 1.0;
            queue_sum += static_cast<double>(q0);
            st.max_queue = std::max(st.max_queue, q0);
        }
        if (observer)
            observer({t, queue, st.enqueued_total, st.dequeued_total, o.arrivals, o.relay_tx, o.departed});
    }

    st.final_queue = queue;
    st.t_sim = delivered.estimate();
    st.lambda_sim = arrivals.estimate();
    st.mu_sim = departures.estimate();
    st.p_empty_sim = empty.estimate();
    st.drift_sim = drift.estimate();
    st.mean_queue = queue_sum / static_cast<double>(st.measured_slots);
    st.queue_mean_head = head_sum / static_cast<double>(tenth);
    st.queue_mean_tail = tail_sum / static_cast<double>(tenth);
    return st;
}

double analytic_arrival_rate(const QueueSolution& q)
{
    if (!q.stable)
        return q.lambda1;
    return q.p_empty * q.lambda0 + (1.0 - q.p_empty) * q.lambda1;
}

bool Comparison::all_pass() const
{
    return std::all_of(metrics.begin(), metrics.end(), [](const MetricComparison& m) { return m.pass; });
}

Comparison compare(const ThroughputReport& report, const SimStats& stats, double z_limit)
{
    auto metric = [z_limit](std::string name, double analytic, const Estimate& e) {
        MetricComparison m{std::move(name), analytic, e.value, e.std_error, 0.0, true, true};
        if (std::isnan(e.value)) {
            m.observed = false;
            return m;
        }
        const double diff = e.value - analytic;
        if (e.std_error > 0.0)
            m.z = diff / e.std_error;
        else if (std::abs(diff) > 1e-12)
            m.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
        m.pass = std::abs(m.z) <= z_limit;
        return m;
    };

    Comparison c;
    const auto& q = report.queue;
    c.metrics.push_back(metric("T", report.t_aggregate, stats.t_sim));
    c.metrics.push_back(metric("lambda", analytic_arrival_rate(q), stats.lambda_sim));
    c.metrics.push_back(metric("mu_r", q.mu_r, stats.mu_sim));
    c.metrics.push_back(metric("p_empty", q.p_empty, stats.p_empty_sim));

    const bool grows = stats.drift_sim.value > 0.0 && stats.drift_sim.value > 3.0 * stats.drift_sim.std_error;
    c.regime_mismatch = grows != (report.regime == Regime::Unstable);
    return c;
}

} // namespace mmrelay
