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

#include "mmrelay/two_ue.hpp"

#include <stdexcept>

namespace mmrelay {

namespace {

/// Shorthand over the success table using the published subscript layout.
/// Arguments are (FD interferers, BR interferers[, relay interfering]).
struct Terms
{
    const SuccessTable& t;

    double Pf_ur(int f, int b) const { return t.fd_to_relay(f, b); }
    double Pb_ur(int f, int b) const { return t.br_at_relay(f, b); }
    double Pb_ud(int f, int b, bool r) const { return t.br_at_ap(f, b, r); }
    double Prd(int f, int b) const { return t.relay_to_ap(f, b); }
    double nPf_ur(int f, int b) const { return 1.0 - Pf_ur(f, b); }
    double nPb_ud(int f, int b, bool r) const { return 1.0 - Pb_ud(f, b, r); }
    double nPrd(int f, int b) const { return 1.0 - Prd(f, b); }
};

enum class Reading { Literal, Reconciled };

TwoUeTerms evaluate(const ScenarioConfig& cfg, const SuccessTable& table, Reading reading)
{
    if (cfg.n_ues != 2)
        throw std::invalid_argument("two-UE closed forms require n_ues == 2");
    const bool fix = reading == Reading::Reconciled;
    const Terms T{table};

    const double qu = cfg.q_u, nqu = 1.0 - cfg.q_u;
    const double quf = cfg.q_uf, qub = cfg.q_ub(), qur = cfg.q_ur, qud = cfg.q_ud();
    const double qr = cfg.q_r, nqr = 1.0 - cfg.q_r;
    const double qu2 = qu * qu;

    // FD-to-relay pair: each sees the other as an FD interferer at the relay.
    const double Pf1 = T.Pf_ur(1, 0);
    // FD-to-relay UE sharing the slot with a BR UE.
    const double X = T.Pf_ur(0, 1);
    // BR UE next to an FD-to-relay UE: accepted iff relay decodes and AP misses.
    const double Y = T.Pb_ur(1, 0) * T.nPb_ud(0, 0, false);
    const double Yr = T.Pb_ur(1, 0) * T.nPb_ud(0, 0, true);
    // BR pair.
    const double Z = T.Pb_ur(0, 1) * T.nPb_ud(0, 1, false);
    const double Zr = T.Pb_ur(0, 1) * T.nPb_ud(0, 1, true);

    const double fr_pair = qu2 * quf * quf * qur * qur * (fix ? 1.0 : qur * qur);

    TwoUeTerms out;

    out.lambda0 = 2 * qu * nqu * quf * qur * T.Pf_ur(0, 0) + 2 * qu * nqu * qub * T.Pb_ur(0, 0) * T.nPb_ud(0, 0, false)
                + fr_pair * (2 * Pf1 * (1 - Pf1) + 2 * Pf1 * Pf1) + 2 * qu2 * quf * quf * qur * qud * T.Pf_ur(0, 0)
                + 2 * qu2 * quf * qub * qur * (X * (1 - Y) + (1 - X) * Y + 2 * (fix ? X * Y : Y * Y))
                + 2 * qu2 * qub * quf * qud * T.Pb_ur(0, 0) * T.nPb_ud(1, 0, false)
                + qu2 * qub * qub
                      * (2 * T.Pb_ur(0, 1) * T.nPb_ud(0, fix ? 1 : 2, false) * (1 - Z) + 2 * Z * Z);

    out.a_r = 2 * qu * nqu * quf * qur * T.Pf_ur(0, 0)
            + 2 * qu * nqu * qub * T.Pb_ur(0, 0) * T.nPb_ud(0, 0, fix)
            + fr_pair * (2 * Pf1 * (1 - Pf1) + 2 * Pf1 * Pf1) + 2 * qu2 * quf * quf * qur * qud * T.Pf_ur(0, 0)
            + 2 * qu2 * quf * qub * qur * (X * (1 - Yr) + (1 - X) * Yr + 2 * (fix ? X * Yr : Yr * Yr))
            + 2 * qu2 * qub * quf * qud * T.Pb_ur(0, 0) * T.nPb_ud(1, 0, true)
            + qu2 * qub * qub * (2 * T.Pb_ur(0, 1) * T.nPb_ud(0, 1, true) * (1 - Zr) + 2 * Zr * Zr);

    out.b_r = T.Prd(0, 0) * (nqu * nqu + 2 * qu * nqu * quf * qur + qu2 * quf * quf * (fix ? 1.0 : quf) * qur * qur)
            + T.Prd(1, 0) * (2 * qu * nqu * quf * qud + 2 * qu2 * quf * quf * qud * qur)
            + T.Prd(0, 1) * (2 * qu * nqu * qub + 2 * qu2 * qub * quf * qur) + T.Prd(2, 0) * qu2 * quf * quf * qud * qud
            + T.Prd(1, 1) * 2 * (fix ? qu2 : qu) * quf * qub * qud + T.Prd(0, 2) * qu2 * qub * qub;

    const double fd_pair_to_ap = T.Prd(2, 0) * qu2 * quf * quf * qud * qud;
    const double fr_one = qu * quf * qur * T.nPf_ur(1, 0);
    const double br_pair_none = qu * qub * (1 - Zr);
    out.pm1_nonempty =
        qr
            * (T.Prd(0, 0) * (nqu * nqu + 2 * qu * nqu * quf * qur * T.nPf_ur(0, 0) + fr_one * fr_one)
               + T.Prd(1, 0) * (2 * qu * nqu * quf * qud + 2 * qu2 * quf * quf * qud * qur * T.nPf_ur(0, 0))
               + T.Prd(0, 1)
                     * (2 * qu * nqu * qub * (1 - T.Pb_ur(0, 0) * T.nPb_ud(0, 0, true))
                        + 2 * qu2 * qub * quf * qur * (1 - Yr) * T.nPf_ur(0, 1))
               + T.Prd(1, 1) * 2 * qu2 * quf * qub * qud * (1 - T.Pb_ur(0, 0) * T.nPb_ud(1, 0, true))
               + T.Prd(0, 2) * br_pair_none * br_pair_none + (fix ? fd_pair_to_ap : 0.0))
        + (fix ? 0.0 : fd_pair_to_ap);

    out.p1_empty = 2 * qu * nqu * quf * qur * T.Pf_ur(0, 0) + 2 * qu * nqu * qub * T.Pb_ur(0, 0) * T.nPb_ud(0, 0, false)
                 + 2 * qu2 * quf * quf * qur * qur * Pf1 * (1 - Pf1) + 2 * qu2 * quf * quf * qur * qud * T.Pf_ur(0, 0)
                 + 2 * qu2 * quf * qub * qur * (X * (1 - Y) + (1 - X) * Y)
                 + 2 * qu2 * qub * quf * qud * T.Pb_ur(0, 0) * T.nPb_ud(1, 0, false)
                 + qu2 * qub * qub * (2 * Z * (1 - Z));

    const double fr_two = qu * quf * qur * Pf1;
    const double br_two = qu * qub * (fix ? Z : Zr);
    out.p2_empty = fr_two * fr_two + br_two * br_two + 2 * qu2 * qub * quf * qur * Y * X;

    const double br_two_busy = qu * qub * Zr;
    out.p1_nonempty =
        nqr * out.p1_empty
        + qr
              * (2 * qu * nqu * quf * qur * T.Pf_ur(0, 0) * T.nPrd(0, 0)
                 + 2 * qu * nqu * qub * T.Pb_ur(0, 0) * T.nPb_ud(0, 0, true) * T.nPrd(0, 1)
                 + 2 * qu2 * quf * quf * qud * qur * T.Pf_ur(0, 0) * T.nPrd(1, 0)
                 + 2 * qu2 * quf * qub * qud * T.Pb_ur(0, 0) * T.nPb_ud(1, 0, true) * T.nPrd(1, 1)
                 + qu2 * quf * quf * qur * qur
                       * ((fix ? 2.0 : 1.0) * Pf1 * (1 - Pf1) * T.nPrd(0, 0) + Pf1 * Pf1 * T.Prd(0, 0))
                 + qu2 * qub * qub * (2 * T.Pb_ur(0, 1) * T.nPb_ud(0, 1, true) * T.nPrd(0, 2) * (1 - Zr) + Zr * Zr * T.Prd(0, 2))
                 // The printed P-bar^f_{ur/{r}^f,{1}^b} names the relay as an
                 // interferer of its own reception; that evaluates to P^f_{ur/{1}^b}.
                 + 2 * qu2 * qub * quf * qur
                       * (Yr * T.nPf_ur(0, 1) * T.nPrd(0, 1) + (1 - Yr) * X * T.nPrd(0, 1)
                          + T.Pb_ur(fix ? 1 : 2, 0) * T.nPb_ud(0, 0, true) * X * T.Prd(0, 1)));

    out.p2_nonempty = nqr * out.p2_empty
                    + qr
                          * (fr_two * fr_two * T.nPrd(0, 0) + br_two_busy * br_two_busy * T.nPrd(0, 2)
                             + 2 * qu2 * qub * quf * qur * T.Pb_ur(1, 0) * T.nPb_ud(0, 0, fix) * X * T.nPrd(0, 1));
    return out;
}

} // namespace

TwoUeTerms two_ue_literal(const ScenarioConfig& cfg, const SuccessTable& table)
{
    return evaluate(cfg, table, Reading::Literal);
}

TwoUeTerms two_ue_closed_forms(const ScenarioConfig& cfg, const SuccessTable& table)
{
    return evaluate(cfg, table, Reading::Reconciled);
}

const std::vector<Reconciliation>& two_ue_reconciliations()
{
    static const std::vector<Reconciliation> list = {
        {"lambda0, A_r", "q_u^2 q_uf^2 q_ur^2 q_ur^2 [...]", "q_u^2 q_uf^2 q_ur^2 [...] (duplicated factor dropped)"},
        {"lambda0, A_r", "FD-relay + BR bracket ends with 2 (P^b_{ur/{1}^f} Pbar^b_{ud})^2",
         "2 P^f_{ur/{1}^b} P^b_{ur/{1}^f} Pbar^b_{ud} (both packets accepted)"},
        {"lambda0", "BR pair uses Pbar^b_{ud/{2}^b}", "Pbar^b_{ud/{1}^b} (only one other UE exists)"},
        {"A_r", "single BR term uses Pbar^b_{ud}", "Pbar^b_{ud/{r}^f} (relay is transmitting)"},
        {"B_r", "q_u^2 q_uf^2 q_2f q_ur^2", "q_u^2 q_uf^2 q_ur^2 (extra q_2f factor dropped)"},
        {"B_r", "P_{rd/{1}^f,{1}^b} 2 q_u q_uf q_ub q_ud", "2 q_u^2 q_uf q_ub q_ud (both UEs transmit)"},
        {"p_{-1}^1", "P_{rd/{2}^f} q_u^2 q_uf^2 q_ud^2 outside the q_r bracket", "inside the q_r bracket"},
        {"p_2^0", "BR pair uses Pbar^b_{ud/{r}^f,{1}^b}", "Pbar^b_{ud/{1}^b} (relay is silent when empty)"},
        {"p_1^1", "FD-relay pair: P Pbar Pbar_rd", "2 P Pbar Pbar_rd (either UE may be the one decoded)"},
        {"p_1^1", "P^b_{ur/{2}^f}", "P^b_{ur/{1}^f} (one FD interferer at the relay)"},
        {"p_2^1", "FD-relay + BR term uses Pbar^b_{ud}", "Pbar^b_{ud/{r}^f}; also inherits the p_2^0 fix"},
    };
    return list;
}

} // namespace mmrelay
