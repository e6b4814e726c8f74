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

#include "mmrelay/experiments.hpp"
#include "mmrelay/geometry_channel.hpp"
#include "mmrelay/simulator.hpp"
#include "mmrelay/sinr_success.hpp"
#include "mmrelay/throughput.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mmrelay;

namespace {

LinkKind parse_link(const std::string& s)
{
    if (s == "ue_ap")
        return LinkKind::UeToAp;
    if (s == "ue_relay")
        return LinkKind::UeToRelay;
    if (s == "relay_ap")
        return LinkKind::RelayToAp;
    throw py::value_error("link must be 'ue_ap', 'ue_relay' or 'relay_ap'");
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "fd")
        return Scheme::Fd;
    if (s == "br")
        return Scheme::Br;
    throw py::value_error("scheme must be 'fd' or 'br'");
}

py::dict report_dict(const ThroughputReport& r)
{
    const auto& q = r.queue;
    py::dict d;
    d["regime"] = std::string(to_string(r.regime));
    d["lambda0"] = q.lambda0;
    d["lambda1"] = q.lambda1;
    d["a_r"] = q.a_r;
    d["b_r"] = q.b_r;
    d["mu_r"] = q.mu_r;
    d["q_r_min"] = q.q_r_min;
    d["never_stable"] = q.never_stable;
    d["stable"] = q.stable;
    d["p_empty"] = q.p_empty;
    d["t_ud0"] = r.t_ud0;
    d["t_ud1"] = r.t_ud1;
    d["t_ud"] = r.t_ud;
    d["t_ur"] = r.t_ur;
    d["t_d"] = r.t_d;
    d["t_r"] = r.t_r;
    d["T"] = r.t_aggregate;
    return d;
}

py::dict stats_dict(const SimStats& s)
{
    py::dict d;
    auto est = [&](const char* k, const Estimate& e) {
        d[k] = e.value;
        d[(std::string(k) + "_se").c_str()] = e.std_error;
    };
    d["slots"] = s.slots;
    d["warmup_slots"] = s.warmup_slots;
    d["seed"] = s.seed;
    d["mode"] = std::string(to_string(s.mode));
    d["delivered_direct"] = s.delivered_direct;
    d["delivered_relay"] = s.delivered_relay;
    est("t_sim", s.t_sim);
    est("lambda_sim", s.lambda_sim);
    est("mu_sim", s.mu_sim);
    est("p_empty_sim", s.p_empty_sim);
    est("drift_sim", s.drift_sim);
    d["mean_queue"] = s.mean_queue;
    d["max_queue"] = s.max_queue;
    d["final_queue"] = s.final_queue;
    d["enqueued_total"] = s.enqueued_total;
    d["dequeued_total"] = s.dequeued_total;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Relay-assisted mm-wave random access: analysis and simulation";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConfigFileError>(m, "ConfigFileError", PyExc_ValueError);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def(py::init([](const py::kwargs& kw) {
            ScenarioConfig c;
            for (const auto& [k, v] : kw)
                set_field(c, py::cast<std::string>(k), py::cast<double>(v));
            return c;
        }))
        .def_readwrite("n_ues", &ScenarioConfig::n_ues)
        .def_readwrite("q_u", &ScenarioConfig::q_u)
        .def_readwrite("q_uf", &ScenarioConfig::q_uf)
        .def_readwrite("q_ur", &ScenarioConfig::q_ur)
        .def_readwrite("q_r", &ScenarioConfig::q_r)
        .def_readwrite("gamma_db", &ScenarioConfig::gamma_db)
        .def_readwrite("alpha", &ScenarioConfig::alpha)
        .def_readwrite("p_t_dbm", &ScenarioConfig::p_t_dbm)
        .def_readwrite("p_n_dbm", &ScenarioConfig::p_n_dbm)
        .def_readwrite("f_c_ghz", &ScenarioConfig::f_c_ghz)
        .def_readwrite("h_ap_m", &ScenarioConfig::h_ap_m)
        .def_readwrite("h_ue_m", &ScenarioConfig::h_ue_m)
        .def_readwrite("d_ur_m", &ScenarioConfig::d_ur_m)
        .def_readwrite("d_ud_m", &ScenarioConfig::d_ud_m)
        .def_readwrite("theta_rd_deg", &ScenarioConfig::theta_rd_deg)
        .def_readwrite("theta_bw_fd_deg", &ScenarioConfig::theta_bw_fd_deg)
        .def_readwrite("theta_bw_br_deg", &ScenarioConfig::theta_bw_br_deg)
        .def("validate", [](const ScenarioConfig& c) { validate(c); })
        .def("__repr__", [](const ScenarioConfig& c) {
            std::ostringstream os;
            os << "ScenarioConfig(";
            bool first = true;
            for (const auto& f : scenario_field_names()) {
                os << (first ? "" : ", ") << f << "=" << format_number(get_field(c, f));
                first = false;
            }
            os << ")";
            return os.str();
        });

    m.def("relay_mmap_distance", &relay_mmap_distance, py::arg("d_ur_m"), py::arg("d_ud_m"), py::arg("theta_rd_deg"));
    m.def("los_probability", &los_probability, py::arg("d_2d_m"));
    m.def(
        "path_loss_db",
        [](double d, double fc, bool los, double h_bs, double h_ut) {
            return path_loss_db(d, fc, los ? LinkState::Los : LinkState::Nlos, {h_bs, h_ut});
        },
        py::arg("d_3d_m"), py::arg("f_c_ghz"), py::arg("los"), py::arg("h_bs_m") = 10.0, py::arg("h_ut_m") = 1.5);
    m.def("beam_gain", &beam_gain, py::arg("theta_bw_deg"));

    m.def(
        "success_probability",
        [](const ScenarioConfig& c, const std::string& link, const std::string& scheme, int n_f, int n_b, bool relay) {
            return SinrModel(c).success_probability(parse_link(link), parse_scheme(scheme), {n_f, n_b, relay});
        },
        py::arg("config"), py::arg("link"), py::arg("scheme") = "fd", py::arg("n_f") = 0, py::arg("n_b") = 0,
        py::arg("relay_active") = false,
        "LOS-averaged probability that one reception clears the SINR threshold.");

    m.def(
        "analyze", [](const ScenarioConfig& c) { return report_dict(aggregate_throughput(c)); }, py::arg("config"),
        "Queue solution and aggregate throughput.");

    m.def(
        "simulate",
        [](const ScenarioConfig& c, std::uint64_t slots, std::uint64_t seed, const std::string& mode, int batches) {
            const SimOptions o{slots, seed, parse_los_mode(mode), batches};
            SimStats s;
            {
                py::gil_scoped_release release;
                s = simulate(c, o);
            }
            return stats_dict(s);
        },
        py::arg("config"), py::arg("slots") = 1'000'000, py::arg("seed") = 1, py::arg("mode") = "decoupled",
        py::arg("batches") = 40);

    m.def(
        "compare",
        [](const ScenarioConfig& c, std::uint64_t slots, std::uint64_t seed, const std::string& mode) {
            const SimOptions o{slots, seed, parse_los_mode(mode), 40};
            Comparison cmp;
            {
                py::gil_scoped_release release;
                cmp = compare(aggregate_throughput(c), simulate(c, o));
            }
            py::list rows;
            for (const auto& mc : cmp.metrics) {
                py::dict d;
                d["metric"] = mc.name;
                d["analytic"] = mc.analytic;
                d["empirical"] = mc.empirical;
                d["se"] = mc.std_error;
                d["z"] = mc.z;
                d["observed"] = mc.observed;
                d["pass"] = mc.pass;
                rows.append(d);
            }
            return rows;
        },
        py::arg("config"), py::arg("slots") = 1'000'000, py::arg("seed") = 1, py::arg("mode") = "decoupled");

    m.def(
        "sweep",
        [](const std::string& text, int jobs) {
            const auto spec = parse_config(text, "<string>");
            py::gil_scoped_release release;
            return run_sweep(spec, jobs);
        },
        py::arg("spec_text"), py::arg("jobs") = 1, "Run a sweep described in the config format; returns CSV text.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int rc = run_cli(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"));
}
