// SPDX-License-Identifier: Apache-2.0
//
// riscc - RIS-assisted multi-antenna coded caching toolkit
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
//
// JSON and CSV views of the toolkit's objects. JSON numbers round-trip
// exactly (shortest-representation doubles), so a dump/load cycle gives
// back bit-identical channels and arrays.

#ifndef riscc_serialize_H
#define riscc_serialize_H

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "channel.hpp"
#include "delivery.hpp"
#include "grouping.hpp"
#include "nulling.hpp"
#include "pda.hpp"

namespace riscc
{

using json = nlohmann::json;

// ---------- CHANNEL ----------

inline json channel_to_json(const ChannelRealization &ch)
{
    json j;
    j["L"] = ch.L;
    j["K"] = ch.K;
    j["G"] = ch.G;
    j["seed"] = ch.seed;
    auto dump_mat = [](const Eigen::MatrixXcd &m) {
        json arr = json::array();
        for (int c = 0; c < m.cols(); ++c) // column-major
            for (int r = 0; r < m.rows(); ++r)
                arr.push_back({m(r, c).real(), m(r, c).imag()});
        return arr;
    };
    j["h_T"] = dump_mat(ch.h_tx);
    j["h_R"] = dump_mat(ch.h_rx);
    return j;
}

inline ChannelRealization channel_from_json(const json &j)
{
    ChannelRealization ch;
    ch.L = j.at("L").get<int>();
    ch.K = j.at("K").get<int>();
    ch.G = j.at("G").get<int>();
    ch.seed = j.at("seed").get<std::uint64_t>();
    if (ch.L < 1 || ch.K < 1 || ch.G < 1)
        throw std::invalid_argument("channel_from_json: L, K, G must all be >= 1");
    auto load_mat = [&](const json &arr, int rows, int cols, const char *name) {
        if ((int)arr.size() != rows * cols)
            throw std::invalid_argument(std::string("channel_from_json: ") + name + " has " +
                                        std::to_string(arr.size()) + " entries, expected " + std::to_string(rows * cols));
        Eigen::MatrixXcd m(rows, cols);
        std::size_t i = 0;
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r, ++i)
                m(r, c) = {arr[i][0].get<double>(), arr[i][1].get<double>()};
        return m;
    };
    ch.h_tx = load_mat(j.at("h_T"), ch.G, ch.L, "h_T");
    ch.h_rx = load_mat(j.at("h_R"), ch.G, ch.K, "h_R");
    return ch;
}

// ---------- ARRAYS ----------

inline std::string kind_name(ArrayKind k)
{
    switch (k)
    {
    case ArrayKind::PDA:
        return "PDA";
    case ArrayKind::MAPDA:
        return "MAPDA";
    default:
        return "RMAPDA";
    }
}

inline ArrayKind kind_from_name(const std::string &s)
{
    if (s == "PDA")
        return ArrayKind::PDA;
    if (s == "MAPDA")
        return ArrayKind::MAPDA;
    if (s == "RMAPDA")
        return ArrayKind::RMAPDA;
    throw std::invalid_argument("kind_from_name: unknown array kind '" + s + "'");
}

inline json array_to_json(const CacheArray &arr, const std::vector<SlotGroupStructure> *groups = nullptr)
{
    json j;
    j["kind"] = kind_name(arr.kind);
    j["K"] = arr.K;
    j["F"] = arr.F;
    j["S"] = arr.S;
    j["Z"] = arr.Z;
    json params;
    params["t"] = arr.params.t;
    if (arr.kind != ArrayKind::PDA)
        params["L1"] = arr.params.L1 ? arr.params.L1 : arr.params.L0 - arr.params.r + 1;
    if (arr.kind == ArrayKind::RMAPDA)
    {
        params["L0"] = arr.params.L0;
        params["r"] = arr.params.r;
    }
    j["params"] = params;
    if (arr.virtual_users > 0)
        j["virtual_users"] = arr.virtual_users;
    json cells = json::array();
    for (std::int32_t v : arr.cells)
        if (v == CacheArray::star)
            cells.push_back("*");
        else
            cells.push_back(v);
    j["cells"] = cells;
    if (groups && !groups->empty())
    {
        json gs = json::array();
        for (const auto &sg : *groups)
        {
            json e;
            e["s"] = sg.slot;
            e["big"] = {{"users", sg.big.users}, {"antennas", sg.big.antennas}};
            json smalls = json::array();
            for (const auto &sm : sg.small)
                smalls.push_back({{"users", sm.users}, {"antenna", sm.antennas.at(0)}});
            e["small"] = smalls;
            gs.push_back(e);
        }
        j["slot_groups"] = gs;
    }
    return j;
}

inline json rmapda_to_json(const RmapdaBuild &b)
{
    return array_to_json(b.array, &b.slot_groups);
}

// Loads an array and, when present, its slot grouping. Replication counts
// are recomputed rather than stored.
inline RmapdaBuild array_from_json(const json &j)
{
    RmapdaBuild b;
    CacheArray &arr = b.array;
    arr.kind = kind_from_name(j.at("kind").get<std::string>());
    arr.K = j.at("K").get<int>();
    arr.F = j.at("F").get<int>();
    arr.S = j.at("S").get<int>();
    arr.Z = j.at("Z").get<int>();
    arr.virtual_users = j.value("virtual_users", 0);
    const json &params = j.at("params");
    arr.params.t = params.at("t").get<int>();
    arr.params.L1 = params.value("L1", 0);
    arr.params.L0 = params.value("L0", 0);
    arr.params.r = params.value("r", 0);
    if (arr.K < 1 || arr.F < 1)
        throw std::invalid_argument("array_from_json: K and F must be >= 1");
    const json &cells = j.at("cells");
    if ((int)cells.size() != arr.F * arr.K)
        throw std::invalid_argument("array_from_json: cells has " + std::to_string(cells.size()) +
                                    " entries, expected " + std::to_string(arr.F * arr.K));
    arr.cells.reserve(cells.size());
    for (const auto &c : cells)
        if (c.is_string())
        {
            if (c.get<std::string>() != "*")
                throw std::invalid_argument("array_from_json: unexpected cell '" + c.get<std::string>() + "'");
            arr.cells.push_back(CacheArray::star);
        }
        else
            arr.cells.push_back(c.get<std::int32_t>());
    if (j.contains("slot_groups"))
    {
        for (const auto &e : j.at("slot_groups"))
        {
            SlotGroupStructure sg;
            sg.slot = e.at("s").get<int>();
            sg.big.users = e.at("big").at("users").get<std::vector<int>>();
            sg.big.antennas = e.at("big").at("antennas").get<std::vector<int>>();
            for (const auto &sm : e.at("small"))
            {
                SlotGroup g;
                g.users = sm.at("users").get<std::vector<int>>();
                g.antennas = {sm.at("antenna").get<int>()};
                sg.small.push_back(std::move(g));
            }
            b.slot_groups.push_back(std::move(sg));
        }
    }
    if (arr.kind == ArrayKind::RMAPDA && arr.params.r >= 2)
        b.counts = replication_counts(arr.K, arr.params.t, arr.params.L0 - arr.params.r + 1, arr.params.r);
    return b;
}

// ---------- GROUPING ----------

inline json grouping_to_json(const GroupingSolution &sol)
{
    json j;
    j["L_opt"] = sol.L_opt;
    j["r_opt"] = sol.r_opt;
    j["G_opt"] = sol.G_opt;
    j["g_target"] = sol.g_target;
    j["g_achieved"] = sol.g_achieved;
    j["sizes"] = sol.sizes;
    return j;
}

// ---------- NULLING ----------

inline void write_trace_csv(std::ostream &os, const ConvergenceTrace &tr)
{
    os << "iteration,interference_linear,interference_db\n";
    char buf[64];
    for (std::size_t i = 0; i < tr.linear.size(); ++i)
    {
        os << i << ',';
        std::snprintf(buf, sizeof buf, "%.17g", tr.linear[i]);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", tr.db[i]);
        os << buf << '\n';
    }
}

inline void write_trace_csv(const std::string &path, const ConvergenceTrace &tr)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("write_trace_csv: cannot open " + path);
    write_trace_csv(os, tr);
}

inline json bench_to_json(const BenchResult &res)
{
    json j;
    j["config"] = {{"users", res.config.users},           {"ris_units", res.config.ris_units},
                   {"trials", res.config.trials},         {"max_iterations", res.config.max_iterations},
                   {"tolerance", res.config.tolerance},   {"seed", res.config.seed}};
    auto side = [&](bool improved) {
        json s;
        json finals = json::array(), iters = json::array();
        for (const auto &t : res.trials)
        {
            const ConvergenceTrace &tr = improved ? t.improved : t.baseline;
            finals.push_back(tr.final_db());
            iters.push_back(tr.iterations);
        }
        s["final_db"] = finals;
        s["iterations"] = iters;
        s["converged"] = improved ? res.improved_converged : res.baseline_converged;
        s["median_iters_to_minus60db"] = improved ? res.median_iters_improved : res.median_iters_baseline;
        return s;
    };
    j["baseline"] = side(false);
    j["improved"] = side(true);
    j["improved_no_worse"] = res.improved_no_worse;
    return j;
}

// ---------- DELIVERY ----------

inline json report_to_json(const DeliveryReport &rep)
{
    json j;
    j["S"] = rep.S;
    j["g"] = rep.g;
    j["measured_dof"] = {{"num", rep.measured_dof.num}, {"den", rep.measured_dof.den}, {"value", rep.measured_dof.value()}};
    j["fully_decoded_slots"] = rep.fully_decoded_slots;
    json slots = json::array();
    for (const auto &so : rep.per_slot)
    {
        json e;
        e["s"] = so.slot;
        e["converged"] = so.converged;
        e["iterations"] = so.iterations;
        e["restarts"] = so.restarts;
        e["residual_db"] = so.residual_db;
        e["paths"] = so.paths;
        e["served"] = so.served;
        e["decoded"] = so.decoded;
        slots.push_back(e);
    }
    j["per_slot"] = slots;
    json cfg;
    cfg["nulling_tolerance"] = rep.config.nulling_tolerance;
    cfg["nulling_max_iterations"] = rep.config.nulling_max_iterations;
    cfg["max_restarts"] = rep.config.max_restarts;
    cfg["stall_window"] = rep.config.stall_window;
    cfg["stall_min_db_gain"] = rep.config.stall_min_db_gain;
    cfg["warm_start"] = rep.config.warm_start;
    cfg["phase_seed"] = rep.config.phase_seed;
    if (rep.config.snr_db)
        cfg["snr_db"] = *rep.config.snr_db;
    else
        cfg["snr_db"] = nullptr;
    j["config"] = cfg;
    return j;
}

// ---------- FILE HELPERS ----------

inline void save_json(const std::string &path, const json &j)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("save_json: cannot open " + path);
    os << j.dump(2) << '\n';
}

inline json load_json(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("load_json: cannot open " + path);
    return json::parse(is);
}

} // namespace riscc

#endif
