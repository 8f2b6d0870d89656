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

// Command line front end. Subcommands:
//   nulling-bench   paired baseline/improved phase optimization benchmark
//   grouping        optimal antenna grouping for a target sum-DoF
//   build-rmapda    construct a grouped placement and delivery array
//   simulate        run the delivery simulation on a built array
//
// Options can be preloaded from a JSON file via --config; explicit flags
// win over the file. RISCC_SEED in the environment sets the default seed.

#include <CLI11.hpp>
#include <riscc/riscc.hpp>
#include <riscc/serialize.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace
{

uint64_t env_seed()
{
    const char *s = std::getenv("RISCC_SEED");
    if (s == nullptr || *s == '\0')
        return 1;
    char *end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == nullptr || *end != '\0')
        throw std::invalid_argument(std::string("RISCC_SEED is not an integer: '") + s + "'");
    return (uint64_t)v;
}

// pre-scan for --config so file values can seed the defaults before parsing
nlohmann::json load_config(int argc, char **argv)
{
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config")
            return riscc::load_json(argv[i + 1]);
    return nlohmann::json::object();
}

template <typename T>
T cfg_or(const nlohmann::json &cfg, const char *key, T fallback)
{
    return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

int run_nulling_bench(const riscc::BenchConfig &cfg, const std::string &out_dir,
                      const std::string &summary_path)
{
    riscc::BenchResult res = riscc::run_paired_benchmark(cfg);
    if (!out_dir.empty())
    {
        std::filesystem::create_directories(out_dir);
        char name[64];
        for (int t = 0; t < cfg.trials; ++t)
        {
            std::snprintf(name, sizeof(name), "trial_%03d_baseline.csv", t + 1);
            riscc::write_trace_csv((std::filesystem::path(out_dir) / name).string(),
                                   res.trials[(std::size_t)t].baseline);
            std::snprintf(name, sizeof(name), "trial_%03d_improved.csv", t + 1);
            riscc::write_trace_csv((std::filesystem::path(out_dir) / name).string(),
                                   res.trials[(std::size_t)t].improved);
        }
    }
    if (!summary_path.empty())
        riscc::save_json(summary_path, riscc::bench_to_json(res));
    std::printf("trials                 %d\n", cfg.trials);
    std::printf("paths per trial        %d\n", (int)riscc::all_cross_paths(cfg.users).size());
    std::printf("surface units          %d\n", cfg.ris_units);
    std::printf("baseline converged     %d\n", res.baseline_converged);
    std::printf("improved converged     %d\n", res.improved_converged);
    std::printf("improved no worse      %d\n", res.improved_no_worse);
    std::printf("median iters baseline  %.1f\n", res.median_iters_baseline);
    std::printf("median iters improved  %.1f\n", res.median_iters_improved);
    return 0;
}

int run_grouping(int L, int t, int g, const std::string &out_path)
{
    riscc::GroupingSolution sol = riscc::optimal_grouping(L, t, g);
    nlohmann::json j = riscc::grouping_to_json(sol);
    if (!out_path.empty())
        riscc::save_json(out_path, j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_build(int K, int t, int L0, int r, const std::string &out_path)
{
    riscc::RmapdaBuild b = riscc::build_rmapda(K, t, L0, r);
    nlohmann::json j = riscc::rmapda_to_json(b);
    if (out_path.empty())
    {
        std::cout << j.dump(2) << "\n";
    }
    else
    {
        riscc::save_json(out_path, j);
        std::printf("K=%d F=%d Z=%d S=%d slots, written to %s\n", b.array.K, b.array.F,
                    b.array.Z, b.array.S, out_path.c_str());
    }
    return 0;
}

int run_simulate(const std::string &array_path, uint64_t channel_seed, int ris_units,
                 int files, const std::string &out_path, double snr_db, bool have_snr)
{
    riscc::RmapdaBuild b = riscc::array_from_json(riscc::load_json(array_path));
    if (b.slot_groups.empty())
        throw std::invalid_argument("array file '" + array_path +
                                    "' carries no slot grouping, rebuild it with build-rmapda");

    int K = b.array.real_users();
    int L = 0, p_max = 0;
    for (const auto &sg : b.slot_groups)
    {
        for (int a : sg.big.antennas)
            L = std::max(L, a);
        for (const auto &sm : sg.small)
            for (int a : sm.antennas)
                L = std::max(L, a);
        p_max = std::max(p_max, (int)riscc::nulling_targets_for_slot(sg, K).size());
    }
    // Every downlink coefficient is a cascade through the surface, so the
    // effective channel has rank at most the unit count. Keep the default
    // comfortably above the antenna count even when nothing needs nulling.
    if (ris_units <= 0)
        ris_units = std::max(riscc::default_ris_units(p_max, 1.1), 2 * L);
    if (files <= 0)
        files = K;

    auto ch = riscc::draw_channel(L, K, ris_units, channel_seed);
    riscc::SimulationConfig cfg;
    if (have_snr)
        cfg.snr_db = snr_db;
    riscc::DeliveryReport rep =
        riscc::simulate_delivery(b, ch, riscc::worst_case_demand(K, files), cfg);
    if (!out_path.empty())
        riscc::save_json(out_path, riscc::report_to_json(rep));
    std::printf("slots                  %d\n", rep.S);
    std::printf("surface units          %d\n", ris_units);
    std::printf("max paths per slot     %d\n", p_max);
    std::printf("fully decoded slots    %d\n", rep.fully_decoded_slots);
    std::printf("measured sum-DoF       %lld/%lld = %.6f\n", rep.measured_dof.num,
                rep.measured_dof.den, rep.measured_dof.value());
    return rep.fully_decoded_slots == rep.S ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"riscc: RIS-assisted multi-antenna coded caching toolkit"};
    app.require_subcommand(1);

    nlohmann::json cfg;
    try
    {
        cfg = load_config(argc, argv);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::string config_path; // consumed by the pre-scan, registered so parsing accepts it
    app.add_option("--config", config_path, "JSON file with option defaults");

    uint64_t seed_default;
    try
    {
        seed_default = cfg_or<uint64_t>(cfg, "seed", env_seed());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // nulling-bench
    riscc::BenchConfig bc;
    bc.users = cfg_or(cfg, "users", 10);
    bc.ris_units = cfg_or(cfg, "ris-units", 300);
    bc.max_iterations = cfg_or(cfg, "iterations", 500);
    bc.trials = cfg_or(cfg, "trials", 100);
    bc.tolerance = cfg_or(cfg, "tolerance", 1e-10);
    bc.seed = seed_default;
    std::string bench_out_dir = cfg_or<std::string>(cfg, "out-dir", "");
    std::string bench_summary = cfg_or<std::string>(cfg, "summary", "");
    CLI::App *bench = app.add_subcommand("nulling-bench",
                                         "paired baseline/improved phase optimization benchmark");
    bench->add_option("--users", bc.users, "number of users");
    bench->add_option("--ris-units", bc.ris_units, "reflecting units on the surface");
    bench->add_option("--iterations", bc.max_iterations, "iteration cap per trial");
    bench->add_option("--trials", bc.trials, "independent trials");
    bench->add_option("--tolerance", bc.tolerance, "residual interference target, linear scale");
    bench->add_option("--seed", bc.seed, "base seed for channels and starting phases");
    bench->add_option("--out-dir", bench_out_dir, "directory for per-trial convergence CSVs");
    bench->add_option("--summary", bench_summary, "write a JSON summary here");

    // grouping
    int gr_L = cfg_or(cfg, "antennas", 0), gr_t = cfg_or(cfg, "t", 0), gr_g = cfg_or(cfg, "dof", 0);
    std::string gr_out = cfg_or<std::string>(cfg, "out", "");
    CLI::App *grouping = app.add_subcommand("grouping", "optimal antenna grouping for a target sum-DoF");
    grouping->add_option("--antennas", gr_L, "transmit antennas available")->required(!cfg.contains("antennas"));
    grouping->add_option("--t", gr_t, "cache replication factor t")->required(!cfg.contains("t"));
    grouping->add_option("--dof", gr_g, "target sum-DoF")->required(!cfg.contains("dof"));
    grouping->add_option("--out", gr_out, "also write the JSON result here");

    // build-rmapda
    int bd_K = cfg_or(cfg, "users", 0), bd_t = cfg_or(cfg, "t", 0);
    int bd_L0 = cfg_or(cfg, "antennas", 0), bd_r = cfg_or(cfg, "groups", 0);
    std::string bd_out = cfg_or<std::string>(cfg, "out", "");
    CLI::App *build = app.add_subcommand("build-rmapda", "construct a grouped placement and delivery array");
    build->add_option("--users", bd_K, "number of users")->required(!cfg.contains("users"));
    build->add_option("--t", bd_t, "cache replication factor t")->required(!cfg.contains("t"));
    build->add_option("--antennas", bd_L0, "total active transmit antennas")->required(!cfg.contains("antennas"));
    build->add_option("--groups", bd_r, "number of antenna groups")->required(!cfg.contains("groups"));
    build->add_option("--out", bd_out, "write the array JSON here instead of stdout");

    // simulate
    std::string sim_array = cfg_or<std::string>(cfg, "array", "");
    uint64_t sim_seed = seed_default;
    sim_seed = cfg_or(cfg, "channel-seed", sim_seed);
    int sim_G = cfg_or(cfg, "ris-units", 0), sim_files = cfg_or(cfg, "files", 0);
    std::string sim_out = cfg_or<std::string>(cfg, "out", "");
    double sim_snr = cfg_or(cfg, "snr-db", 0.0);
    CLI::App *sim = app.add_subcommand("simulate", "run the delivery simulation on a built array");
    sim->add_option("--array", sim_array, "array JSON produced by build-rmapda")->required(!cfg.contains("array"));
    sim->add_option("--channel-seed", sim_seed, "seed for the channel draw");
    CLI::Option *gopt = sim->add_option(
        "--ris-units", sim_G,
        "reflecting units, default 1.1x twice the worst slot's path count, at least 2x antennas");
    sim->add_option("--files", sim_files, "library size, default one file per user");
    sim->add_option("--out", sim_out, "write the full report JSON here");
    CLI::Option *sopt = sim->add_option("--snr-db", sim_snr, "record this SNR in the report");
    (void)gopt;

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (bench->parsed())
            return run_nulling_bench(bc, bench_out_dir, bench_summary);
        if (grouping->parsed())
            return run_grouping(gr_L, gr_t, gr_g, gr_out);
        if (build->parsed())
            return run_build(bd_K, bd_t, bd_L0, bd_r, bd_out);
        if (sim->parsed())
            return run_simulate(sim_array, sim_seed, sim_G, sim_files, sim_out, sim_snr,
                                sopt->count() > 0 || cfg.contains("snr-db"));
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
