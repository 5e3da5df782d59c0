// Command-line front end: Lie-rank experiments for Pauli-based circuits.
//
// Subcommands: scaling2q, rank-dist, rank-evol, vqe-sweep, proxy, eig, close.
// Every run writes its outputs plus a manifest with the resolved config into
// --out-dir; errors land on stderr as a JSON object and a nonzero exit code.

#include "lierank/experiments.hpp"
#include "lierank/rng.hpp"

#include <CLI11.hpp>

#include <cxxabi.h>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

using namespace lierank;

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--seed", common.seed, "root RNG seed");
    cmd->add_option("--jobs", common.jobs, "worker threads");
    cmd->add_option("--out-dir", common.out_dir, "output directory");
    cmd->add_option("--model-json", common.model_json,
                    "Hamiltonian JSON file (overrides the built-in model)");
    cmd->add_option("-J,--coupling", common.J, "XXZ in-plane coupling J");
    cmd->add_option("--delta", common.delta, "XXZ anisotropy Delta");
    cmd->add_option("--field", common.h, "XXZ field h");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamical Lie rank toolkit for Pauli-based parameterized circuits"};
    app.set_config("--config", "", "key=value config file");
    app.require_subcommand(1);

    CommonOptions common;
    common.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto* scaling = app.add_subcommand("scaling2q",
                                       "close all 65535 subsets of the two-qubit Pauli set");
    add_common(scaling, common);

    RankDistConfig dist_config;
    auto* dist = app.add_subcommand("rank-dist", "rank distribution over sampled partitions");
    add_common(dist, common);
    dist->add_option("--samples", dist_config.n_samples, "partitions sampled per m");
    dist->add_option("--m-lo", dist_config.m_lo, "smallest m");
    dist->add_option("--m-hi", dist_config.m_hi, "largest m (0 = term count)");

    RankEvolConfig evol_config;
    auto* evol = app.add_subcommand("rank-evol", "per-iteration rank traces");
    add_common(evol, common);
    evol->add_option("--samples", evol_config.n_samples, "partitions sampled per m");
    evol->add_option("--m-lo", evol_config.m_lo, "smallest m");
    evol->add_option("--m-hi", evol_config.m_hi, "largest m (0 = term count)");
    evol->add_option("--iteration-cap", evol_config.export_iteration_cap,
                     "iterations exported to the trace CSV");

    ProxyRunConfig proxy_config;
    auto* proxy = app.add_subcommand("proxy", "fit the early-iteration reachability proxy");
    add_common(proxy, common);
    proxy->add_option("--k", proxy_config.k, "fit iteration");
    proxy->add_option("--samples", proxy_config.evol.n_samples, "partitions sampled per m");

    VqeSweepConfig sweep_config;
    auto* sweep = app.add_subcommand("vqe-sweep", "VHA layer sweep against the LAP baseline");
    add_common(sweep, common);
    sweep->add_option("--m", sweep_config.m_values, "m values (default 1..term count)");
    sweep->add_option("--partitions-per-m", sweep_config.partitions_per_m,
                      "distinct partitions sampled per m");
    sweep->add_option("--max-layers", sweep_config.max_layers, "largest layer count");
    sweep->add_option("--restarts", sweep_config.vha.restarts, "VHA restarts per cell");
    sweep->add_option("--lap-restarts", sweep_config.lap.restarts, "LAP restarts");
    sweep->add_option("--max-iterations", sweep_config.vha.max_iterations,
                      "optimizer iteration cap");

    auto* eig = app.add_subcommand("eig", "exact diagonalization of the model");
    add_common(eig, common);

    auto* close_cmd = app.add_subcommand("close", "one-off closure of a Hamiltonian partition");
    add_common(close_cmd, common);
    std::string partition_json;
    int close_m = 0;
    bool with_basis = false;
    close_cmd->add_option("--partition-json", partition_json,
                          "partition JSON file (default: all singletons)");
    close_cmd->add_option("--m", close_m, "sample one uniform m-block partition instead");
    close_cmd->add_flag("--basis", with_basis, "include the orthonormal basis in the output");

    try {
        app.parse(argc, argv);

        if (*scaling) {
            const auto result = run_scaling2q(common);
            std::cout << "subsets " << result.total_subsets << " -> " << result.csv_path.string()
                      << "\n";
        } else if (*dist) {
            const auto result = run_rank_dist(common, dist_config);
            std::cout << "max rank " << result.max_rank << " -> " << result.dist_csv.string()
                      << "\n";
        } else if (*evol) {
            const auto result = run_rank_evol(common, evol_config);
            std::cout << "max rank " << result.max_rank << ", traces "
                      << result.samples.size() << " -> " << result.traces_csv.string() << "\n";
        } else if (*proxy) {
            const auto result = run_proxy(common, proxy_config);
            std::cout << "mean abs calibration error "
                      << format_double(result.backtest.mean_abs_error) << " -> "
                      << result.model_json.string() << "\n";
        } else if (*sweep) {
            const auto result = run_vqe_sweep(common, sweep_config);
            std::cout << "LAP energy " << format_double(result.sweep.lap_energy) << ", "
                      << result.sweep.cells.size() << " rows -> "
                      << result.cells_csv.string() << "\n";
        } else if (*eig) {
            const HamiltonianSpec spec = resolve_model(common);
            std::filesystem::create_directories(common.out_dir);
            const double e0 = exact_ground_energy(spec);
            json out = {{"n_qubits", spec.n_qubits},
                        {"n_terms", spec.n_terms()},
                        {"ground_energy", e0}};
            write_json_file(common.out_dir / "eig.json", out);
            write_manifest(common, "eig", json::object(),
                           {(common.out_dir / "eig.json").string()});
            std::cout << out.dump(2) << "\n";
        } else if (*close_cmd) {
            const HamiltonianSpec spec = resolve_model(common);
            std::filesystem::create_directories(common.out_dir);
            Partition partition = Partition::singletons(static_cast<int>(spec.n_terms()));
            if (!partition_json.empty()) {
                partition = partition_from_json(read_json_file(partition_json));
            } else if (close_m > 0) {
                auto rng = make_rng(derive_seed(common.seed, {0xc105e}));
                partition = sample_partition(static_cast<int>(spec.n_terms()), close_m, rng);
            }
            ClosureOptions options;
            options.keep_basis = with_basis;
            const auto trace =
                close_algebra(generators_from_partition(spec, partition), options);
            json out = to_json(trace, with_basis);
            out["partition"] = to_json(partition);
            write_json_file(common.out_dir / "closure.json", out);
            write_manifest(common, "close", {{"partition", partition.key()}},
                           {(common.out_dir / "closure.json").string()});
            std::cout << "final rank " << trace.final_rank() << " (traceless "
                      << trace.traceless_rank() << ")\n";
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        int status = 0;
        char* demangled = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
        lierank::json err = {
            {"error",
             {{"type", status == 0 && demangled ? demangled : typeid(e).name()},
              {"message", e.what()}}}};
        std::free(demangled);
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
