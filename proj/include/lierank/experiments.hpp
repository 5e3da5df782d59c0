#pragma once

#include "lierank/io.hpp"
#include "lierank/proxy.hpp"
#include "lierank/vqe.hpp"

#include <filesystem>
#include <map>
#include <optional>

namespace lierank {

struct CommonOptions {
    std::uint64_t seed = 12345;
    int jobs = 1;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> model_json; // overrides the built-in model
    double J = kDefaultJ;
    double delta = kDefaultDelta;
    double h = kDefaultH;
};

// model_json wins over the built-in xxz couplings
HamiltonianSpec resolve_model(const CommonOptions& common);

void write_manifest(const CommonOptions& common, const std::string& command,
                    const json& resolved_config, const std::vector<std::string>& outputs,
                    const json& notes = json::object());

// ---- two-qubit exhaustive scan -------------------------------------------

struct Scaling2qSummary {
    int m = 0;
    int min_rank = 0;
    int max_rank = 0;
    int max_traceless_rank = 0;
    int n_subsets = 0;
    int n_fully_controllable = 0; // traceless rank 15
};

struct Scaling2qResult {
    std::vector<Scaling2qSummary> per_m;
    std::size_t total_subsets = 0;
    std::filesystem::path csv_path;
};

Scaling2qResult run_scaling2q(const CommonOptions& common);

// ---- rank distribution over sampled partitions ----------------------------

struct RankDistConfig {
    int n_samples = 1000; // per m
    int m_lo = 1;
    int m_hi = 0; // 0 = number of terms
};

struct RankDistResult {
    int max_rank = 0; // rank of the full singleton-partition closure
    // P(l_r | m): probability of each final rank per m
    std::map<int, std::map<int, double>> distribution;
    std::map<int, double> p_max; // probability of reaching max_rank per m
    std::filesystem::path dist_csv;
    std::filesystem::path pmax_csv;
};

RankDistResult run_rank_dist(const CommonOptions& common, const RankDistConfig& config);

// ---- rank evolution traces -------------------------------------------------

struct RankEvolConfig {
    int n_samples = 200; // per m
    int m_lo = 1;
    int m_hi = 0;
    int export_iteration_cap = 9; // full traces stay in the raw file
};

struct RankEvolResult {
    int max_rank = 0;
    std::vector<TraceSample> samples;
    std::map<std::pair<int, int>, double> mean_rank; // (m, iteration) -> mean
    std::filesystem::path traces_csv;
    std::filesystem::path means_csv;
    std::filesystem::path raw_json;
};

RankEvolResult run_rank_evol(const CommonOptions& common, const RankEvolConfig& config);

// ---- reachability proxy -----------------------------------------------------

struct ProxyRunConfig {
    int k = 3;
    RankEvolConfig evol; // used when no precomputed samples are supplied
};

struct ProxyRunResult {
    ProxyModel model;
    BacktestResult backtest;
    int max_rank = 0;
    bool any_step_fallback = false;
    std::filesystem::path model_json;
    std::filesystem::path calibration_csv;
};

// Even sample indices fit the model, odd ones form the held-out backtest.
ProxyRunResult run_proxy(const CommonOptions& common, const ProxyRunConfig& config,
                         const RankEvolResult* precomputed = nullptr);

// ---- VHA / LAP energy sweep -------------------------------------------------

struct VqeSweepConfig {
    std::vector<int> m_values;   // empty = 1..n_terms
    int partitions_per_m = 5;    // distinct sampled partitions (fewer if S(n,m) is smaller)
    int max_layers = 8;
    OptimizerSettings vha;       // restarts default 10
    OptimizerSettings lap;       // restarts default 20
    VqeSweepConfig() { lap.restarts = 20; }
};

struct VqeSweepResult {
    SweepResult sweep;
    std::vector<Partition> partitions;
    std::filesystem::path cells_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path lap_json;
};

VqeSweepResult run_vqe_sweep(const CommonOptions& common, const VqeSweepConfig& config);

} // namespace lierank
