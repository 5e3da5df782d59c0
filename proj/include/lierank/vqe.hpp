#pragma once

#include "lierank/closure.hpp"
#include "lierank/optimizer.hpp"
#include "lierank/partitions.hpp"
#include "lierank/statevector.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace lierank {

struct OptimizerSettings {
    int restarts = 10;
    int max_iterations = 400;
    double fd_step = 1e-6;     // central-difference step
    double grad_tol = 1e-9;
    double energy_tol = 1e-12;
    double init_range = 0.1;   // initial parameters uniform in (-range, range)
};

struct RestartResult {
    double energy = 0.0;
    int evaluations = 0;
    int iterations = 0;
};

struct VqeRun {
    AnsatzKind kind = AnsatzKind::VHA;
    int layers = 1;
    std::size_t n_params = 0;
    std::uint64_t seed = 0;
    OptimizerSettings settings;
    double best_energy = 0.0;
    std::vector<double> best_params;
    std::vector<double> energy_history; // per-iteration values of the best restart
    std::vector<RestartResult> restart_results;
    int total_evaluations = 0;
};

// Energy landscape of an ansatz on a Hamiltonian, with gates, the dense
// Hamiltonian matrix, and the initial state cached.
class VqeProblem {
public:
    VqeProblem(const HamiltonianSpec& spec, const AnsatzSpec& ansatz,
               std::optional<StateVector> initial = std::nullopt);

    std::size_t n_params() const { return circuit_.parameter_count(); }
    const AnsatzCircuit& circuit() const { return circuit_; }
    const StateVector& initial_state() const { return initial_; }

    double energy(std::span<const double> params) const;

    // Central finite differences evaluated through cached prefix states and
    // suffix operators; identical values to re-running the full circuit per
    // perturbation, in time linear in the gate count.
    Eigen::VectorXd fd_gradient(std::span<const double> params, double step) const;

    // Reference implementation: perturb one parameter, re-run everything.
    Eigen::VectorXd fd_gradient_naive(std::span<const double> params, double step) const;

    mutable long evaluation_count = 0; // energy-equivalent evaluations

private:
    AnsatzCircuit circuit_;
    Eigen::MatrixXcd hamiltonian_;
    StateVector initial_;

    double state_energy(const Eigen::VectorXcd& amplitudes) const;
};

// `restarts` independent BFGS runs from uniform (-init_range, init_range)
// starting points; returns the best. Deterministic given the seed.
VqeRun optimize(const HamiltonianSpec& spec, const AnsatzSpec& ansatz,
                const OptimizerSettings& settings, std::uint64_t seed,
                std::optional<StateVector> initial = std::nullopt);

// One-layer ansatz over the full closure basis of the singleton partition.
// Throws if the closure was truncated.
AnsatzSpec build_lap(const HamiltonianSpec& spec, const ClosureOptions& closure_options = {});

struct SweepCell {
    int m = 0;
    int partition_index = 0;
    std::string partition_key;
    int p = 1;
    int restart = 0;
    double energy = 0.0;
    double error_vs_lap = 0.0;
    int evaluations = 0;
    std::uint64_t seed = 0;
};

struct SweepSummaryRow {
    int m = 0;
    int p = 1;
    double mean_error = 0.0;
    double std_error = 0.0;
    int n_runs = 0;
};

struct SweepResult {
    VqeRun lap;
    double lap_energy = 0.0;
    std::vector<SweepCell> cells;           // one row per (partition, p, restart)
    std::vector<SweepSummaryRow> summary;   // over all restarts of all partitions per (m, p)
};

// Runs optimize for every (partition, layer count) pair against the LAP
// baseline (computed first). Cells parallelize over `jobs` workers with
// per-cell seeds.
SweepResult vha_sweep(const HamiltonianSpec& spec, std::span<const Partition> partitions,
                      std::span<const int> layer_range, const OptimizerSettings& vha_settings,
                      const OptimizerSettings& lap_settings, std::uint64_t seed, int jobs = 1);

} // namespace lierank
