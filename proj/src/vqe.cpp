#include "lierank/vqe.hpp"

#include "lierank/parallel.hpp"
#include "lierank/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lierank {

VqeProblem::VqeProblem(const HamiltonianSpec& spec, const AnsatzSpec& ansatz,
                       std::optional<StateVector> initial)
    : circuit_(ansatz),
      hamiltonian_(to_dense(spec)),
      initial_(initial ? std::move(*initial) : StateVector::zero_state(spec.n_qubits)) {
    if (circuit_.n_qubits() != spec.n_qubits)
        throw SizeMismatchError("ansatz and Hamiltonian qubit counts differ");
    if (initial_.n_qubits != spec.n_qubits)
        throw SizeMismatchError("initial state and Hamiltonian qubit counts differ");
}

double VqeProblem::state_energy(const Eigen::VectorXcd& amplitudes) const {
    const std::complex<double> value = amplitudes.dot(hamiltonian_ * amplitudes);
    return value.real();
}

double VqeProblem::energy(std::span<const double> params) const {
    if (params.size() != n_params())
        throw SizeMismatchError("parameter count mismatch");
    Eigen::VectorXcd psi = initial_.amplitudes;
    const auto& gates = circuit_.gates();
    std::size_t k = 0;
    for (int d = 0; d < circuit_.layers(); ++d) {
        for (const auto& gate : gates)
            gate.apply_inplace(psi, params[k++]);
    }
    ++evaluation_count;
    return state_energy(psi);
}

Eigen::VectorXd VqeProblem::fd_gradient(std::span<const double> params, double step) const {
    if (params.size() != n_params())
        throw SizeMismatchError("parameter count mismatch");
    const auto& gates = circuit_.gates();
    const std::size_t n_gates = gates.size();
    const std::size_t positions = params.size();
    const Eigen::Index dim = initial_.amplitudes.size();

    // prefix[k]: state after the first k gates at the unperturbed angles
    std::vector<Eigen::VectorXcd> prefix(positions + 1);
    prefix[0] = initial_.amplitudes;
    for (std::size_t k = 0; k < positions; ++k) {
        prefix[k + 1] = prefix[k];
        gates[k % n_gates].apply_inplace(prefix[k + 1], params[k]);
    }

    // suffix[k]: product of the gates after position k, as a dense operator
    std::vector<Eigen::MatrixXcd> suffix(positions + 1);
    suffix[positions] = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t k = positions; k-- > 0;)
        suffix[k] = suffix[k + 1] * gates[k % n_gates].unitary(params[k]);

    Eigen::VectorXd grad(static_cast<Eigen::Index>(positions));
    for (std::size_t k = 0; k < positions; ++k) {
        const auto& gate = gates[k % n_gates];
        Eigen::VectorXcd plus = prefix[k];
        gate.apply_inplace(plus, params[k] + step);
        Eigen::VectorXcd minus = prefix[k];
        gate.apply_inplace(minus, params[k] - step);
        const double e_plus = state_energy(suffix[k + 1] * plus);
        const double e_minus = state_energy(suffix[k + 1] * minus);
        grad[static_cast<Eigen::Index>(k)] = (e_plus - e_minus) / (2.0 * step);
    }
    evaluation_count += static_cast<long>(2 * positions);
    return grad;
}

Eigen::VectorXd VqeProblem::fd_gradient_naive(std::span<const double> params, double step) const {
    std::vector<double> work(params.begin(), params.end());
    Eigen::VectorXd grad(static_cast<Eigen::Index>(params.size()));
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double saved = work[k];
        work[k] = saved + step;
        const double e_plus = energy(work);
        work[k] = saved - step;
        const double e_minus = energy(work);
        work[k] = saved;
        grad[static_cast<Eigen::Index>(k)] = (e_plus - e_minus) / (2.0 * step);
    }
    return grad;
}

VqeRun optimize(const HamiltonianSpec& spec, const AnsatzSpec& ansatz,
                const OptimizerSettings& settings, std::uint64_t seed,
                std::optional<StateVector> initial) {
    VqeProblem problem(spec, ansatz, std::move(initial));
    const std::size_t n = problem.n_params();

    VqeRun run;
    run.kind = ansatz.kind;
    run.layers = ansatz.layers;
    run.n_params = n;
    run.seed = seed;
    run.settings = settings;
    run.best_energy = std::numeric_limits<double>::infinity();

    BfgsOptions bfgs;
    bfgs.max_iterations = settings.max_iterations;
    bfgs.grad_tol = settings.grad_tol;
    bfgs.energy_tol = settings.energy_tol;

    const ValueFn value = [&](const Eigen::VectorXd& x) {
        return problem.energy({x.data(), static_cast<std::size_t>(x.size())});
    };
    const GradientFn gradient = [&](const Eigen::VectorXd& x) {
        return problem.fd_gradient({x.data(), static_cast<std::size_t>(x.size())},
                                   settings.fd_step);
    };

    for (int r = 0; r < settings.restarts; ++r) {
        auto rng = make_rng(derive_seed(seed, {0x7e5, static_cast<std::uint64_t>(r)}));
        std::uniform_real_distribution<double> dist(-settings.init_range, settings.init_range);
        Eigen::VectorXd x0(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0[i] = dist(rng);

        const long evals_before = problem.evaluation_count;
        BfgsResult res = minimize_bfgs(value, gradient, std::move(x0), bfgs);
        const long evals = problem.evaluation_count - evals_before;
        if (!std::isfinite(res.f))
            throw NumericalError("optimizer produced a non-finite energy at restart " +
                                 std::to_string(r) + " (seed " + std::to_string(seed) + ")");
        run.restart_results.push_back(
            {res.f, static_cast<int>(evals), res.iterations});
        if (res.f < run.best_energy) {
            run.best_energy = res.f;
            run.best_params.assign(res.x.data(), res.x.data() + res.x.size());
            run.energy_history = std::move(res.history);
        }
    }
    run.total_evaluations = static_cast<int>(problem.evaluation_count);
    return run;
}

AnsatzSpec build_lap(const HamiltonianSpec& spec, const ClosureOptions& closure_options) {
    const auto generators = generators_from_partition(
        spec, Partition::singletons(static_cast<int>(spec.n_terms())));
    ClosureTrace trace = close_algebra(generators, closure_options);
    if (trace.truncated)
        throw std::runtime_error("LAP construction needs a converged closure, got a truncated one");
    AnsatzSpec ansatz;
    ansatz.generators = std::move(trace.basis);
    ansatz.layers = 1;
    ansatz.kind = AnsatzKind::LAP;
    return ansatz;
}

SweepResult vha_sweep(const HamiltonianSpec& spec, std::span<const Partition> partitions,
                      std::span<const int> layer_range, const OptimizerSettings& vha_settings,
                      const OptimizerSettings& lap_settings, std::uint64_t seed, int jobs) {
    SweepResult result;
    result.lap = optimize(spec, build_lap(spec), lap_settings, derive_seed(seed, {0x1a9}));
    result.lap_energy = result.lap.best_energy;

    struct Task {
        std::size_t partition_index;
        std::size_t layer_index;
    };
    std::vector<Task> tasks;
    for (std::size_t pi = 0; pi < partitions.size(); ++pi)
        for (std::size_t li = 0; li < layer_range.size(); ++li)
            tasks.push_back({pi, li});

    std::vector<std::vector<SweepCell>> per_task(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t t) {
        const auto& task = tasks[t];
        const Partition& partition = partitions[task.partition_index];
        const int p = layer_range[task.layer_index];
        AnsatzSpec ansatz;
        ansatz.generators = generators_from_partition(spec, partition);
        ansatz.layers = p;
        ansatz.kind = AnsatzKind::VHA;
        const std::uint64_t cell_seed =
            derive_seed(seed, {0xce11, task.partition_index, static_cast<std::uint64_t>(p)});
        VqeRun run = optimize(spec, ansatz, vha_settings, cell_seed);
        auto& rows = per_task[t];
        for (std::size_t r = 0; r < run.restart_results.size(); ++r) {
            SweepCell cell;
            cell.m = partition.m();
            cell.partition_index = static_cast<int>(task.partition_index);
            cell.partition_key = partition.key();
            cell.p = p;
            cell.restart = static_cast<int>(r);
            cell.energy = run.restart_results[r].energy;
            cell.error_vs_lap = cell.energy - result.lap_energy;
            cell.evaluations = run.restart_results[r].evaluations;
            cell.seed = cell_seed;
            rows.push_back(cell);
        }
    });
    for (auto& rows : per_task)
        result.cells.insert(result.cells.end(), rows.begin(), rows.end());

    // per-(m, p) mean/std over every restart of every partition
    std::map<std::pair<int, int>, std::vector<double>> grouped;
    for (const auto& cell : result.cells)
        grouped[{cell.m, cell.p}].push_back(cell.error_vs_lap);
    for (const auto& [key, errors] : grouped) {
        SweepSummaryRow row;
        row.m = key.first;
        row.p = key.second;
        row.n_runs = static_cast<int>(errors.size());
        double mean = 0.0;
        for (double e : errors)
            mean += e;
        mean /= static_cast<double>(errors.size());
        double var = 0.0;
        for (double e : errors)
            var += (e - mean) * (e - mean);
        row.mean_error = mean;
        row.std_error = errors.size() > 1
                            ? std::sqrt(var / static_cast<double>(errors.size() - 1))
                            : 0.0;
        result.summary.push_back(row);
    }
    return result;
}

} // namespace lierank
