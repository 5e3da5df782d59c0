#include "lierank/experiments.hpp"

#include "lierank/parallel.hpp"
#include "lierank/rng.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace lierank {

namespace {

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int resolve_m_hi(int m_hi, const HamiltonianSpec& spec) {
    return m_hi > 0 ? m_hi : static_cast<int>(spec.n_terms());
}

// rank of the fully parameterized (all-singletons) closure: the reference
// "maximum achievable" rank for reached-max bookkeeping
int singleton_closure_rank(const HamiltonianSpec& spec) {
    ClosureOptions options;
    options.keep_basis = false;
    const auto gens =
        generators_from_partition(spec, Partition::singletons(static_cast<int>(spec.n_terms())));
    return close_algebra(gens, options).final_rank();
}

} // namespace

HamiltonianSpec resolve_model(const CommonOptions& common) {
    if (common.model_json)
        return hamiltonian_from_json(read_json_file(*common.model_json));
    return xxz_2x2(common.J, common.delta, common.h);
}

void write_manifest(const CommonOptions& common, const std::string& command,
                    const json& resolved_config, const std::vector<std::string>& outputs,
                    const json& notes) {
    json manifest = {{"command", command},
                     {"version", kVersion},
                     {"timestamp_utc", timestamp_utc()},
                     {"seed", common.seed},
                     {"jobs", common.jobs},
                     {"config", resolved_config},
                     {"outputs", outputs},
                     {"notes", notes}};
    manifest["calibration"] = to_json(calibrate_xxz());
    write_json_file(common.out_dir / ("manifest_" + command + ".json"), manifest);
}

Scaling2qResult run_scaling2q(const CommonOptions& common) {
    std::filesystem::create_directories(common.out_dir);
    const auto strings = two_qubit_pauli_set();
    constexpr std::size_t n_subsets = (std::size_t{1} << 16) - 1;

    struct Row {
        int m;
        int rank;
        int traceless;
    };
    std::vector<Row> rows(n_subsets);
    ClosureOptions options;
    options.keep_basis = false;
    parallel_for(n_subsets, common.jobs, [&](std::size_t idx) {
        const std::uint32_t mask = static_cast<std::uint32_t>(idx + 1);
        std::vector<PauliOperator> generators;
        for (int b = 0; b < 16; ++b) {
            if ((mask >> b) & 1)
                generators.push_back(
                    PauliOperator::from_string(strings[static_cast<std::size_t>(b)]));
        }
        const ClosureTrace trace = close_algebra(generators, options);
        rows[idx] = {std::popcount(mask), trace.final_rank(), trace.traceless_rank()};
    });

    Scaling2qResult result;
    result.total_subsets = n_subsets;
    result.csv_path = common.out_dir / "scaling2q.csv";
    CsvWriter csv(result.csv_path, {"m", "subset_id", "final_rank", "traceless_rank"});
    std::map<int, Scaling2qSummary> per_m;
    for (std::size_t idx = 0; idx < n_subsets; ++idx) {
        const auto& row = rows[idx];
        csv.row({CsvWriter::cell(row.m), CsvWriter::cell(idx + 1), CsvWriter::cell(row.rank),
                 CsvWriter::cell(row.traceless)});
        auto& s = per_m[row.m];
        if (s.n_subsets == 0) {
            s.m = row.m;
            s.min_rank = row.rank;
            s.max_rank = row.rank;
        }
        s.min_rank = std::min(s.min_rank, row.rank);
        s.max_rank = std::max(s.max_rank, row.rank);
        s.max_traceless_rank = std::max(s.max_traceless_rank, row.traceless);
        s.n_subsets += 1;
        if (row.traceless == 15)
            s.n_fully_controllable += 1;
    }
    std::map<std::pair<int, int>, int> rank_histogram;
    for (const auto& row : rows)
        rank_histogram[{row.m, row.rank}] += 1;
    const auto hist_path = common.out_dir / "scaling2q_hist.csv";
    CsvWriter hist(hist_path, {"m", "final_rank", "count"});
    for (const auto& [key, count] : rank_histogram)
        hist.row({CsvWriter::cell(key.first), CsvWriter::cell(key.second),
                  CsvWriter::cell(count)});
    const auto summary_path = common.out_dir / "scaling2q_summary.csv";
    CsvWriter summary(summary_path, {"m", "n_subsets", "min_rank", "max_rank",
                                     "max_traceless_rank", "n_fully_controllable"});
    for (const auto& [m, s] : per_m) {
        result.per_m.push_back(s);
        summary.row({CsvWriter::cell(m), CsvWriter::cell(s.n_subsets),
                     CsvWriter::cell(s.min_rank), CsvWriter::cell(s.max_rank),
                     CsvWriter::cell(s.max_traceless_rank),
                     CsvWriter::cell(s.n_fully_controllable)});
    }
    write_manifest(common, "scaling2q", json::object(),
                   {result.csv_path.string(), hist_path.string(), summary_path.string()});
    return result;
}

namespace {

struct SampledClosure {
    int m = 0;
    int sample = 0;
    std::uint64_t seed = 0;
    Partition partition;
    std::vector<int> ranks;
};

// one closure per (m, sample), seeds derived from the root so any worker
// count produces identical tables
std::vector<SampledClosure> sample_closures(const HamiltonianSpec& spec, int m_lo, int m_hi,
                                            int n_samples, std::uint64_t root_seed, int jobs) {
    const int n_terms = static_cast<int>(spec.n_terms());
    struct Key {
        int m;
        int sample;
    };
    std::vector<Key> keys;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int t = 0; t < n_samples; ++t)
            keys.push_back({m, t});
    std::vector<SampledClosure> out(keys.size());
    ClosureOptions options;
    options.keep_basis = false;
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        const auto [m, t] = keys[i];
        const std::uint64_t seed = derive_seed(
            root_seed, {0xd157, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)});
        auto rng = make_rng(seed);
        SampledClosure sc;
        sc.m = m;
        sc.sample = t;
        sc.seed = seed;
        sc.partition = sample_partition(n_terms, m, rng);
        const auto gens = generators_from_partition(spec, sc.partition);
        sc.ranks = close_algebra(gens, options).rank_per_iteration;
        out[i] = std::move(sc);
    });
    return out;
}

} // namespace

RankDistResult run_rank_dist(const CommonOptions& common, const RankDistConfig& config) {
    std::filesystem::create_directories(common.out_dir);
    const HamiltonianSpec spec = resolve_model(common);
    const int m_hi = resolve_m_hi(config.m_hi, spec);

    RankDistResult result;
    result.max_rank = singleton_closure_rank(spec);
    const auto closures = sample_closures(spec, config.m_lo, m_hi, config.n_samples,
                                          common.seed, common.jobs);

    const auto raw_path = common.out_dir / "rank_dist_raw.csv";
    CsvWriter raw(raw_path, {"m", "sample", "seed", "partition_json", "final_rank"});
    std::map<int, std::map<int, int>> counts;
    std::map<int, int> totals;
    for (const auto& sc : closures) {
        const int rank = sc.ranks.empty() ? 0 : sc.ranks.back();
        raw.row({CsvWriter::cell(sc.m), CsvWriter::cell(sc.sample), CsvWriter::cell(sc.seed),
                 CsvWriter::cell(to_json(sc.partition).dump()), CsvWriter::cell(rank)});
        counts[sc.m][rank] += 1;
        totals[sc.m] += 1;
    }

    result.dist_csv = common.out_dir / "rank_dist.csv";
    CsvWriter dist(result.dist_csv, {"m", "lie_rank", "probability"});
    for (const auto& [m, ranks] : counts) {
        for (const auto& [rank, count] : ranks) {
            const double p = static_cast<double>(count) / totals[m];
            result.distribution[m][rank] = p;
            dist.row({CsvWriter::cell(m), CsvWriter::cell(rank), CsvWriter::cell(p)});
        }
    }
    result.pmax_csv = common.out_dir / "rank_dist_pmax.csv";
    CsvWriter pmax(result.pmax_csv, {"m", "p_max_rank"});
    for (const auto& [m, ranks] : counts) {
        double p = 0.0;
        if (auto it = ranks.find(result.max_rank); it != ranks.end())
            p = static_cast<double>(it->second) / totals[m];
        result.p_max[m] = p;
        pmax.row({CsvWriter::cell(m), CsvWriter::cell(p)});
    }
    write_manifest(common, "rank_dist",
                   {{"n_samples", config.n_samples},
                    {"m_lo", config.m_lo},
                    {"m_hi", m_hi},
                    {"max_rank", result.max_rank}},
                   {raw_path.string(), result.dist_csv.string(), result.pmax_csv.string()});
    return result;
}

RankEvolResult run_rank_evol(const CommonOptions& common, const RankEvolConfig& config) {
    std::filesystem::create_directories(common.out_dir);
    const HamiltonianSpec spec = resolve_model(common);
    const int m_hi = resolve_m_hi(config.m_hi, spec);

    RankEvolResult result;
    result.max_rank = singleton_closure_rank(spec);
    const auto closures = sample_closures(spec, config.m_lo, m_hi, config.n_samples,
                                          common.seed, common.jobs);

    result.traces_csv = common.out_dir / "rank_evol.csv";
    CsvWriter traces(result.traces_csv,
                     {"m", "sample", "partition_json", "iteration", "rank", "reached_max"});
    json raw = json::array();
    std::map<int, std::size_t> longest_trace;
    for (const auto& sc : closures) {
        const bool reached = !sc.ranks.empty() && sc.ranks.back() == result.max_rank;
        TraceSample sample;
        sample.m = sc.m;
        sample.ranks = sc.ranks;
        sample.reached_max = reached;
        result.samples.push_back(sample);
        longest_trace[sc.m] = std::max(longest_trace[sc.m], sc.ranks.size());
        for (std::size_t it = 0; it < sc.ranks.size(); ++it) {
            if (static_cast<int>(it) <= config.export_iteration_cap) {
                traces.row({CsvWriter::cell(sc.m), CsvWriter::cell(sc.sample),
                            CsvWriter::cell(to_json(sc.partition).dump()),
                            CsvWriter::cell(static_cast<int>(it)), CsvWriter::cell(sc.ranks[it]),
                            CsvWriter::cell(reached)});
            }
        }
        raw.push_back({{"m", sc.m},
                       {"sample", sc.sample},
                       {"seed", sc.seed},
                       {"partition", to_json(sc.partition)},
                       {"rank_per_iteration", sc.ranks},
                       {"reached_max", reached}});
    }
    // converged traces extend as constant, so a mean curve never dips
    result.means_csv = common.out_dir / "rank_evol_means.csv";
    CsvWriter means(result.means_csv, {"m", "iteration", "mean_rank", "n_traces"});
    for (const auto& [m, length] : longest_trace) {
        std::vector<const TraceSample*> group;
        for (const auto& s : result.samples)
            if (s.m == m)
                group.push_back(&s);
        for (std::size_t it = 0; it < length; ++it) {
            double acc = 0.0;
            for (const auto* s : group)
                acc += s->rank_at(static_cast<int>(it));
            const double mean = acc / static_cast<double>(group.size());
            result.mean_rank[{m, static_cast<int>(it)}] = mean;
            means.row({CsvWriter::cell(m), CsvWriter::cell(static_cast<int>(it)),
                       CsvWriter::cell(mean), CsvWriter::cell(static_cast<int>(group.size()))});
        }
    }
    result.raw_json = common.out_dir / "rank_evol_raw.json";
    write_json_file(result.raw_json, {{"max_rank", result.max_rank}, {"traces", raw}});
    write_manifest(common, "rank_evol",
                   {{"n_samples", config.n_samples},
                    {"m_lo", config.m_lo},
                    {"m_hi", m_hi},
                    {"export_iteration_cap", config.export_iteration_cap},
                    {"max_rank", result.max_rank}},
                   {result.traces_csv.string(), result.means_csv.string(),
                    result.raw_json.string()});
    return result;
}

ProxyRunResult run_proxy(const CommonOptions& common, const ProxyRunConfig& config,
                         const RankEvolResult* precomputed) {
    std::filesystem::create_directories(common.out_dir);
    RankEvolResult evol;
    if (precomputed) {
        evol = *precomputed;
    } else {
        evol = run_rank_evol(common, config.evol);
    }

    std::vector<TraceSample> fit_half, holdout_half;
    for (std::size_t i = 0; i < evol.samples.size(); ++i)
        (i % 2 == 0 ? fit_half : holdout_half).push_back(evol.samples[i]);

    ProxyRunResult result;
    result.max_rank = evol.max_rank;
    result.model = fit_proxy(fit_half, config.k);
    for (const auto& c : result.model.curves)
        result.any_step_fallback = result.any_step_fallback || c.step_fallback;
    result.backtest = backtest_proxy(result.model, holdout_half);

    result.model_json = common.out_dir / "proxy_model.json";
    write_json_file(result.model_json, to_json(result.model));
    result.calibration_csv = common.out_dir / "proxy_calibration.csv";
    CsvWriter calib(result.calibration_csv, {"m", "rank", "predicted", "empirical", "count"});
    for (const auto& bin : result.backtest.bins) {
        calib.row({CsvWriter::cell(bin.m), CsvWriter::cell(bin.rank),
                   CsvWriter::cell(bin.predicted), CsvWriter::cell(bin.empirical),
                   CsvWriter::cell(bin.count)});
    }
    json notes = {{"mean_abs_calibration_error", result.backtest.mean_abs_error},
                  {"weighted_mean_abs_calibration_error",
                   result.backtest.weighted_mean_abs_error}};
    if (result.any_step_fallback)
        notes["step_fallback"] = "degenerate logistic fit for at least one m; step function used";
    write_manifest(common, "proxy",
                   {{"k", config.k},
                    {"n_samples", config.evol.n_samples},
                    {"max_rank", evol.max_rank}},
                   {result.model_json.string(), result.calibration_csv.string()}, notes);
    return result;
}

VqeSweepResult run_vqe_sweep(const CommonOptions& common, const VqeSweepConfig& config) {
    std::filesystem::create_directories(common.out_dir);
    const HamiltonianSpec spec = resolve_model(common);
    const int n_terms = static_cast<int>(spec.n_terms());

    std::vector<int> m_values = config.m_values;
    if (m_values.empty()) {
        for (int m = 1; m <= n_terms; ++m)
            m_values.push_back(m);
    }

    // distinct partitions per m, deduplicated by canonical key; m = 1 and
    // m = n_terms have a single partition each
    VqeSweepResult result;
    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        const int m = m_values[mi];
        std::set<std::string> seen;
        auto rng = make_rng(derive_seed(common.seed, {0x9a27, static_cast<std::uint64_t>(m)}));
        const BigInt available = count_partitions(n_terms, m);
        const int want = available < config.partitions_per_m
                             ? static_cast<int>(available)
                             : config.partitions_per_m;
        int attempts = 0;
        while (static_cast<int>(seen.size()) < want && attempts < 200 * want) {
            Partition p = sample_partition(n_terms, m, rng);
            if (seen.insert(p.key()).second)
                result.partitions.push_back(std::move(p));
            ++attempts;
        }
    }

    std::vector<int> layer_range;
    for (int p = 1; p <= config.max_layers; ++p)
        layer_range.push_back(p);

    result.sweep = vha_sweep(spec, result.partitions, layer_range, config.vha, config.lap,
                             common.seed, common.jobs);

    result.cells_csv = common.out_dir / "vqe_sweep_cells.csv";
    CsvWriter cells(result.cells_csv,
                    {"m", "partition_index", "partition_json", "p", "restart", "energy",
                     "error_vs_lap", "evaluations", "seed"});
    for (const auto& c : result.sweep.cells) {
        const auto& partition = result.partitions[static_cast<std::size_t>(c.partition_index)];
        cells.row({CsvWriter::cell(c.m), CsvWriter::cell(c.partition_index),
                   CsvWriter::cell(to_json(partition).dump()), CsvWriter::cell(c.p),
                   CsvWriter::cell(c.restart), CsvWriter::cell(c.energy),
                   CsvWriter::cell(c.error_vs_lap), CsvWriter::cell(c.evaluations),
                   CsvWriter::cell(c.seed)});
    }
    result.summary_csv = common.out_dir / "vqe_sweep_summary.csv";
    CsvWriter summary(result.summary_csv, {"m", "p", "mean_error", "std_error", "n_runs"});
    for (const auto& s : result.sweep.summary) {
        summary.row({CsvWriter::cell(s.m), CsvWriter::cell(s.p), CsvWriter::cell(s.mean_error),
                     CsvWriter::cell(s.std_error), CsvWriter::cell(s.n_runs)});
    }
    result.lap_json = common.out_dir / "vqe_lap.json";
    write_json_file(result.lap_json, to_json(result.sweep.lap));
    json summary_json = json::array();
    for (const auto& s2 : result.sweep.summary) {
        summary_json.push_back({{"m", s2.m},
                                {"p", s2.p},
                                {"mean_error", s2.mean_error},
                                {"std_error", s2.std_error},
                                {"n_runs", s2.n_runs}});
    }
    write_json_file(common.out_dir / "vqe_sweep_summary.json",
                    {{"lap_energy", result.sweep.lap_energy}, {"per_mp", summary_json}});

    write_manifest(common, "vqe_sweep",
                   {{"m_values", m_values},
                    {"partitions_per_m", config.partitions_per_m},
                    {"max_layers", config.max_layers},
                    {"vha_restarts", config.vha.restarts},
                    {"lap_restarts", config.lap.restarts},
                    {"lap_energy", result.sweep.lap_energy},
                    {"exact_ground_energy", exact_ground_energy(spec)}},
                   {result.cells_csv.string(), result.summary_csv.string(),
                    result.lap_json.string()});
    return result;
}

} // namespace lierank
