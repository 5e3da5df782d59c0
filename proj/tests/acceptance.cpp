// Acceptance suite: one pass/fail line per criterion, measured values and
// timings printed alongside. Exit code 0 only when every criterion holds.

#include "lierank/dense.hpp"
#include "lierank/experiments.hpp"
#include "lierank/parallel.hpp"
#include "lierank/rng.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

using namespace lierank;

namespace {

struct CriterionResult {
    int id;
    std::string title;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<CriterionResult> g_results;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& title, bool pass, const std::string& detail,
            double seconds) {
    g_results.push_back({id, title, pass, detail, seconds});
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << "\n";
    std::istringstream lines(detail);
    std::string line;
    while (std::getline(lines, line))
        std::cout << "       " << line << "\n";
    std::cout << "       (" << format_double(seconds) << " s)\n";
    std::cout.flush();
}

PauliOperator op_from_text(std::string_view text, double coeff = 1.0) {
    return PauliOperator::from_string(PauliString::from_text(text), coeff);
}

int hardware_jobs() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// ---- criterion 1 -----------------------------------------------------------

void criterion_1() {
    Timer timer;
    // warm pass so the timed section measures the closures alone
    (void)close_algebra(std::vector<PauliOperator>{op_from_text("X")});

    Timer closure_timer;
    const auto trace_x = close_algebra(std::vector<PauliOperator>{op_from_text("X")});
    const auto report_x = controllability(trace_x);
    const auto trace_xy =
        close_algebra(std::vector<PauliOperator>{op_from_text("X"), op_from_text("Y")});
    const auto report_xy = controllability(trace_xy);
    const double closure_seconds = closure_timer.seconds();

    const bool pass = trace_x.final_rank() == 1 && !report_x.fully_controllable &&
                      trace_xy.final_rank() == 3 && report_xy.fully_controllable &&
                      closure_seconds < 1e-3;
    std::ostringstream detail;
    detail << "closure({X}) rank " << trace_x.final_rank() << ", fully_controllable "
           << report_x.fully_controllable << "; closure({X},{Y}) rank " << trace_xy.final_rank()
           << ", fully_controllable " << report_xy.fully_controllable << "; closures took "
           << format_double(closure_seconds * 1e3) << " ms (< 1 ms required)";
    report(1, "Appendix-A golden closures", pass, detail.str(), timer.seconds());
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_2(const std::filesystem::path& out_dir) {
    Timer timer;
    CommonOptions common;
    common.jobs = 4; // stated parallelism
    common.out_dir = out_dir / "scaling2q";
    const auto result = run_scaling2q(common);

    bool low_m_clean = true, m5_reaches = false, high_m_guaranteed = true;
    for (const auto& s : result.per_m) {
        if (s.m <= 4 && s.max_traceless_rank >= 15)
            low_m_clean = false;
        if (s.m == 5 && s.max_traceless_rank == 15)
            m5_reaches = true;
        if (s.m >= 15 && s.n_fully_controllable != s.n_subsets)
            high_m_guaranteed = false;
    }
    const double seconds = timer.seconds();
    const bool pass = result.total_subsets == 65535 && low_m_clean && m5_reaches &&
                      high_m_guaranteed && seconds < 60.0;
    std::ostringstream detail;
    detail << "subsets " << result.total_subsets << "; no m<=4 subset reaches traceless 15: "
           << low_m_clean << "; some m=5 subset does: " << m5_reaches
           << "; all m>=15 subsets do: " << high_m_guaranteed << "; runtime "
           << format_double(seconds) << " s (< 60 s at parallelism 4)";
    report(2, "two-qubit exhaustive scan", pass, detail.str(), timer.seconds());
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_3() {
    Timer timer;
    const auto spec = xxz_2x2(); // documented defaults
    const auto gens =
        generators_from_partition(spec, Partition::singletons(static_cast<int>(spec.n_terms())));
    const int sparse_rank = close_algebra(gens).final_rank();
    const int dense_rank = dense_closure_oracle(gens);

    const auto spec_h = xxz_2x2(kDefaultJ, kDefaultDelta, 0.1);
    const auto gens_h = generators_from_partition(
        spec_h, Partition::singletons(static_cast<int>(spec_h.n_terms())));
    const int sparse_rank_h = close_algebra(gens_h).final_rank();
    const int dense_rank_h = dense_closure_oracle(gens_h);

    const double seconds = timer.seconds();
    const bool pass = sparse_rank == 61 && dense_rank == 61 && seconds < 30.0;
    std::ostringstream detail;
    detail << "closure of the 13 singleton terms: " << sparse_rank << " (dense oracle "
           << dense_rank << ", engines " << (sparse_rank == dense_rank ? "agree" : "DISAGREE")
           << "); required exactly 61\n";
    detail << "nonzero-field variant (h=0.1): " << sparse_rank_h << " (dense oracle "
           << dense_rank_h << "); runtime " << format_double(seconds) << " s (< 30 s)";
    report(3, "XXZ maximum rank 61", pass, detail.str(), timer.seconds());
}

// ---- criterion 4 -----------------------------------------------------------

void criterion_4(const std::filesystem::path& out_dir, int jobs) {
    Timer timer;
    CommonOptions common;
    common.jobs = jobs;
    common.out_dir = out_dir / "rank_dist";
    common.seed = 424242;
    RankDistConfig config;
    config.n_samples = 1000;
    const auto result = run_rank_dist(common, config);

    auto probability = [&](int m, int rank) {
        const auto mit = result.distribution.find(m);
        if (mit == result.distribution.end())
            return 0.0;
        const auto rit = mit->second.find(rank);
        return rit == mit->second.end() ? 0.0 : rit->second;
    };
    const double p_rank1_m1 = probability(1, 1);
    const double p61_m4 = probability(4, 61);
    const double p61_m12 = probability(12, 61);
    const double p61_m13 = probability(13, 61);

    const bool pass =
        p_rank1_m1 == 1.0 && p61_m4 > 0.7 && p61_m12 == 1.0 && p61_m13 == 1.0;
    std::ostringstream detail;
    detail << "n_T=1000 per m; P(rank=1 | m=1) = " << format_double(p_rank1_m1)
           << " (required 1)\n";
    detail << "P(61 | m=4) = " << format_double(p61_m4) << " (required > 0.7); P(61 | m=12) = "
           << format_double(p61_m12) << ", P(61 | m=13) = " << format_double(p61_m13)
           << " (required 1)\n";
    detail << "measured maximum rank of this model is " << result.max_rank
           << ": P(max | m=4) = " << format_double(result.p_max.at(4)) << ", P(max | m=12) = "
           << format_double(result.p_max.at(12)) << ", P(max | m=13) = "
           << format_double(result.p_max.at(13));
    report(4, "rank-distribution shape", pass, detail.str(), timer.seconds());
}

// ---- criterion 5 -----------------------------------------------------------

std::vector<PauliOperator> random_generator_set(int n_qubits, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count_dist(1, 4);
    std::uniform_int_distribution<int> terms_dist(1, 3);
    std::uniform_int_distribution<std::uint64_t> word_dist(0, (1ull << n_qubits) - 1);
    std::uniform_real_distribution<double> coeff_dist(-1.5, 1.5);
    std::vector<PauliOperator> gens;
    const int count = count_dist(rng);
    for (int g = 0; g < count; ++g) {
        PauliOperator op(n_qubits);
        const int n_terms = terms_dist(rng);
        for (int t = 0; t < n_terms; ++t) {
            double c = coeff_dist(rng);
            if (std::abs(c) < 0.1)
                c = 1.0;
            op.add_word(PauliWord{word_dist(rng), word_dist(rng)}, c);
        }
        if (!op.empty())
            gens.push_back(std::move(op));
    }
    if (gens.empty())
        gens.push_back(op_from_text(std::string(static_cast<std::size_t>(n_qubits), 'Y')));
    return gens;
}

void criterion_5(int jobs) {
    Timer timer;
    struct Case {
        int n_qubits;
        std::uint64_t seed;
    };
    std::vector<Case> cases;
    for (int i = 0; i < 200; ++i)
        cases.push_back({1, derive_seed(5001, {static_cast<std::uint64_t>(i)})});
    for (int i = 0; i < 200; ++i)
        cases.push_back({2, derive_seed(5002, {static_cast<std::uint64_t>(i)})});
    for (int i = 0; i < 100; ++i)
        cases.push_back({3, derive_seed(5003, {static_cast<std::uint64_t>(i)})});

    std::vector<int> mismatches(cases.size(), 0);
    parallel_for(cases.size(), jobs, [&](std::size_t i) {
        auto rng = make_rng(cases[i].seed);
        const auto gens = random_generator_set(cases[i].n_qubits, rng);
        const int sparse = close_algebra(gens).final_rank();
        const int dense = dense_closure_oracle(gens);
        mismatches[i] = sparse == dense ? 0 : 1;
    });
    int total_mismatches = 0;
    for (int m : mismatches)
        total_mismatches += m;
    std::ostringstream detail;
    detail << "500 random generator sets (200 one-qubit, 200 two-qubit, 100 three-qubit): "
           << total_mismatches << " sparse/dense rank mismatches";
    report(5, "oracle equivalence on random sets", total_mismatches == 0, detail.str(),
           timer.seconds());
}

// ---- criterion 6 -----------------------------------------------------------

PauliOperator random_operator(int n_qubits, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> terms_dist(1, 4);
    std::uniform_int_distribution<std::uint64_t> word_dist(0, (1ull << n_qubits) - 1);
    std::uniform_real_distribution<double> coeff_dist(-2.0, 2.0);
    PauliOperator op(n_qubits);
    const int n_terms = terms_dist(rng);
    for (int t = 0; t < n_terms; ++t) {
        double c = coeff_dist(rng);
        if (std::abs(c) < 0.05)
            c = 0.5;
        op.add_word(PauliWord{word_dist(rng), word_dist(rng)}, c);
    }
    return op;
}

void criterion_6() {
    Timer timer;
    auto rng = make_rng(6006);
    int antisymmetry_fails = 0, jacobi_fails = 0, dense_fails = 0, orthonormal_fails = 0;

    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto a = random_operator(n, rng);
        const auto b = random_operator(n, rng);
        auto anti = commutator(a, b);
        anti.axpy(1.0, commutator(b, a));
        if (anti.norm() > 1e-12)
            ++antisymmetry_fails;
    }
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto a = random_operator(n, rng);
        const auto b = random_operator(n, rng);
        const auto c = random_operator(n, rng);
        auto jac = commutator(a, commutator(b, c));
        jac.axpy(1.0, commutator(b, commutator(c, a)));
        jac.axpy(1.0, commutator(c, commutator(a, b)));
        if (jac.norm() > 1e-10)
            ++jacobi_fails;
    }
    const std::complex<double> minus_i{0.0, -1.0};
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto a = random_operator(n, rng);
        const auto b = random_operator(n, rng);
        const Eigen::MatrixXcd da = to_dense(a), db = to_dense(b);
        if ((to_dense(commutator(a, b)) - minus_i * (da * db - db * da)).norm() > 1e-12)
            ++dense_fails;
    }
    // all 16 single-qubit products, exact
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (char la : letters) {
        for (char lb : letters) {
            const auto sa = PauliString::from_text(std::string(1, la));
            const auto sb = PauliString::from_text(std::string(1, lb));
            if ((to_dense(multiply(sa, sb)) - to_dense(sa) * to_dense(sb)).norm() != 0.0)
                ++dense_fails;
        }
    }
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const auto gens = random_generator_set(n, rng);
        const auto trace = close_algebra(gens);
        for (std::size_t i = 0; i < trace.basis.size() && !orthonormal_fails; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                if (std::abs(hs_inner(trace.basis[i], trace.basis[j]) - expected) > 1e-9) {
                    ++orthonormal_fails;
                    break;
                }
            }
        }
    }
    const bool pass = antisymmetry_fails == 0 && jacobi_fails == 0 && dense_fails == 0 &&
                      orthonormal_fails == 0;
    std::ostringstream detail;
    detail << "1016 cases: antisymmetry fails " << antisymmetry_fails << ", Jacobi fails "
           << jacobi_fails << ", dense-agreement fails " << dense_fails
           << ", orthonormality fails " << orthonormal_fails;
    report(6, "algebra property suite", pass, detail.str(), timer.seconds());
}

// ---- criterion 7 -----------------------------------------------------------

void criterion_7() {
    Timer timer;
    const auto spec = xxz_2x2();
    const double e0 = exact_ground_energy(spec);

    OptimizerSettings settings;
    settings.restarts = 4;
    settings.max_iterations = 200;
    AnsatzSpec vha;
    vha.generators = generators_from_partition(spec, Partition::singletons(13));
    vha.layers = 2;

    const auto run_a = optimize(spec, vha, settings, 70707);
    const auto run_b = optimize(spec, vha, settings, 70707);

    HamiltonianSpec one_qubit;
    one_qubit.n_qubits = 1;
    one_qubit.terms.push_back({op_from_text("Z"), "Z"});
    AnsatzSpec rot;
    rot.generators = {op_from_text("X")};
    const auto run_c = optimize(one_qubit, rot, settings, 11);

    bool bound_ok = run_c.best_energy >= -1.0 - 1e-9;
    for (const auto& r : run_a.restart_results)
        bound_ok = bound_ok && r.energy >= e0 - 1e-9;

    double max_seed_gap = std::abs(run_a.best_energy - run_b.best_energy);
    for (std::size_t i = 0; i < run_a.restart_results.size(); ++i)
        max_seed_gap = std::max(max_seed_gap, std::abs(run_a.restart_results[i].energy -
                                                       run_b.restart_results[i].energy));

    const bool pass = bound_ok && max_seed_gap <= 1e-10;
    std::ostringstream detail;
    detail << "exact ground energy " << format_double(e0) << "; all restart energies >= E0 - 1e-9: "
           << bound_ok << "\n";
    detail << "repeat with identical seed: max energy gap " << format_double(max_seed_gap)
           << " (required <= 1e-10)";
    report(7, "variational bound and determinism", pass, detail.str(), timer.seconds());
}

// ---- criterion 8 -----------------------------------------------------------

void criterion_8(const std::filesystem::path& out_dir, int jobs) {
    Timer timer;
    CommonOptions common;
    common.jobs = jobs;
    common.out_dir = out_dir / "vqe_sweep";
    common.seed = 88888;
    VqeSweepConfig config; // m = 1..13, 5 partitions per m, p <= 8, 10/20 restarts
    const auto result = run_vqe_sweep(common, config);
    const auto& sweep = result.sweep;

    double min_error = std::numeric_limits<double>::infinity();
    // best error over restarts per (partition, p); mean error per (partition, p)
    std::map<std::pair<int, int>, double> best_error;
    std::map<std::pair<int, int>, std::pair<double, int>> mean_acc;
    std::map<int, int> partition_m;
    for (const auto& cell : sweep.cells) {
        min_error = std::min(min_error, cell.error_vs_lap);
        const auto key = std::make_pair(cell.partition_index, cell.p);
        auto [it, fresh] = best_error.try_emplace(key, cell.error_vs_lap);
        if (!fresh)
            it->second = std::min(it->second, cell.error_vs_lap);
        auto& [acc, count] = mean_acc[key];
        acc += cell.error_vs_lap;
        count += 1;
        partition_m[cell.partition_index] = cell.m;
    }

    const bool ordering_ok = min_error >= -1e-6;

    // monotone mean decrease in p per partition, one non-monotone step allowed
    int worst_violations = 0;
    for (const auto& [index, m] : partition_m) {
        int violations = 0;
        double previous = std::numeric_limits<double>::infinity();
        for (int p = 1; p <= config.max_layers; ++p) {
            const auto it = mean_acc.find({index, p});
            if (it == mean_acc.end())
                continue;
            const double mean = it->second.first / it->second.second;
            if (mean > previous + 1e-9)
                ++violations;
            previous = mean;
        }
        worst_violations = std::max(worst_violations, violations);
    }
    const bool monotone_ok = worst_violations <= 1;

    // every sampled partition with m >= 6 reaches error < 1e-5 at some p <= 8
    bool fast_convergence_ok = true;
    int checked_partitions = 0;
    for (const auto& [index, m] : partition_m) {
        if (m < 6)
            continue;
        ++checked_partitions;
        double best = std::numeric_limits<double>::infinity();
        for (int p = 1; p <= config.max_layers; ++p) {
            const auto it = best_error.find({index, p});
            if (it != best_error.end())
                best = std::min(best, it->second);
        }
        if (!(best < 1e-5))
            fast_convergence_ok = false;
    }

    const bool pass = ordering_ok && monotone_ok && fast_convergence_ok;
    std::ostringstream detail;
    detail << "LAP energy " << format_double(sweep.lap_energy) << " over "
           << result.partitions.size() << " partitions, p <= " << config.max_layers << ", "
           << config.vha.restarts << " restarts (" << sweep.cells.size() << " runs)\n";
    detail << "min VHA error vs LAP " << format_double(min_error)
           << " (required >= -1e-6): " << ordering_ok << "\n";
    detail << "worst per-partition non-monotone steps " << worst_violations
           << " (allowed <= 1): " << monotone_ok << "\n";
    detail << "all " << checked_partitions
           << " partitions with m >= 6 reach error < 1e-5 at some p: " << fast_convergence_ok;
    report(8, "LAP vs VHA ordering", pass, detail.str(), timer.seconds());
}

// ---- criterion 9 -----------------------------------------------------------

void criterion_9(const std::filesystem::path& out_dir) {
    Timer timer;
    const auto calibration = calibrate_xxz();

    bool pass = false;
    std::ostringstream detail;
    if (calibration.matched) {
        const double energy =
            exact_ground_energy(xxz_2x2(calibration.default_J, calibration.default_delta,
                                        calibration.default_h));
        pass = std::abs(energy - calibration.reference_energy) <= calibration.tolerance;
        detail << "grid matched at J=" << calibration.default_J << ", h=" << calibration.default_h
               << " with ground energy " << format_double(energy);
    } else {
        // documented-discrepancy branch: the report must land in run manifests
        CommonOptions common;
        common.out_dir = out_dir / "calibration";
        std::filesystem::create_directories(common.out_dir);
        write_manifest(common, "eig", json::object(), {});
        const auto manifest = read_json_file(common.out_dir / "manifest_eig.json");
        const auto& recorded = manifest.at("calibration");
        pass = recorded.at("matched") == false &&
               std::abs(recorded.at("default_ground_energy").get<double>() -
                        calibration.default_ground_energy) < 1e-12;
        detail << "no (J, h) grid point reproduces " << format_double(calibration.reference_energy)
               << " within " << format_double(calibration.tolerance) << "; closest "
               << format_double(calibration.closest.energy) << " (per site "
               << format_double(calibration.closest.energy_per_site) << ") at J="
               << format_double(calibration.closest.J) << ", h="
               << format_double(calibration.closest.h) << "\n";
        detail << "discrepancy recorded in the manifest; exact-diagonalization oracle "
               << format_double(calibration.default_ground_energy) << " at defaults (J="
               << format_double(calibration.default_J) << ", delta="
               << format_double(calibration.default_delta) << ", h="
               << format_double(calibration.default_h) << ")";
    }
    report(9, "ground-energy calibration", pass, detail.str(), timer.seconds());
}

// ---- criterion 10 ----------------------------------------------------------

void criterion_10(const std::filesystem::path& out_dir, int jobs) {
    Timer timer;
    CommonOptions common;
    common.jobs = jobs;
    common.out_dir = out_dir / "proxy";
    common.seed = 101010;
    ProxyRunConfig config;
    config.k = 3;
    config.evol.n_samples = 200;
    const auto result = run_proxy(common, config);

    bool structure_ok = true;
    for (const auto& curve : result.model.curves) {
        if (predict(result.model, curve.m, curve.a) != 1.0 ||
            predict(result.model, curve.m, curve.a + 3.0) != 1.0)
            structure_ok = false;
        if (!curve.nodes.empty() && !curve.step_fallback) {
            const double x_min = curve.nodes.front().first;
            if (x_min < curve.a &&
                std::abs(predict(result.model, curve.m, x_min) - curve.p_min) > 1e-9)
                structure_ok = false;
        }
        double previous = -1.0;
        for (double x = 0.0; x <= curve.a + 5.0; x += 0.5) {
            const double y = predict(result.model, curve.m, x);
            if (y < previous - 1e-12 || y < 0.0 || y > 1.0)
                structure_ok = false;
            previous = y;
        }
    }
    const double mae = result.backtest.mean_abs_error;
    const bool pass = structure_ok && mae <= 0.2;
    std::ostringstream detail;
    detail << "k=3 fit over " << result.model.curves.size()
           << " m-curves (fit/holdout split of " << 2 * config.evol.n_samples
           << " traces per m); L monotone in [0,1], L(x>=a)=1, L(x_min)=p_min: " << structure_ok
           << "\n";
    detail << "held-out mean absolute calibration error " << format_double(mae)
           << " (required <= 0.2; count-weighted "
           << format_double(result.backtest.weighted_mean_abs_error) << ")";
    if (result.any_step_fallback)
        detail << "\nstep-function fallback engaged for at least one m";
    report(10, "reachability proxy sanity", pass, detail.str(), timer.seconds());
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path out_dir = "acceptance_out";
    int jobs = hardware_jobs();
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--out-dir" && i + 1 < argc)
            out_dir = argv[++i];
        else if (arg == "--jobs" && i + 1 < argc)
            jobs = std::stoi(argv[++i]);
    }
    std::filesystem::create_directories(out_dir);
    std::cout << "acceptance suite, out-dir " << out_dir.string() << ", jobs " << jobs << "\n\n";

    try {
        criterion_1();
        criterion_2(out_dir);
        criterion_3();
        criterion_4(out_dir, jobs);
        criterion_5(jobs);
        criterion_6();
        criterion_7();
        criterion_8(out_dir, jobs);
        criterion_9(out_dir);
        criterion_10(out_dir, jobs);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }

    int passed = 0;
    json summary = json::array();
    for (const auto& r : g_results) {
        passed += r.pass ? 1 : 0;
        summary.push_back({{"criterion", r.id},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
    }
    write_json_file(out_dir / "acceptance_results.json", summary);
    std::cout << "\n" << passed << "/" << g_results.size() << " criteria passed\n";
    return passed == static_cast<int>(g_results.size()) ? 0 : 1;
}
