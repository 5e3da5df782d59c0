#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lierank/closure.hpp"
#include "lierank/dense.hpp"
#include "lierank/io.hpp"
#include "lierank/models.hpp"
#include "lierank/partitions.hpp"

#include <random>

using namespace lierank;

namespace {

PauliOperator op_from_text(std::string_view text, double coeff = 1.0) {
    return PauliOperator::from_string(PauliString::from_text(text), coeff);
}

std::vector<PauliOperator> xxz_singleton_generators(double h) {
    const auto spec = xxz_2x2(kDefaultJ, kDefaultDelta, h);
    return generators_from_partition(spec,
                                     Partition::singletons(static_cast<int>(spec.n_terms())));
}

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
        gens.push_back(op_from_text(std::string(static_cast<std::size_t>(n_qubits), 'X')));
    return gens;
}

} // namespace

TEST_CASE("one-qubit golden closures") {
    SUBCASE("a single X generates a one-dimensional algebra") {
        const std::vector<PauliOperator> gens{op_from_text("X")};
        const auto trace = close_algebra(gens);
        CHECK(trace.final_rank() == 1);
        CHECK(trace.rank_per_iteration.front() == 1);
        CHECK(!trace.reached_cap);
        CHECK(!trace.truncated);
        const auto report = controllability(trace);
        CHECK(report.traceless_rank == 1);
        CHECK(!report.fully_controllable);
    }
    SUBCASE("X and Y close to the full traceless algebra") {
        const std::vector<PauliOperator> gens{op_from_text("X"), op_from_text("Y")};
        const auto trace = close_algebra(gens);
        CHECK(trace.final_rank() == 3);
        CHECK(trace.rank_per_iteration == std::vector<int>{2, 3});
        CHECK(trace.reached_cap);
        const auto report = controllability(trace);
        CHECK(report.traceless_rank == 3);
        CHECK(report.fully_controllable);
    }
    SUBCASE("the sum X + Z is a single direction") {
        PauliOperator sum(1);
        sum.add(PauliString::from_text("X"), 1.0);
        sum.add(PauliString::from_text("Z"), 1.0);
        const auto trace = close_algebra(std::vector<PauliOperator>{sum});
        CHECK(trace.final_rank() == 1);
        CHECK(!controllability(trace).fully_controllable);
    }
}

TEST_CASE("identity handling and the traceless cap") {
    std::vector<PauliOperator> gens;
    for (const auto& s : two_qubit_pauli_set())
        gens.push_back(PauliOperator::from_string(s));
    const auto trace = close_algebra(gens);
    CHECK(trace.final_rank() == 16);
    CHECK(trace.identity_in_span);
    CHECK(trace.traceless_rank() == 15);
    CHECK(trace.reached_cap);
    const auto report = controllability(trace);
    CHECK(report.lie_rank == 16);
    CHECK(report.traceless_rank == 15);
    CHECK(report.fully_controllable);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(close_algebra(std::vector<PauliOperator>{}), std::invalid_argument);
    const std::vector<PauliOperator> mixed{op_from_text("X"), op_from_text("XX")};
    CHECK_THROWS_AS(close_algebra(mixed), SizeMismatchError);
}

TEST_CASE("truncated traces are flagged and rejected by controllability") {
    ClosureOptions options;
    options.max_iterations = 1;
    const auto trace = close_algebra(xxz_singleton_generators(0.0), options);
    CHECK(trace.truncated);
    CHECK(trace.rank_per_iteration == std::vector<int>{12, 36});
    CHECK_THROWS_AS(controllability(trace), TruncatedTraceError);
}

TEST_CASE("XXZ singleton closures match the dense-verified ranks") {
    SUBCASE("h = 0: the field atom vanishes and 12 strings close at 60") {
        const auto trace = close_algebra(xxz_singleton_generators(0.0));
        CHECK(trace.final_rank() == 60);
        CHECK(trace.rank_per_iteration == std::vector<int>{12, 36, 60, 60});
        CHECK(!trace.identity_in_span);
    }
    SUBCASE("h != 0: the aggregated field blows the algebra up to 126") {
        const auto trace = close_algebra(xxz_singleton_generators(0.1));
        CHECK(trace.final_rank() == 126);
        CHECK(trace.rank_per_iteration == std::vector<int>{13, 41, 109, 126, 126});
    }
    SUBCASE("dense oracle agrees at h = 0") {
        const auto gens = xxz_singleton_generators(0.0);
        CHECK(dense_closure_oracle(gens) == 60);
    }
    SUBCASE("the rank depends on the strings, not the coupling values") {
        CHECK(close_algebra(xxz_singleton_generators(0.3)).final_rank() == 126);
        const auto strong = xxz_2x2(1.0, -20.0, 1.0);
        const auto gens = generators_from_partition(
            strong, Partition::singletons(static_cast<int>(strong.n_terms())));
        CHECK(close_algebra(gens).final_rank() == 126);
    }
}

TEST_CASE("rank trace is monotone and the basis is orthonormal") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const auto gens = random_generator_set(n, rng);
        const auto trace = close_algebra(gens);

        for (std::size_t i = 1; i < trace.rank_per_iteration.size(); ++i) {
            CHECK(trace.rank_per_iteration[i] >= trace.rank_per_iteration[i - 1]);
            if (i + 1 < trace.rank_per_iteration.size())
                CHECK(trace.rank_per_iteration[i] > trace.rank_per_iteration[i - 1]);
        }
        CHECK(static_cast<int>(trace.basis.size()) == trace.final_rank());
        CHECK(trace.final_rank() <= 1 << (2 * n));
        if (!trace.identity_in_span)
            CHECK(trace.final_rank() <= (1 << (2 * n)) - 1);

        for (std::size_t i = 0; i < trace.basis.size(); ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                CHECK(std::abs(hs_inner(trace.basis[i], trace.basis[j]) - expected) < 1e-9);
            }
        }

        // span containment: commutators of basis elements project to zero residual
        for (std::size_t i = 0; i < trace.basis.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                auto c = commutator(trace.basis[i], trace.basis[j]);
                for (const auto& b : trace.basis)
                    c.axpy(-hs_inner(c, b), b);
                CHECK(c.norm() < 1e-9);
            }
        }
    }
}

TEST_CASE("generator monotonicity: closing a superset never lowers the rank") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        auto sub = random_generator_set(2, rng);
        auto super = sub;
        auto extra = random_generator_set(2, rng);
        super.insert(super.end(), extra.begin(), extra.end());
        CHECK(close_algebra(super).final_rank() >= close_algebra(sub).final_rank());
    }
}

TEST_CASE("sparse and dense closures agree on random sets") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const auto gens = random_generator_set(n, rng);
        CHECK(close_algebra(gens).final_rank() == dense_closure_oracle(gens));
    }
    for (int trial = 0; trial < 6; ++trial) {
        const auto gens = random_generator_set(3, rng);
        CHECK(close_algebra(gens).final_rank() == dense_closure_oracle(gens));
    }
}

TEST_CASE("dense oracle golden values") {
    CHECK(dense_closure_oracle(std::vector<PauliOperator>{op_from_text("X")}) == 1);
    const std::vector<PauliOperator> xy{op_from_text("X"), op_from_text("Y")};
    CHECK(dense_closure_oracle(xy) == 3);
    PauliOperator big(7);
    big.add_word(PauliWord{1, 0}, 1.0);
    CHECK_THROWS_AS(dense_closure_oracle(std::vector<PauliOperator>{big}), CapacityError);
}

TEST_CASE("closure trace serializes") {
    const std::vector<PauliOperator> gens{op_from_text("X"), op_from_text("Y")};
    const auto trace = close_algebra(gens);
    const json j = to_json(trace);
    CHECK(j.at("final_rank") == 3);
    CHECK(j.at("n_qubits") == 1);
    CHECK(j.at("reached_cap") == true);
    CHECK(j.at("rank_per_iteration") == std::vector<int>{2, 3});
    REQUIRE(j.contains("basis"));
    CHECK(j.at("basis").size() == 3);
    const auto op = operator_from_json(j.at("basis")[0]);
    CHECK(op.n_qubits() == 1);
    CHECK(std::abs(op.norm() - 1.0) < 1e-12);
}
