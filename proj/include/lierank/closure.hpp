#pragma once

#include "lierank/pauli.hpp"

#include <span>
#include <vector>

namespace lierank {

struct ClosureOptions {
    int max_iterations = 0; // 0 = run until convergence or the dimension cap
    double independence_tol = kIndependenceTol;
    bool keep_basis = true; // drop the basis ops for bulk rank scans
};

// Result of the iterative commutator closure. rank_per_iteration[0] is the
// rank of the deduplicated generator span; entry k is the rank after the
// k-th pass over new-times-all commutator candidates.
struct ClosureTrace {
    int n_qubits = 1;
    std::vector<PauliOperator> basis; // orthonormal, insertion order
    std::vector<int> rank_per_iteration;
    bool identity_in_span = false;
    bool reached_cap = false; // stopped at traceless dimension cap 4^n - 1 (conclusive)
    bool truncated = false;   // stopped at max_iterations (inconclusive)

    int final_rank() const {
        return rank_per_iteration.empty() ? 0 : rank_per_iteration.back();
    }
    int traceless_rank() const { return final_rank() - (identity_in_span ? 1 : 0); }

    // rank at iteration k, extended as constant past convergence
    int rank_at(int k) const;
};

struct ControllabilityReport {
    int lie_rank = 0;
    int traceless_rank = 0;
    bool fully_controllable = false;
};

// Iterative commutator closure with modified Gram-Schmidt independence
// filtering. Generators need not be independent; zero generators are
// dropped. Throws on an empty list or mixed qubit counts.
ClosureTrace close_algebra(std::span<const PauliOperator> generators,
                           const ClosureOptions& options = {});

// Throws TruncatedTraceError if the trace stopped at max_iterations.
ControllabilityReport controllability(const ClosureTrace& trace);

// Same closure on dense matrices with numerical rank from singular values;
// shares nothing with close_algebra beyond the operator-to-matrix bridge.
// Throws CapacityError above kDenseCap qubits.
int dense_closure_oracle(std::span<const PauliOperator> generators, double sv_tol = kIndependenceTol);

} // namespace lierank
