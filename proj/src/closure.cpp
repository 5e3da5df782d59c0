#include "lierank/closure.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lierank {

namespace {

struct WordHash {
    std::size_t operator()(const PauliWord& w) const {
        std::uint64_t h = w.x * 0x9e3779b97f4a7c15ull;
        h ^= (w.z + 0xbf58476d1ce4e5b9ull) + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Orthonormal basis kept two ways: dense coefficient rows over a growing
// word registry (fast Gram-Schmidt) and sparse operators (fast commutator
// candidates). Rows keep the registry length they had at insertion; later
// words have coefficient zero there by construction.
class GramSchmidtBasis {
public:
    explicit GramSchmidtBasis(int n_qubits, double tol) : n_qubits_(n_qubits), tol_(tol) {}

    std::size_t size() const { return rows_.size(); }
    const std::vector<PauliOperator>& ops() const { return ops_; }

    // Orthogonalizes the candidate against the basis (two passes); appends
    // it when the residual norm exceeds the tolerance.
    bool try_add(const PauliOperator& candidate) {
        if (candidate.empty())
            return false;
        densify(candidate);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& row : rows_) {
                double r = 0.0;
                for (std::size_t i = 0; i < row.size(); ++i)
                    r += scratch_[i] * row[i];
                if (r != 0.0) {
                    for (std::size_t i = 0; i < row.size(); ++i)
                        scratch_[i] -= r * row[i];
                }
            }
        }
        double norm_sq = 0.0;
        for (double v : scratch_)
            norm_sq += v * v;
        const double norm = std::sqrt(norm_sq);
        if (norm <= tol_)
            return false;
        const double inv = 1.0 / norm;
        for (double& v : scratch_)
            v *= inv;
        rows_.push_back(scratch_);
        PauliOperator op(n_qubits_);
        std::vector<PauliOperator::Term> terms;
        for (std::size_t i = 0; i < scratch_.size(); ++i) {
            if (std::abs(scratch_[i]) >= kZeroTol)
                terms.emplace_back(words_[i], scratch_[i]);
        }
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [w, c] : terms)
            op.add_word(w, c);
        ops_.push_back(std::move(op));
        return true;
    }

    // squared norm of the projection of the identity direction onto the span
    double identity_projection_sq() const {
        auto it = index_.find(PauliWord{});
        if (it == index_.end())
            return 0.0;
        const std::size_t id = static_cast<std::size_t>(it->second);
        double acc = 0.0;
        for (const auto& row : rows_) {
            if (id < row.size())
                acc += row[id] * row[id];
        }
        return acc;
    }

private:
    int n_qubits_;
    double tol_;
    std::unordered_map<PauliWord, int, WordHash> index_;
    std::vector<PauliWord> words_;
    std::vector<std::vector<double>> rows_;
    std::vector<PauliOperator> ops_;
    std::vector<double> scratch_;

    void densify(const PauliOperator& candidate) {
        for (const auto& [w, c] : candidate.terms()) {
            if (index_.emplace(w, static_cast<int>(words_.size())).second)
                words_.push_back(w);
        }
        scratch_.assign(words_.size(), 0.0);
        for (const auto& [w, c] : candidate.terms())
            scratch_[static_cast<std::size_t>(index_.at(w))] = c;
    }
};

} // namespace

int ClosureTrace::rank_at(int k) const {
    if (rank_per_iteration.empty())
        return 0;
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)),
                                           rank_per_iteration.size() - 1);
    return rank_per_iteration[idx];
}

ClosureTrace close_algebra(std::span<const PauliOperator> generators,
                           const ClosureOptions& options) {
    if (generators.empty())
        throw std::invalid_argument("close_algebra: empty generator list");
    const int n = generators.front().n_qubits();
    for (const auto& g : generators) {
        if (g.n_qubits() != n)
            throw SizeMismatchError("close_algebra: generators on mixed qubit counts");
    }

    ClosureTrace trace;
    trace.n_qubits = n;

    GramSchmidtBasis basis(n, options.independence_tol);
    for (const auto& g : generators)
        basis.try_add(g);
    trace.rank_per_iteration.push_back(static_cast<int>(basis.size()));

    // Commutators are traceless, so once the traceless projection saturates
    // su(2^n) the only direction left is the identity. With the identity
    // fully inside or fully absent from the span that means convergence; a
    // mixed identity component can still be pulled in by one more traceless
    // candidate, so no early stop then.
    const bool cap_known = n <= 31;
    const std::uint64_t traceless_cap = cap_known ? ((std::uint64_t{1} << (2 * n)) - 1) : 0;
    auto at_cap = [&] {
        if (!cap_known)
            return false;
        const double id_sq = basis.identity_projection_sq();
        const bool id_in_span = id_sq > 1.0 - options.independence_tol;
        const bool id_absent = id_sq < options.independence_tol;
        const std::uint64_t traceless =
            static_cast<std::uint64_t>(basis.size()) - (id_in_span ? 1 : 0);
        return traceless == traceless_cap && (id_in_span || id_absent);
    };

    std::size_t new_lo = 0;
    int iter = 0;
    std::vector<PauliOperator> candidates;
    while (basis.size() > 0) {
        if (at_cap()) {
            trace.reached_cap = true;
            break;
        }
        if (options.max_iterations > 0 && iter >= options.max_iterations) {
            trace.truncated = true;
            break;
        }
        const std::size_t hi = basis.size();
        candidates.clear();
        for (std::size_t i = new_lo; i < hi; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                PauliOperator c = commutator(basis.ops()[i], basis.ops()[j]);
                if (!c.empty())
                    candidates.push_back(std::move(c));
            }
        }
        new_lo = hi;
        std::sort(candidates.begin(), candidates.end(), operator_text_less);
        std::size_t added = 0;
        for (const auto& c : candidates) {
            if (basis.try_add(c))
                ++added;
        }
        ++iter;
        trace.rank_per_iteration.push_back(static_cast<int>(basis.size()));
        if (added == 0)
            break;
    }

    trace.identity_in_span =
        basis.identity_projection_sq() > 1.0 - options.independence_tol;
    if (options.keep_basis)
        trace.basis = basis.ops();
    return trace;
}

ControllabilityReport controllability(const ClosureTrace& trace) {
    if (trace.truncated)
        throw TruncatedTraceError(
            "closure stopped at max_iterations; controllability is inconclusive");
    ControllabilityReport report;
    report.lie_rank = trace.final_rank();
    report.traceless_rank = trace.traceless_rank();
    const int n = trace.n_qubits;
    report.fully_controllable =
        n <= 31 && static_cast<std::uint64_t>(report.traceless_rank) ==
                       (std::uint64_t{1} << (2 * n)) - 1;
    return report;
}

} // namespace lierank
