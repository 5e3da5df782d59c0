#include "lierank/closure.hpp"
#include "lierank/dense.hpp"

#include <Eigen/SVD>

namespace lierank {

namespace {

Eigen::VectorXd vectorize(const Eigen::MatrixXcd& m) {
    const Eigen::Index dim = m.rows();
    Eigen::VectorXd v(2 * dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            v[i * dim + j] = m(i, j).real();
            v[dim * dim + i * dim + j] = m(i, j).imag();
        }
    }
    return v;
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXd& v, Eigen::Index dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = {v[i * dim + j], v[dim * dim + i * dim + j]};
    return m;
}

// Orthonormal row-space basis from singular values above tol. JacobiSVD on
// purpose: BDCSVD's thin V can leave the row space on rank-deficient inputs
// with strongly degenerate spectra (observed on this very workload with
// Eigen 3.4), which silently inflates the closure.
Eigen::MatrixXd orthonormal_rows(const Eigen::MatrixXd& rows, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double thresh = tol * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > thresh)
        ++rank;
    return svd.matrixV().leftCols(rank).transpose();
}

} // namespace

int dense_closure_oracle(std::span<const PauliOperator> generators, double sv_tol) {
    if (generators.empty())
        throw std::invalid_argument("dense_closure_oracle: empty generator list");
    const int n = generators.front().n_qubits();
    if (n > kDenseCap)
        throw CapacityError("dense_closure_oracle limited to " + std::to_string(kDenseCap) +
                            " qubits");
    for (const auto& g : generators) {
        if (g.n_qubits() != n)
            throw SizeMismatchError("dense_closure_oracle: mixed qubit counts");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    const Eigen::Index vec_len = 2 * dim * dim;

    std::vector<Eigen::VectorXd> seed_rows;
    for (const auto& g : generators) {
        Eigen::VectorXd row = vectorize(to_dense(g));
        const double norm = row.norm();
        if (norm > kZeroTol)
            seed_rows.push_back(row / norm);
    }
    if (seed_rows.empty())
        return 0;
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(seed_rows.size()), vec_len);
    for (std::size_t i = 0; i < seed_rows.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = seed_rows[i];

    Eigen::MatrixXd basis = orthonormal_rows(rows, sv_tol);
    while (true) {
        const Eigen::Index r = basis.rows();
        std::vector<Eigen::MatrixXcd> mats;
        mats.reserve(static_cast<std::size_t>(r));
        for (Eigen::Index i = 0; i < r; ++i)
            mats.push_back(unvectorize(basis.row(i), dim));

        std::vector<Eigen::VectorXd> cand;
        const std::complex<double> minus_i{0.0, -1.0};
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < i; ++j) {
                Eigen::MatrixXcd c = minus_i * (mats[i] * mats[j] - mats[j] * mats[i]);
                // -i[A, B] of Hermitian A, B is Hermitian; enforcing that
                // here keeps rounding noise out of the anti-Hermitian
                // subspace. Rows stay unnormalized on purpose: near-zero
                // commutators must carry near-zero singular values instead
                // of roundoff blown up to unit norm.
                c = 0.5 * (c + c.adjoint()).eval();
                Eigen::VectorXd row = vectorize(c);
                if (row.norm() > kZeroTol)
                    cand.push_back(std::move(row));
            }
        }
        if (cand.empty())
            break;
        Eigen::MatrixXd stacked(r + static_cast<Eigen::Index>(cand.size()), vec_len);
        stacked.topRows(r) = basis;
        for (std::size_t i = 0; i < cand.size(); ++i)
            stacked.row(r + static_cast<Eigen::Index>(i)) = cand[i];
        Eigen::MatrixXd next = orthonormal_rows(stacked, sv_tol);
        if (next.rows() == r)
            break;
        basis = std::move(next);
    }
    return static_cast<int>(basis.rows());
}

} // namespace lierank
