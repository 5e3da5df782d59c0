#include "lierank/dense.hpp"

namespace lierank {

namespace {

void check_dense_cap(int n_qubits) {
    if (n_qubits > kDenseCap)
        throw CapacityError("dense form limited to " + std::to_string(kDenseCap) +
                            " qubits, got " + std::to_string(n_qubits));
}

std::complex<double> i_power(int p) {
    switch (((p % 4) + 4) % 4) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

} // namespace

Eigen::MatrixXcd word_to_dense(const PauliWord& w, int n_qubits) {
    check_dense_cap(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> y_phase = i_power(std::popcount(w.x & w.z));
    for (std::size_t s = 0; s < dim; ++s) {
        double sign = (std::popcount(s & w.z) & 1) ? -1.0 : 1.0;
        m(s ^ w.x, s) = y_phase * sign;
    }
    return m;
}

Eigen::MatrixXcd to_dense(const PauliOperator& op) {
    check_dense_cap(op.n_qubits());
    const std::size_t dim = std::size_t{1} << op.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [w, c] : op.terms()) {
        const std::complex<double> scale = c * i_power(std::popcount(w.x & w.z));
        for (std::size_t s = 0; s < dim; ++s) {
            double sign = (std::popcount(s & w.z) & 1) ? -1.0 : 1.0;
            m(s ^ w.x, s) += scale * sign;
        }
    }
    return m;
}

Eigen::MatrixXcd to_dense(const PauliString& s) {
    return i_power(s.phase_exp) * word_to_dense(s.word, s.n_qubits);
}

double dense_coeff(const Eigen::MatrixXcd& m, const PauliWord& w, int n_qubits) {
    const Eigen::MatrixXcd wd = word_to_dense(w, n_qubits);
    const std::complex<double> tr = (wd.adjoint() * m).trace();
    return tr.real() / static_cast<double>(std::size_t{1} << n_qubits);
}

void apply_word(const PauliWord& w, std::complex<double> scale,
                const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    const std::size_t dim = static_cast<std::size_t>(in.size());
    const std::complex<double> base = scale * i_power(std::popcount(w.x & w.z));
    for (std::size_t s = 0; s < dim; ++s) {
        double sign = (std::popcount(s & w.z) & 1) ? -1.0 : 1.0;
        out[s ^ w.x] += base * sign * in[s];
    }
}

Eigen::VectorXcd apply_operator(const PauliOperator& op, const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (const auto& [w, c] : op.terms())
        apply_word(w, c, in, out);
    return out;
}

} // namespace lierank
