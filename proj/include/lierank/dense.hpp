#pragma once

#include "lierank/pauli.hpp"

#include <Eigen/Dense>
#include <complex>

namespace lierank {

// Dense 2^n x 2^n matrix of a bare Hermitian word.
Eigen::MatrixXcd word_to_dense(const PauliWord& w, int n_qubits);

// Dense matrix of a real-coefficient operator. Throws CapacityError above
// kDenseCap qubits.
Eigen::MatrixXcd to_dense(const PauliOperator& op);

Eigen::MatrixXcd to_dense(const PauliString& s);

// Recovers the coefficient of each word via Tr(W^dag M) / 2^n.
double dense_coeff(const Eigen::MatrixXcd& m, const PauliWord& w, int n_qubits);

// out[s ^ w.x] += c * i^{|Y|} * (-1)^{popcount(s & w.z)} * in[s] for all s.
void apply_word(const PauliWord& w, std::complex<double> scale,
                const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

// op |in>, accumulated term by term without forming the dense matrix.
Eigen::VectorXcd apply_operator(const PauliOperator& op, const Eigen::VectorXcd& in);

} // namespace lierank
