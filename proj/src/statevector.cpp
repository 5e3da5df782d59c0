#include "lierank/statevector.hpp"

#include "lierank/dense.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace lierank {

StateVector StateVector::zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kDenseCap)
        throw CapacityError("statevector limited to " + std::to_string(kDenseCap) + " qubits");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    s.amplitudes[0] = 1.0;
    return s;
}

GeneratorGate::GeneratorGate(PauliOperator generator) : generator_(std::move(generator)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(generator_));
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

void GeneratorGate::apply_inplace(Eigen::VectorXcd& amplitudes, double theta) const {
    Eigen::VectorXcd coords = eigenvectors_.adjoint() * amplitudes;
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        coords[i] *= std::polar(1.0, theta * eigenvalues_[i]);
    amplitudes = eigenvectors_ * coords;
}

Eigen::MatrixXcd GeneratorGate::unitary(double theta) const {
    Eigen::VectorXcd phases(eigenvalues_.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases[i] = std::polar(1.0, theta * eigenvalues_[i]);
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

double GeneratorGate::reconstruction_error() const {
    const Eigen::MatrixXcd rebuilt =
        eigenvectors_ * eigenvalues_.cast<std::complex<double>>().asDiagonal() *
        eigenvectors_.adjoint();
    return (rebuilt - to_dense(generator_)).norm();
}

StateVector apply_exp(const StateVector& state, const GeneratorGate& gate, double theta) {
    if (state.n_qubits != gate.n_qubits())
        throw SizeMismatchError("gate and state qubit counts differ");
    StateVector out = state;
    gate.apply_inplace(out.amplitudes, theta);
    return out;
}

double expectation(const StateVector& state, const PauliOperator& op) {
    if (state.n_qubits != op.n_qubits())
        throw SizeMismatchError("operator and state qubit counts differ");
    const Eigen::VectorXcd applied = apply_operator(op, state.amplitudes);
    const std::complex<double> value = state.amplitudes.dot(applied);
    if (std::abs(value.imag()) > 1e-10)
        throw NumericalError("expectation has imaginary residual " +
                             std::to_string(value.imag()));
    return value.real();
}

double expectation(const StateVector& state, const HamiltonianSpec& spec) {
    if (state.n_qubits != spec.n_qubits)
        throw SizeMismatchError("Hamiltonian and state qubit counts differ");
    return expectation(state, spec.total());
}

AnsatzCircuit::AnsatzCircuit(const AnsatzSpec& spec) : layers_(spec.layers) {
    if (spec.layers < 1)
        throw std::invalid_argument("ansatz needs at least one layer");
    if (spec.generators.empty())
        throw std::invalid_argument("ansatz needs at least one generator");
    gates_.reserve(spec.generators.size());
    for (const auto& g : spec.generators)
        gates_.emplace_back(g);
}

int AnsatzCircuit::n_qubits() const { return gates_.front().n_qubits(); }

StateVector AnsatzCircuit::run(std::span<const double> params, const StateVector& initial) const {
    if (params.size() != parameter_count())
        throw SizeMismatchError("parameter count " + std::to_string(params.size()) +
                                " does not match ansatz (" +
                                std::to_string(parameter_count()) + ")");
    if (initial.n_qubits != n_qubits())
        throw SizeMismatchError("initial state qubit count differs from ansatz");
    StateVector state = initial;
    std::size_t k = 0;
    for (int d = 0; d < layers_; ++d) {
        for (const auto& gate : gates_)
            gate.apply_inplace(state.amplitudes, params[k++]);
    }
    return state;
}

StateVector run_ansatz(const AnsatzSpec& spec, std::span<const double> params,
                       const StateVector& initial) {
    return AnsatzCircuit(spec).run(params, initial);
}

} // namespace lierank
