#pragma once

#include "lierank/models.hpp"

#include <Eigen/Dense>
#include <span>

namespace lierank {

struct StateVector {
    int n_qubits = 1;
    Eigen::VectorXcd amplitudes;

    static StateVector zero_state(int n_qubits);

    double norm() const { return amplitudes.norm(); }
};

// Hermitian Pauli-sum generator with its dense eigendecomposition cached, so
// exp(i theta H) applies exactly (no Trotterization inside a block).
class GeneratorGate {
public:
    explicit GeneratorGate(PauliOperator generator);

    const PauliOperator& generator() const { return generator_; }
    int n_qubits() const { return generator_.n_qubits(); }

    void apply_inplace(Eigen::VectorXcd& amplitudes, double theta) const;

    // dense unitary exp(i theta H)
    Eigen::MatrixXcd unitary(double theta) const;

    // ||V diag(lambda) V^dag - H||, for the cached-decomposition invariant
    double reconstruction_error() const;

private:
    PauliOperator generator_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

StateVector apply_exp(const StateVector& state, const GeneratorGate& gate, double theta);

// <psi|op|psi>; the imaginary residual must stay below 1e-10 or
// NumericalError is thrown.
double expectation(const StateVector& state, const PauliOperator& op);
double expectation(const StateVector& state, const HamiltonianSpec& spec);

enum class AnsatzKind { VHA, LAP };

struct AnsatzSpec {
    std::vector<PauliOperator> generators;
    int layers = 1;
    AnsatzKind kind = AnsatzKind::VHA;

    std::size_t parameter_count() const {
        return generators.size() * static_cast<std::size_t>(layers);
    }
};

// Ansatz with all gates cached: layer d applies generators in order with
// parameter theta[(d-1) * G + j].
class AnsatzCircuit {
public:
    explicit AnsatzCircuit(const AnsatzSpec& spec);

    const std::vector<GeneratorGate>& gates() const { return gates_; }
    int layers() const { return layers_; }
    int n_qubits() const;
    std::size_t parameter_count() const { return gates_.size() * static_cast<std::size_t>(layers_); }

    StateVector run(std::span<const double> params, const StateVector& initial) const;

private:
    std::vector<GeneratorGate> gates_;
    int layers_;
};

StateVector run_ansatz(const AnsatzSpec& spec, std::span<const double> params,
                       const StateVector& initial);

} // namespace lierank
