#include "lierank/models.hpp"

#include "lierank/dense.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>

namespace lierank {

PauliOperator HamiltonianSpec::total() const {
    PauliOperator sum(n_qubits);
    for (const auto& term : terms)
        sum += term.op;
    return sum;
}

std::vector<PauliString> two_qubit_pauli_set() {
    static constexpr std::array<char, 4> letters{'I', 'X', 'Y', 'Z'};
    std::vector<PauliString> out;
    out.reserve(16);
    for (char a : letters) {
        for (char b : letters) {
            out.push_back(PauliString::from_text(std::string{a, b}));
        }
    }
    return out;
}

HamiltonianSpec xxz_2x2(double J, double delta, double h) {
    // Sites row-major on the 2x2 lattice:  0 1
    //                                      2 3
    static constexpr std::array<std::pair<int, int>, 4> edges{{{0, 1}, {2, 3}, {0, 2}, {1, 3}}};
    HamiltonianSpec spec;
    spec.n_qubits = 4;
    auto two_body = [](char letter, int i, int j) {
        std::string text(4, 'I');
        text[static_cast<std::size_t>(i)] = letter;
        text[static_cast<std::size_t>(j)] = letter;
        return PauliString::from_text(text);
    };
    for (const auto& [i, j] : edges) {
        const std::string sites = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        spec.terms.push_back({PauliOperator::from_string(two_body('X', i, j), -J), "XX" + sites});
        spec.terms.push_back({PauliOperator::from_string(two_body('Y', i, j), -J), "YY" + sites});
        spec.terms.push_back(
            {PauliOperator::from_string(two_body('Z', i, j), -delta), "ZZ" + sites});
    }
    PauliOperator field(4);
    for (int k = 0; k < 4; ++k) {
        std::string text(4, 'I');
        text[static_cast<std::size_t>(k)] = 'Z';
        field.add(PauliString::from_text(text), -h);
    }
    spec.terms.push_back({std::move(field), "Z(all)"});
    return spec;
}

Eigen::MatrixXcd to_dense(const HamiltonianSpec& spec) { return to_dense(spec.total()); }

double exact_ground_energy(const HamiltonianSpec& spec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(spec),
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[0];
}

std::pair<double, Eigen::VectorXcd> exact_ground(const HamiltonianSpec& spec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(spec));
    return {solver.eigenvalues()[0], solver.eigenvectors().col(0)};
}

CalibrationReport calibrate_xxz() {
    CalibrationReport report;
    static constexpr std::array<double, 4> j_grid{1.0, 0.5, 0.25, 0.1};
    static constexpr std::array<double, 4> h_grid{0.0, 0.1, 0.5, 1.0};
    double best_gap = std::numeric_limits<double>::infinity();
    for (double J : j_grid) {
        for (double h : h_grid) {
            CalibrationPoint point;
            point.J = J;
            point.h = h;
            point.energy = exact_ground_energy(xxz_2x2(J, -20.0 * J, h));
            point.energy_per_site = point.energy / 4.0;
            report.grid.push_back(point);
            const double gap = std::min(std::abs(point.energy - report.reference_energy),
                                        std::abs(point.energy_per_site - report.reference_energy));
            if (gap < best_gap) {
                best_gap = gap;
                report.closest = point;
            }
            if (std::abs(point.energy - report.reference_energy) <= report.tolerance) {
                report.matched = true;
                report.default_J = J;
                report.default_h = h;
            }
        }
    }
    report.default_ground_energy =
        exact_ground_energy(xxz_2x2(report.default_J, report.default_delta, report.default_h));
    return report;
}

} // namespace lierank
