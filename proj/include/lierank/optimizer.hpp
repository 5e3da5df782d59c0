#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace lierank {

struct BfgsOptions {
    int max_iterations = 400;
    double grad_tol = 1e-9;   // stop when ||g|| drops below
    double energy_tol = 1e-12; // stop when the per-step decrease drops below
};

struct BfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history; // objective value after each iteration
};

using ValueFn = std::function<double(const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Quasi-Newton minimizer: BFGS inverse-Hessian updates with Armijo
// backtracking. Deterministic for a given starting point.
BfgsResult minimize_bfgs(const ValueFn& value, const GradientFn& gradient, Eigen::VectorXd x0,
                         const BfgsOptions& options = {});

} // namespace lierank
