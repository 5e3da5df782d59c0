#include "lierank/optimizer.hpp"

#include <cmath>

namespace lierank {

BfgsResult minimize_bfgs(const ValueFn& value, const GradientFn& gradient, Eigen::VectorXd x0,
                         const BfgsOptions& options) {
    const Eigen::Index n = x0.size();
    BfgsResult result;
    result.x = std::move(x0);
    result.f = value(result.x);

    Eigen::VectorXd g = gradient(result.x);
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);

    constexpr double armijo_c1 = 1e-4;
    constexpr double min_step = 1e-14;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (g.norm() < options.grad_tol) {
            result.converged = true;
            break;
        }
        Eigen::VectorXd direction = -(h_inv * g);
        double slope = direction.dot(g);
        if (!(slope < 0.0)) {
            // reset to steepest descent when the model loses positivity
            h_inv.setIdentity();
            direction = -g;
            slope = -g.squaredNorm();
        }

        double alpha = 1.0;
        double f_next = result.f;
        while (alpha > min_step) {
            f_next = value(result.x + alpha * direction);
            if (std::isfinite(f_next) && f_next <= result.f + armijo_c1 * alpha * slope)
                break;
            alpha *= 0.5;
        }
        if (alpha <= min_step) {
            result.converged = true; // no descent left at this resolution
            break;
        }

        const Eigen::VectorXd x_next = result.x + alpha * direction;
        const Eigen::VectorXd g_next = gradient(x_next);
        const Eigen::VectorXd s = x_next - result.x;
        const Eigen::VectorXd y = g_next - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd outer_sy = s * y.transpose();
            h_inv = h_inv - rho * (outer_sy * h_inv + h_inv * outer_sy.transpose()) +
                    rho * rho * s * (y.transpose() * h_inv * y) * s.transpose() +
                    rho * s * s.transpose();
        }

        const double decrease = result.f - f_next;
        result.x = x_next;
        result.f = f_next;
        g = g_next;
        ++result.iterations;
        result.history.push_back(result.f);
        if (std::abs(decrease) < options.energy_tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace lierank
