#pragma once

#include <span>
#include <utility>
#include <vector>

namespace lierank {

// One closure run feeding the proxy fit: partition size, the per-iteration
// rank trace, and whether the run ended at the model's maximum rank.
struct TraceSample {
    int m = 0;
    std::vector<int> ranks;
    bool reached_max = false;

    int rank_at(int k) const;
};

// Per-m reachability curve: 1 for x >= a, a logistic 1/(1 + alpha e^{beta x})
// below, linearly interpolated on the observed rank grid.
struct ProxyCurve {
    int m = 0;
    double a = 0.0;      // mean rank at the fit iteration
    double alpha = 0.0;
    double beta = 0.0;
    double p_min = 0.0;
    std::vector<std::pair<double, double>> nodes; // (rank, value), ascending
    bool step_fallback = false; // too few distinct ranks below a for a logistic

    double evaluate(double rank) const;
};

struct ProxyModel {
    int k = 3;
    std::vector<ProxyCurve> curves;

    const ProxyCurve* find(int m) const;
};

// Fits one curve per distinct m. The logistic constants come from two
// conditions: value p_min(m) at the smallest observed rank and 0.99 just
// below a (a one-sided continuity gap of 0.01 at the plateau). p_min rises
// linearly in m between the given endpoints.
ProxyModel fit_proxy(std::span<const TraceSample> samples, int k, double p_min_lo = 0.25,
                     double p_min_hi = 0.95);

// L(rank_at_k) clamped to [0, 1]. Throws if the model has no curve for m.
double predict(const ProxyModel& model, int m, double rank_at_k);

struct CalibrationBin {
    int m = 0;
    int rank = 0;
    double predicted = 0.0;
    double empirical = 0.0;
    int count = 0;
};

struct BacktestResult {
    std::vector<CalibrationBin> bins;
    double mean_abs_error = 0.0;          // unweighted over bins
    double weighted_mean_abs_error = 0.0; // weighted by bin count
};

// Compares predictions against reached-max frequencies on held-out samples,
// binned by (m, rank at iteration k).
BacktestResult backtest_proxy(const ProxyModel& model, std::span<const TraceSample> holdout);

} // namespace lierank
