#include "lierank/proxy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace lierank {

int TraceSample::rank_at(int k) const {
    if (ranks.empty())
        return 0;
    const auto idx =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), ranks.size() - 1);
    return ranks[idx];
}

double ProxyCurve::evaluate(double rank) const {
    if (rank >= a)
        return 1.0;
    if (step_fallback)
        return p_min;
    if (nodes.empty())
        return 1.0;
    if (rank <= nodes.front().first)
        return nodes.front().second;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (rank <= nodes[i].first) {
            const auto& [x0, y0] = nodes[i - 1];
            const auto& [x1, y1] = nodes[i];
            const double t = (rank - x0) / (x1 - x0);
            return y0 + t * (y1 - y0);
        }
    }
    return nodes.back().second;
}

const ProxyCurve* ProxyModel::find(int m) const {
    for (const auto& c : curves) {
        if (c.m == m)
            return &c;
    }
    return nullptr;
}

ProxyModel fit_proxy(std::span<const TraceSample> samples, int k, double p_min_lo,
                     double p_min_hi) {
    if (samples.empty())
        throw std::invalid_argument("fit_proxy: no trace samples");
    if (k < 1)
        throw std::invalid_argument("fit_proxy: k must be >= 1");

    std::map<int, std::vector<int>> ranks_by_m;
    for (const auto& s : samples)
        ranks_by_m[s.m].push_back(s.rank_at(k));

    const int m_lo = ranks_by_m.begin()->first;
    const int m_hi = ranks_by_m.rbegin()->first;

    ProxyModel model;
    model.k = k;
    for (const auto& [m, ranks] : ranks_by_m) {
        ProxyCurve curve;
        curve.m = m;
        double mean = 0.0;
        for (int r : ranks)
            mean += r;
        curve.a = mean / static_cast<double>(ranks.size());
        curve.p_min =
            m_hi == m_lo
                ? p_min_hi
                : p_min_lo + (p_min_hi - p_min_lo) * static_cast<double>(m - m_lo) /
                                 static_cast<double>(m_hi - m_lo);

        const std::set<int> distinct(ranks.begin(), ranks.end());
        std::vector<int> below;
        for (int r : distinct) {
            if (static_cast<double>(r) < curve.a)
                below.push_back(r);
        }
        if (below.size() < 2) {
            curve.step_fallback = true;
            curve.nodes = {{curve.a, 1.0}};
            if (!below.empty())
                curve.nodes.insert(curve.nodes.begin(),
                                   {static_cast<double>(below.front()), curve.p_min});
        } else {
            // 1/(1 + alpha e^{beta x}) = p  <=>  alpha e^{beta x} = 1/p - 1
            const double x_min = below.front();
            const double r_min = 1.0 / curve.p_min - 1.0;
            const double r_top = 1.0 / 0.99 - 1.0;
            curve.beta = std::log(r_top / r_min) / (curve.a - x_min);
            curve.alpha = r_min * std::exp(-curve.beta * x_min);
            for (int r : distinct) {
                const double x = r;
                const double y =
                    x >= curve.a ? 1.0 : 1.0 / (1.0 + curve.alpha * std::exp(curve.beta * x));
                curve.nodes.emplace_back(x, y);
            }
            const bool has_plateau_node =
                std::any_of(curve.nodes.begin(), curve.nodes.end(),
                            [&](const auto& n) { return n.first == curve.a; });
            if (!has_plateau_node)
                curve.nodes.emplace_back(curve.a, 1.0);
            std::sort(curve.nodes.begin(), curve.nodes.end());
        }
        model.curves.push_back(std::move(curve));
    }
    return model;
}

double predict(const ProxyModel& model, int m, double rank_at_k) {
    const ProxyCurve* curve = model.find(m);
    if (!curve)
        throw std::invalid_argument("proxy model has no curve for m=" + std::to_string(m));
    return std::clamp(curve->evaluate(rank_at_k), 0.0, 1.0);
}

BacktestResult backtest_proxy(const ProxyModel& model, std::span<const TraceSample> holdout) {
    std::map<std::pair<int, int>, std::pair<int, int>> bins; // (m, rank) -> (hits, total)
    for (const auto& s : holdout) {
        auto& [hits, total] = bins[{s.m, s.rank_at(model.k)}];
        hits += s.reached_max ? 1 : 0;
        total += 1;
    }
    BacktestResult result;
    double acc = 0.0, weighted = 0.0;
    int n_samples = 0;
    for (const auto& [key, counts] : bins) {
        CalibrationBin bin;
        bin.m = key.first;
        bin.rank = key.second;
        bin.count = counts.second;
        bin.empirical = static_cast<double>(counts.first) / static_cast<double>(counts.second);
        bin.predicted = predict(model, bin.m, bin.rank);
        const double err = std::abs(bin.predicted - bin.empirical);
        acc += err;
        weighted += err * bin.count;
        n_samples += bin.count;
        result.bins.push_back(bin);
    }
    if (!result.bins.empty()) {
        result.mean_abs_error = acc / static_cast<double>(result.bins.size());
        result.weighted_mean_abs_error = weighted / static_cast<double>(n_samples);
    }
    return result;
}

} // namespace lierank
