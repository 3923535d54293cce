#include "ttmjc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ttmjc/ttm.hpp"

namespace ttmjc::analysis {

namespace {

using jcmodel::Damping;

struct ChannelOps {
    numlin::CMatrix generator;
    ttm::ProjectorPair pq;
};

ChannelOps channel_ops(const ModelParams& params, Channel channel) {
    switch (channel) {
    case Channel::Coherence:
        return {jcmodel::liouvillian_B(params), ttm::ProjectorPair::leading(2, 1)};
    case Channel::Population:
        return {jcmodel::liouvillian_A(params), ttm::ProjectorPair::leading(4, 1)};
    }
    throw std::invalid_argument("channel_ops: unknown channel");
}

} // namespace

const char* to_string(Channel channel) {
    return channel == Channel::Coherence ? "coherence" : "population";
}

ZeroTable markovian_steps(const ModelParams& params, int n) {
    if (n < 1) throw std::invalid_argument("markovian_steps: n must be >= 1");
    const jcmodel::Regime reg = jcmodel::regime(params);
    ZeroTable table{params, {}};
    if (reg.damping != Damping::Underdamped) return table;

    const double omega = params.g * std::sqrt(1.0 - reg.r * reg.r);
    const double pi = std::acos(-1.0);
    table.zeros.reserve(n);
    for (int m = 1; m <= n; ++m) table.zeros.push_back(m * pi / omega);
    return table;
}

SweepGrid heatmap_T2c(double gt_max, double ratio_max, int nx, int ny) {
    if (!(gt_max > 0.0) || !(ratio_max > 0.0))
        throw std::invalid_argument("heatmap_T2c: ranges must be positive");
    if (nx < 2 || ny < 2) throw std::invalid_argument("heatmap_T2c: need nx, ny >= 2");

    SweepGrid grid;
    grid.gt_values.reserve(nx);
    for (int i = 0; i < nx; ++i) grid.gt_values.push_back(gt_max * i / (nx - 1));
    grid.ratio_values.reserve(ny);
    for (int j = 0; j < ny; ++j) grid.ratio_values.push_back(ratio_max * j / (ny - 1));

    grid.values.assign(ny, std::vector<double>(nx, 0.0));
    for (int j = 0; j < ny; ++j) {
        const ModelParams params{1.0, 4.0 * grid.ratio_values[j]};
        for (int i = 0; i < nx; ++i)
            grid.values[j][i] = jcmodel::T2c(params, grid.gt_values[i]);
    }
    return grid;
}

std::vector<KernelDiffPoint> kernel_difference_curve(const ModelParams& params, double t_max,
                                                     int samples, const std::vector<int>& k_list,
                                                     Channel channel) {
    if (!(t_max > 0.0)) throw std::invalid_argument("kernel_difference_curve: t_max must be > 0");
    if (samples < 1) throw std::invalid_argument("kernel_difference_curve: samples must be >= 1");
    if (k_list.empty()) throw std::invalid_argument("kernel_difference_curve: empty k list");
    for (int k : k_list)
        if (k < 2) throw std::invalid_argument("kernel_difference_curve: k entries must be >= 2");

    const ChannelOps ops = channel_ops(params, channel);
    std::vector<KernelDiffPoint> out;
    out.reserve(k_list.size() * static_cast<std::size_t>(samples));
    for (int k : k_list)
        for (int i = 1; i <= samples; ++i) {
            const double t = t_max * i / samples;
            out.push_back({t, k, ttm::continuum_limit_error(ops.generator, ops.pq, t, k)});
        }
    return out;
}

std::vector<TrajectoryPoint> regime_trajectories(const std::vector<ModelParams>& params_list,
                                                 double t_max, int samples, Channel channel,
                                                 int mark_zeros) {
    if (!(t_max > 0.0)) throw std::invalid_argument("regime_trajectories: t_max must be > 0");
    if (samples < 1) throw std::invalid_argument("regime_trajectories: samples must be >= 1");
    if (mark_zeros < 0) throw std::invalid_argument("regime_trajectories: mark_zeros must be >= 0");

    const auto map_value = channel == Channel::Coherence ? jcmodel::Ec : jcmodel::Ep;
    std::vector<TrajectoryPoint> out;
    for (std::size_t s = 0; s < params_list.size(); ++s) {
        const ModelParams& p = params_list[s];
        jcmodel::validate(p);
        for (int i = 0; i <= samples; ++i) {
            const double t = t_max * i / samples;
            out.push_back({static_cast<int>(s), p.g, p.kappa, t, map_value(p, t), 0});
        }
        if (mark_zeros > 0) {
            const ZeroTable zeros = markovian_steps(p, mark_zeros);
            for (std::size_t m = 0; m < zeros.zeros.size(); ++m) {
                const double t = zeros.zeros[m];
                if (t > t_max) break;
                out.push_back({static_cast<int>(s), p.g, p.kappa, t, map_value(p, t),
                               static_cast<int>(m) + 1});
            }
        }
    }
    return out;
}

double integrodiff_residual(const ModelParams& params, double t_max, int samples) {
    if (!(t_max > 0.0)) throw std::invalid_argument("integrodiff_residual: t_max must be > 0");
    if (samples < 16) throw std::invalid_argument("integrodiff_residual: need samples >= 16");
    jcmodel::validate(params);

    const double dt = t_max / samples;
    std::vector<double> c(samples + 1);
    std::vector<double> kernel(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        const double t = i * dt;
        c[i] = jcmodel::Ec(params, t);
        kernel[i] = std::exp(-params.kappa * t / 2.0);
    }
    const std::vector<double> conv = numlin::convolve_trapezoid(
        std::span<const double>(kernel), std::span<const double>(c), dt);

    const double g2 = params.g * params.g;
    double worst = 0.0;
    for (int i = 1; i < samples; ++i) {
        const double cdot = (c[i + 1] - c[i - 1]) / (2.0 * dt);
        worst = std::max(worst, std::abs(cdot + g2 * conv[i]));
    }
    return worst;
}

} // namespace ttmjc::analysis
