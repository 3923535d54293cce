// analysis.hpp — Figure-level results assembled from the closed forms and
// the generic transfer-tensor machinery: regime trajectories, kernel vs
// transfer-tensor convergence curves, the T2c sweep over (gt, kappa/4g), and
// Markovian-timestep tables. Axes follow the dimensionless presentation
// gt and r = kappa/4g. Output tables are plain in-memory values;
// serialization lives with the CLI.

#pragma once

#include <vector>

#include "ttmjc/jcmodel.hpp"

namespace ttmjc::analysis {

using jcmodel::ModelParams;

/// Lattice spacings at which every coherence transfer tensor beyond T_1
/// vanishes: t_m = m pi / (g sqrt(1 - r^2)), underdamped regime only.
struct ZeroTable {
    ModelParams params;
    std::vector<double> zeros; // strictly increasing; empty unless underdamped
};

/// First n Markovian lattice spacings. Returns an empty table (no error) in
/// the critically damped and overdamped regimes, where T2c has no zeros.
ZeroTable markovian_steps(const ModelParams& params, int n);

/// Signed T2c sampled over a rectangular grid of gt and r = kappa/4g.
struct SweepGrid {
    std::vector<double> gt_values;
    std::vector<double> ratio_values;
    std::vector<std::vector<double>> values; // values[ir][it], row per ratio
};

/// T2c(gt, r) on nx x ny points spanning [0, gt_max] x [0, ratio_max],
/// evaluated at g = 1 so gt is the bare time. Deterministic regardless of
/// evaluation order.
SweepGrid heatmap_T2c(double gt_max, double ratio_max, int nx, int ny);

enum class Channel { Coherence, Population };

const char* to_string(Channel channel);

/// One point of the kernel/transfer-tensor comparison:
/// diff = || T_k(t/k) (k/t)^2 - K(t) ||.
struct KernelDiffPoint {
    double t;
    int k;
    double diff;
};

/// Convergence data for the requested channel: for every k in k_list and
/// every t on the sample grid over (0, t_max], the continuum-limit error.
/// Rows ordered by (k, t). Entries of k_list must be >= 2.
std::vector<KernelDiffPoint> kernel_difference_curve(const ModelParams& params, double t_max,
                                                     int samples, const std::vector<int>& k_list,
                                                     Channel channel);

/// A sampled trajectory point. zero_order is 0 for regular samples and m for
/// the annotated m-th Markovian step of that parameter set.
struct TrajectoryPoint {
    int series;
    double g;
    double kappa;
    double t;
    double value;
    int zero_order;
};

/// Ec (or Ep) trajectories for each parameter set, samples+1 points over
/// [0, t_max]. With mark_zeros > 0, underdamped sets additionally get rows
/// for their first mark_zeros Markovian steps within [0, t_max].
std::vector<TrajectoryPoint> regime_trajectories(const std::vector<ModelParams>& params_list,
                                                 double t_max, int samples, Channel channel,
                                                 int mark_zeros);

/// Max-norm residual of the coherence integrodifferential equation
/// dc/dt = -g^2 int_0^t e^{-kappa(t-s)/2} c(s) ds with c(t) = Ec(t), using
/// centered differences and trapezoid quadrature on a samples-point lattice
/// over [0, t_max]. O(dt^2) under grid refinement. Needs samples >= 16.
double integrodiff_residual(const ModelParams& params, double t_max, int samples);

} // namespace ttmjc::analysis
