// ttm.hpp — Model-agnostic transfer tensor machinery on a homogeneous time
// lattice t_k = k*dt: extraction from dynamical-map series, convolutional
// propagation with memory truncation, the projected compact form of T_k, and
// the Nakajima-Zwanzig memory kernel from projector algebra.
//
// Conventions (dim-agnostic, E_0 = identity implicit):
//   extraction   T_1 = E_1,  T_k = E_k - sum_{j=1}^{k-1} T_j E_{k-j}
//   propagation  rho(t_k) = sum_{j=1}^{min(k,cutoff)} T_j rho(t_{k-j})
//   compact form T_k = P U Q (Q U Q)^{k-2} Q U P  (k >= 2),  T_1 = P U P
//   kernel       K(t) = P L Q exp(Q L Q t) Q L P
//
// Extraction is sequential in k; everything else is a pure function and safe
// to run concurrently on independent inputs.

#pragma once

#include <optional>
#include <vector>

#include "ttmjc/numlin.hpp"

namespace ttmjc::ttm {

using numlin::CMatrix;
using numlin::Complex;

/// Dynamical maps E_1..E_N sampled on the lattice t_k = k*dt.
struct MapSeries {
    double dt = 0.0;
    int dim = 0;
    std::vector<CMatrix> maps;
};

/// Transfer tensors T_1..T_N on the same lattice.
struct TensorSeries {
    double dt = 0.0;
    int dim = 0;
    std::vector<CMatrix> tensors;
};

/// Throws std::invalid_argument unless dt > 0, every matrix has the series
/// dimension, and all entries are finite.
void validate(const MapSeries& series);
void validate(const TensorSeries& series);

/// Complementary projector pair: P^2 = P, Q = 1 - P, PQ = QP = 0, each
/// verified to 1e-12 at construction.
class ProjectorPair {
public:
    ProjectorPair(CMatrix p, CMatrix q);

    /// P keeping the first `rank` coordinates of a dim-dimensional space.
    static ProjectorPair leading(int dim, int rank);

    const CMatrix& P() const { return p_; }
    const CMatrix& Q() const { return q_; }
    int dim() const { return p_.dim(); }

private:
    CMatrix p_;
    CMatrix q_;
};

/// Deconvolves a map series into transfer tensors. Exact inverse of the
/// reconstruction E_k = sum_{j=1}^{k} T_j E_{k-j}.
TensorSeries extract(const MapSeries& series);

/// Unlimited memory: every available tensor participates.
inline constexpr std::optional<int> kUnlimitedMemory = std::nullopt;

/// Convolutional propagation over `steps` steps. Returns the trajectory
/// including the initial state (length steps + 1). A cutoff of M keeps
/// T_1..T_M and drops the rest; tensors beyond the series length are treated
/// as zero either way. Throws std::invalid_argument for cutoff < 1 or a
/// state/dimension mismatch.
std::vector<std::vector<Complex>> propagate(const TensorSeries& tensors,
                                            const std::vector<Complex>& initial, int steps,
                                            std::optional<int> memory_cutoff = kUnlimitedMemory);

/// T_k from the one-step propagator U of the enlarged space:
/// P U Q (Q U Q)^{k-2} Q U P for k >= 2, and P U P for k = 1.
CMatrix transfer_tensor_projected(const CMatrix& u, const ProjectorPair& pq, int k);

/// Nakajima-Zwanzig memory kernel K(t) = P L Q exp(Q L Q t) Q L P for the
/// generator L.
CMatrix nz_kernel(const CMatrix& l, const ProjectorPair& pq, double t);

/// || T_k(t/k) * (k/t)^2 - K(t) ||_F with T_k built from U = exp(L t/k).
/// Tends to zero as k grows; quantifies how far a finite-step transfer
/// tensor sits from the continuous-time kernel.
double continuum_limit_error(const CMatrix& l, const ProjectorPair& pq, double t, int k);

/// Frobenius norms ||T_k|| for k = 2..N; all zero iff the series is a
/// semigroup on its lattice. Needs N >= 2.
std::vector<double> markovian_defect(const MapSeries& series);

} // namespace ttmjc::ttm
