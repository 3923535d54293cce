#include "ttmjc/ttm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ttmjc::ttm {

namespace {

constexpr double kProjectorTol = 1e-12;

template <typename Series>
void validate_series(const Series& series, const std::vector<CMatrix>& items, const char* what) {
    if (!(series.dt > 0.0) || !std::isfinite(series.dt))
        throw std::invalid_argument(std::string(what) + ": dt must be positive and finite");
    if (items.empty()) throw std::invalid_argument(std::string(what) + ": empty series");
    for (const CMatrix& m : items) {
        if (m.dim() != series.dim)
            throw std::invalid_argument(std::string(what) + ": dimension mismatch within series");
        if (!m.finite())
            throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

} // namespace

void validate(const MapSeries& series) { validate_series(series, series.maps, "MapSeries"); }

void validate(const TensorSeries& series) {
    validate_series(series, series.tensors, "TensorSeries");
}

ProjectorPair::ProjectorPair(CMatrix p, CMatrix q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.dim() != q_.dim()) throw std::invalid_argument("ProjectorPair: dimension mismatch");
    const CMatrix ident = CMatrix::identity(p_.dim());
    if (numlin::frobenius(p_ * p_ - p_) > kProjectorTol ||
        numlin::frobenius(p_ + q_ - ident) > kProjectorTol ||
        numlin::frobenius(p_ * q_) > kProjectorTol || numlin::frobenius(q_ * p_) > kProjectorTol)
        throw std::invalid_argument("ProjectorPair: P, Q are not complementary projectors");
}

ProjectorPair ProjectorPair::leading(int dim, int rank) {
    if (dim < 1 || rank < 1 || rank >= dim)
        throw std::invalid_argument("ProjectorPair::leading: need 1 <= rank < dim");
    CMatrix p(dim);
    CMatrix q(dim);
    for (int i = 0; i < dim; ++i) (i < rank ? p : q)(i, i) = 1.0;
    return ProjectorPair(std::move(p), std::move(q));
}

TensorSeries extract(const MapSeries& series) {
    validate(series);
    const std::size_t n = series.maps.size();
    TensorSeries out{series.dt, series.dim, {}};
    out.tensors.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        CMatrix t = series.maps[k - 1];
        for (std::size_t j = 1; j < k; ++j) t -= out.tensors[j - 1] * series.maps[k - j - 1];
        out.tensors.push_back(std::move(t));
    }
    return out;
}

std::vector<std::vector<Complex>> propagate(const TensorSeries& tensors,
                                            const std::vector<Complex>& initial, int steps,
                                            std::optional<int> memory_cutoff) {
    validate(tensors);
    if (steps < 1) throw std::invalid_argument("propagate: steps must be >= 1");
    if (initial.size() != static_cast<std::size_t>(tensors.dim))
        throw std::invalid_argument("propagate: initial state length != dim");
    if (memory_cutoff && *memory_cutoff < 1)
        throw std::invalid_argument("propagate: memory cutoff must be >= 1");

    const int available = static_cast<int>(tensors.tensors.size());
    const int cutoff = memory_cutoff ? std::min(*memory_cutoff, available) : available;

    std::vector<std::vector<Complex>> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(initial);
    for (int k = 1; k <= steps; ++k) {
        std::vector<Complex> state(initial.size(), Complex(0.0, 0.0));
        const int jmax = std::min(k, cutoff);
        for (int j = 1; j <= jmax; ++j) {
            const std::vector<Complex> term = tensors.tensors[j - 1] * trajectory[k - j];
            for (std::size_t i = 0; i < state.size(); ++i) state[i] += term[i];
        }
        trajectory.push_back(std::move(state));
    }
    return trajectory;
}

CMatrix transfer_tensor_projected(const CMatrix& u, const ProjectorPair& pq, int k) {
    if (k < 1) throw std::invalid_argument("transfer_tensor_projected: k must be >= 1");
    if (u.dim() != pq.dim())
        throw std::invalid_argument("transfer_tensor_projected: dimension mismatch");
    if (k == 1) return pq.P() * u * pq.P();
    const CMatrix quq = pq.Q() * u * pq.Q();
    return pq.P() * u * pq.Q() * numlin::pow(quq, k - 2) * pq.Q() * u * pq.P();
}

CMatrix nz_kernel(const CMatrix& l, const ProjectorPair& pq, double t) {
    if (l.dim() != pq.dim()) throw std::invalid_argument("nz_kernel: dimension mismatch");
    const CMatrix qlq = pq.Q() * l * pq.Q();
    return pq.P() * l * pq.Q() * numlin::expm(qlq, t) * pq.Q() * l * pq.P();
}

double continuum_limit_error(const CMatrix& l, const ProjectorPair& pq, double t, int k) {
    if (!(t > 0.0)) throw std::invalid_argument("continuum_limit_error: t must be > 0");
    if (k < 2) throw std::invalid_argument("continuum_limit_error: k must be >= 2");
    const double dt = t / k;
    const CMatrix u = numlin::expm(l, dt);
    const CMatrix tk = transfer_tensor_projected(u, pq, k);
    const double scale = 1.0 / (dt * dt);
    return numlin::frobenius(scale * tk - nz_kernel(l, pq, t));
}

std::vector<double> markovian_defect(const MapSeries& series) {
    if (series.maps.size() < 2)
        throw std::invalid_argument("markovian_defect: need at least two maps");
    const TensorSeries tensors = extract(series);
    std::vector<double> out;
    out.reserve(tensors.tensors.size() - 1);
    for (std::size_t k = 1; k < tensors.tensors.size(); ++k)
        out.push_back(numlin::frobenius(tensors.tensors[k]));
    return out;
}

} // namespace ttmjc::ttm
