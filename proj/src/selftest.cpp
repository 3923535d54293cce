#include "ttmjc/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ttmjc/analysis.hpp"
#include "ttmjc/csv_io.hpp"
#include "ttmjc/jcmodel.hpp"
#include "ttmjc/numlin.hpp"
#include "ttmjc/ttm.hpp"

namespace ttmjc::selftest {

namespace {

using numlin::CMatrix;
using numlin::Complex;
using jcmodel::ModelParams;

CMatrix random_matrix(std::mt19937& rng, int dim, double target_norm) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    const double nrm = numlin::frobenius(m);
    if (nrm > 0.0) m *= Complex(target_norm / nrm, 0.0);
    return m;
}

const std::vector<ModelParams> kRegimeSweep = {{1.0, 0.8}, {1.0, 4.0}, {1.0, 8.0}};

bool expm_semigroup() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> tdist(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix l = random_matrix(rng, 4, 5.0);
        const double t1 = tdist(rng);
        const double t2 = tdist(rng);
        const CMatrix whole = numlin::expm(l, t1 + t2);
        const CMatrix split = numlin::expm(l, t1) * numlin::expm(l, t2);
        const double rel =
            numlin::frobenius(whole - split) / std::max(1.0, numlin::frobenius(whole));
        if (rel > 1e-10) return false;
    }
    return true;
}

bool expm_derivative() {
    std::mt19937 rng(2025);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix l = random_matrix(rng, 4, 2.0);
        const double t = tdist(rng) + h;
        const CMatrix diff =
            (1.0 / (2.0 * h)) * (numlin::expm(l, t + h) - numlin::expm(l, t - h));
        if (numlin::frobenius(diff - l * numlin::expm(l, t)) > 1e-6) return false;
    }
    return true;
}

bool frobenius_norm_axioms() {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> sdist(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix a = random_matrix(rng, 3, 2.0);
        const CMatrix b = random_matrix(rng, 3, 1.5);
        if (numlin::frobenius(a + b) > numlin::frobenius(a) + numlin::frobenius(b) + 1e-12)
            return false;
        const Complex s(sdist(rng), sdist(rng));
        if (std::abs(numlin::frobenius(s * a) - std::abs(s) * numlin::frobenius(a)) > 1e-12)
            return false;
    }
    return true;
}

bool eigenrate_invariants() {
    for (double g : {0.5, 1.0, 2.0})
        for (double kappa : {0.0, 0.4, 2.0, 4.0 * g, 8.0, 20.0}) {
            const ModelParams p{g, kappa};
            const auto rates = jcmodel::eigenrates(p);
            const double scale = kappa + g;
            if (std::abs(rates.kappa_plus + rates.kappa_minus + kappa / 2.0) > 1e-12 * scale)
                return false;
            if (std::abs(rates.kappa_plus * rates.kappa_minus - g * g) > 1e-12 * scale * scale)
                return false;
            for (Complex lam : {rates.kappa_plus, rates.kappa_minus})
                if (std::abs(lam * lam + kappa * lam / 2.0 + g * g) > 1e-12 * scale * scale)
                    return false;
        }
    return true;
}

bool map_consistency(double perturb_ec) {
    for (const ModelParams& p : kRegimeSweep) {
        const CMatrix lb = jcmodel::liouvillian_B(p);
        for (int i = 0; i <= 100; ++i) {
            const double t = 10.0 * i / 100.0 / p.g;
            const double via_expm = numlin::expm(lb, t)(0, 0).real();
            if (std::abs(jcmodel::Ec(p, t) + perturb_ec - via_expm) > 1e-10) return false;
        }
    }
    return true;
}

bool population_bridge() {
    for (const ModelParams& p : kRegimeSweep) {
        const CMatrix la = jcmodel::liouvillian_A(p);
        for (int i = 0; i <= 100; ++i) {
            const double t = 10.0 * i / 100.0 / p.g;
            const double bridge =
                jcmodel::Ec(p, t) * jcmodel::Ec(p, t) + 0.5 * jcmodel::T2c(p, t);
            if (std::abs(bridge - numlin::expm(la, t)(0, 0).real()) > 1e-10) return false;
        }
    }
    return true;
}

bool kernel_consistency() {
    for (const ModelParams& p : kRegimeSweep)
        for (int i = 0; i <= 100; ++i) {
            const double t = 10.0 * i / 100.0 / p.g;
            const double main_text =
                jcmodel::Kc(p, t) * (jcmodel::Ec(p, t) + 2.0 * jcmodel::f_ratio(p, t));
            if (std::abs(jcmodel::Kp(p, t) - main_text) > 1e-10) return false;
        }
    return true;
}

bool kernel_monotone_decay() {
    for (const ModelParams& p : kRegimeSweep) {
        double prev = std::abs(jcmodel::Kc(p, 0.0));
        for (int i = 1; i <= 200; ++i) {
            const double cur = std::abs(jcmodel::Kc(p, 10.0 * i / 200.0));
            if (cur > prev + 1e-15) return false;
            prev = cur;
        }
    }
    return true;
}

bool integrodiff_order() {
    const ModelParams p{1.0, 0.8};
    double prev = analysis::integrodiff_residual(p, 10.0, 256);
    for (int n : {512, 1024}) {
        const double cur = analysis::integrodiff_residual(p, 10.0, n);
        const double ratio = prev / cur;
        if (ratio < 2.8 || ratio > 5.2) return false;
        prev = cur;
    }
    return true;
}

bool tensor_scaling_vs_extraction() {
    const ModelParams p{1.0, 0.8};
    const double dt = 0.5;
    ttm::MapSeries maps{dt, 1, {}};
    for (int k = 1; k <= 50; ++k) {
        CMatrix m(1);
        m(0, 0) = jcmodel::Ec(p, k * dt);
        maps.maps.push_back(m);
    }
    const ttm::TensorSeries tensors = ttm::extract(maps);
    for (int k = 2; k <= 50; ++k) {
        const double closed = jcmodel::Tkc(p, dt, k);
        if (closed !=
            jcmodel::T2c(p, dt) * std::pow(jcmodel::f_ratio(p, dt), k - 2))
            return false;
        if (std::abs(tensors.tensors[k - 1](0, 0).real() - closed) > 1e-10) return false;
    }
    return true;
}

bool zero_sharing() {
    const ModelParams p{1.0, 0.8};
    const analysis::ZeroTable table = analysis::markovian_steps(p, 5);
    if (table.zeros.size() != 5) return false;
    for (double t : table.zeros)
        if (std::abs(jcmodel::T2c(p, t)) > 1e-12 || std::abs(jcmodel::T2p(p, t)) > 1e-12)
            return false;
    return true;
}

bool full_model_physicality() {
    const ModelParams p{1.0, 0.8};
    const CMatrix l9 = jcmodel::lindbladian_full(p);
    std::vector<Complex> excited(9, Complex(0.0, 0.0));
    excited[0] = 1.0; // |e><e|
    for (int i = 0; i <= 80; ++i) {
        const double t = 20.0 * i / 80.0 / p.g;
        const std::vector<Complex> y = numlin::expm(l9, t) * excited;
        const Complex tr = y[0] + y[4] + y[8];
        if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) return false;
        const jcmodel::AtomState state{y[0].real(), (y[4] + y[8]).real(), y[2]};
        if (!jcmodel::physical(state)) return false;
    }
    return true;
}

bool extraction_round_trip() {
    std::mt19937 rng(2027);
    ttm::MapSeries maps{0.3, 3, {}};
    for (int k = 0; k < 12; ++k) maps.maps.push_back(random_matrix(rng, 3, 1.0));
    const ttm::TensorSeries tensors = ttm::extract(maps);
    std::vector<CMatrix> maps_ext = {CMatrix::identity(3)}; // E_0
    for (const CMatrix& m : maps.maps) maps_ext.push_back(m);
    for (std::size_t k = 1; k < maps_ext.size(); ++k) {
        CMatrix rebuilt(3);
        for (std::size_t j = 1; j <= k; ++j)
            rebuilt += tensors.tensors[j - 1] * maps_ext[k - j];
        if (numlin::frobenius(rebuilt - maps_ext[k]) > 1e-11) return false;
    }
    return true;
}

bool extraction_matches_compact_form() {
    std::mt19937 rng(2028);
    for (int dim : {2, 4, 9}) {
        const CMatrix u = random_matrix(rng, dim, 1.0);
        const ttm::ProjectorPair pq = ttm::ProjectorPair::leading(dim, 1);
        ttm::MapSeries maps{1.0, dim, {}};
        for (int k = 1; k <= 20; ++k) maps.maps.push_back(pq.P() * numlin::pow(u, k) * pq.P());
        const ttm::TensorSeries tensors = ttm::extract(maps);
        for (int k = 1; k <= 20; ++k) {
            const CMatrix compact = ttm::transfer_tensor_projected(u, pq, k);
            if (numlin::frobenius(tensors.tensors[k - 1] - compact) > 1e-9) return false;
        }
    }
    return true;
}

bool continuum_limit_decreasing() {
    const ModelParams p{1.0, 0.8};
    // The signed coherence difference crosses zero near k = 6 at t = 1, so
    // the coherence doublings start past the crossing.
    const CMatrix lb = jcmodel::liouvillian_B(p);
    const CMatrix la = jcmodel::liouvillian_A(p);
    const ttm::ProjectorPair pq_b = ttm::ProjectorPair::leading(2, 1);
    const ttm::ProjectorPair pq_a = ttm::ProjectorPair::leading(4, 1);
    double prev = ttm::continuum_limit_error(lb, pq_b, 1.0, 16);
    for (int k = 32; k <= 1024; k *= 2) {
        const double cur = ttm::continuum_limit_error(lb, pq_b, 1.0, k);
        if (!(cur < prev)) return false;
        prev = cur;
    }
    prev = ttm::continuum_limit_error(la, pq_a, 1.0, 2);
    for (int k = 4; k <= 1024; k *= 2) {
        const double cur = ttm::continuum_limit_error(la, pq_a, 1.0, k);
        if (!(cur < prev)) return false;
        prev = cur;
    }
    return true;
}

bool propagation_exactness() {
    const ModelParams p{1.0, 0.8};
    const double dt = 0.1;
    const int n = 1000;
    ttm::MapSeries maps{dt, 1, {}};
    for (int k = 1; k <= n; ++k) {
        CMatrix m(1);
        m(0, 0) = jcmodel::Ec(p, k * dt);
        maps.maps.push_back(m);
    }
    const auto trajectory = ttm::propagate(ttm::extract(maps), {Complex(1.0, 0.0)}, n);
    for (int k = 1; k <= n; ++k)
        if (std::abs(trajectory[k][0] - maps.maps[k - 1](0, 0)) > 1e-11) return false;
    return true;
}

bool markovian_lattice_semigroup() {
    const ModelParams p{1.0, 0.8};
    const double dt = analysis::markovian_steps(p, 1).zeros.at(0);
    ttm::MapSeries maps{dt, 1, {}};
    for (int k = 1; k <= 40; ++k) {
        CMatrix m(1);
        m(0, 0) = jcmodel::Ec(p, k * dt);
        maps.maps.push_back(m);
    }
    const std::vector<double> defects = ttm::markovian_defect(maps);
    const double eps = *std::max_element(defects.begin(), defects.end());
    if (eps > 1e-10) return false;
    // Empirical constant: the observed C sits near 1; 10 leaves margin.
    const double e1 = maps.maps[0](0, 0).real();
    double power = 1.0;
    for (int k = 1; k <= 40; ++k) {
        power *= e1;
        const double dev = std::abs(maps.maps[k - 1](0, 0).real() - power);
        if (dev > std::max(10.0 * k * eps, 1e-13 * k)) return false;
    }
    return true;
}

bool analysis_zero_table() {
    const ModelParams under{1.0, 0.8};
    const analysis::ZeroTable table = analysis::markovian_steps(under, 3);
    if (table.zeros.size() != 3) return false;
    for (std::size_t m = 1; m < table.zeros.size(); ++m)
        if (!(table.zeros[m] > table.zeros[m - 1])) return false;
    if (!analysis::markovian_steps({1.0, 8.0}, 3).zeros.empty()) return false;
    if (!analysis::markovian_steps({1.0, 4.0}, 3).zeros.empty()) return false;
    return true;
}

bool heatmap_deterministic() {
    const analysis::SweepGrid a = analysis::heatmap_T2c(12.0, 1.5, 25, 13);
    const analysis::SweepGrid b = analysis::heatmap_T2c(12.0, 1.5, 25, 13);
    for (std::size_t j = 0; j < a.values.size(); ++j)
        for (std::size_t i = 0; i < a.values[j].size(); ++i) {
            if (a.values[j][i] != b.values[j][i]) return false;
            if (a.values[j][i] > 0.0) return false;
        }
    return true;
}

bool kernel_difference_halving() {
    const ModelParams p{1.0, 0.8};
    const std::vector<int> ks = {2, 4, 8, 16, 32, 64};
    // Population channel: monotone in k at every sampled t. The coherence
    // channel carries sign crossings at larger t, so it is checked on the
    // short-time window where the doubling law holds.
    const auto pop =
        analysis::kernel_difference_curve(p, 2.0, 8, ks, analysis::Channel::Population);
    const auto coh =
        analysis::kernel_difference_curve(p, 0.5, 2, ks, analysis::Channel::Coherence);
    for (const auto* rows : {&pop, &coh}) {
        // rows are ordered by (k, t); successive k blocks share the t grid
        const std::size_t per_k = rows->size() / ks.size();
        for (std::size_t b = 0; b + 1 < ks.size(); ++b)
            for (std::size_t i = 0; i < per_k; ++i)
                if (!((*rows)[(b + 1) * per_k + i].diff < (*rows)[b * per_k + i].diff))
                    return false;
    }
    return true;
}

bool series_format_round_trip() {
    const ModelParams p{1.0, 0.8};
    io::Series series{0.25, 2, {}};
    for (int k = 1; k <= 6; ++k) series.items.push_back(numlin::expm(jcmodel::liouvillian_B(p), k * 0.25));
    const std::string text = io::write_series(series);
    std::istringstream in(text);
    const io::Series back = io::read_series(in);
    return io::write_series(back) == text;
}

} // namespace

int run(std::ostream& out, const Options& options) {
    int failures = 0;
    const auto check = [&](const char* name, const std::function<bool()>& suite) {
        bool ok = false;
        std::string detail;
        try {
            ok = suite();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "[PASS] " : "[FAIL] ") << name << detail << "\n";
        if (!ok) ++failures;
    };

    check("numlin: expm semigroup property", expm_semigroup);
    check("numlin: expm time derivative", expm_derivative);
    check("numlin: frobenius norm axioms", frobenius_norm_axioms);
    check("jcmodel: eigenrate sum/product/characteristic polynomial", eigenrate_invariants);
    check("jcmodel: Ec equals expm(L_B) component",
          [&] { return map_consistency(options.perturb_ec); });
    check("jcmodel: population-coherence bridge Ep = Ec^2 + T2c/2", population_bridge);
    check("jcmodel: Kp equals Kc(Ec + 2f)", kernel_consistency);
    check("jcmodel: |Kc| decays monotonically", kernel_monotone_decay);
    check("jcmodel: integrodifferential residual is O(dt^2)", integrodiff_order);
    check("jcmodel: Tkc scaling matches generic extraction", tensor_scaling_vs_extraction);
    check("jcmodel: T2p vanishes with T2c at Markovian steps", zero_sharing);
    check("jcmodel: full-model trace and state physicality", full_model_physicality);
    check("ttm: extraction/reconstruction round trip", extraction_round_trip);
    check("ttm: recursion matches projected compact form", extraction_matches_compact_form);
    check("ttm: continuum-limit error decreases with k", continuum_limit_decreasing);
    check("ttm: full-memory propagation reproduces the maps", propagation_exactness);
    check("ttm: Markovian lattice behaves as a semigroup", markovian_lattice_semigroup);
    check("analysis: Markovian step table", analysis_zero_table);
    check("analysis: heatmap deterministic and non-positive", heatmap_deterministic);
    check("analysis: kernel difference halves with k", kernel_difference_halving);
    check("io: series format round trip", series_format_round_trip);

    out << (failures == 0 ? "selftest: all invariants passed\n"
                          : "selftest: " + std::to_string(failures) + " invariant(s) failed\n");
    return failures;
}

} // namespace ttmjc::selftest
