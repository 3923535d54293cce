#include "ttmjc/jcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ttmjc::jcmodel {

namespace {

// Confluent-branch threshold on |k+ - k-| relative to g. Below it every
// (k+ - k-)-denominated formula switches to its analytic limit.
constexpr double kConfluentEps = 1e-9;

// Classification band on |r - 1| for the critically damped regime, also the
// degeneracy band for the closed-form eigensystems.
constexpr double kRegimeEps = 1e-9;

// Imaginary residue allowed before a complex channel value is declared real.
constexpr double kImagTol = 1e-12;

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > kImagTol * std::max(1.0, std::abs(z.real())))
        throw NumericalConsistencyError(std::string(what) +
                                        ": imaginary residue above tolerance");
    return z.real();
}

void require_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument(std::string(what) + ": t must be finite and >= 0");
}

bool confluent(const ModelParams& params, const EigenratesB& rates) {
    return std::abs(rates.kappa_plus - rates.kappa_minus) < kConfluentEps * params.g;
}

CMatrix rank_one_projector(const std::vector<Complex>& right, const std::vector<Complex>& left) {
    const int n = static_cast<int>(right.size());
    Complex dot(0.0, 0.0);
    for (int i = 0; i < n; ++i) dot += left[i] * right[i];
    CMatrix p(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = right[i] * left[j] / dot;
    return p;
}

} // namespace

void validate(const ModelParams& params) {
    if (!std::isfinite(params.g) || !std::isfinite(params.kappa))
        throw std::invalid_argument("ModelParams: g and kappa must be finite");
    if (!(params.g > 0.0)) throw std::invalid_argument("ModelParams: g must be > 0");
    if (!(params.kappa >= 0.0)) throw std::invalid_argument("ModelParams: kappa must be >= 0");
}

const char* to_string(Damping damping) {
    switch (damping) {
    case Damping::Underdamped: return "Underdamped";
    case Damping::CriticallyDamped: return "CriticallyDamped";
    case Damping::Overdamped: return "Overdamped";
    }
    return "?";
}

Regime regime(const ModelParams& params) {
    validate(params);
    const double r = params.ratio();
    if (std::abs(r - 1.0) <= kRegimeEps) return {Damping::CriticallyDamped, r};
    return {r < 1.0 ? Damping::Underdamped : Damping::Overdamped, r};
}

EigenratesB eigenrates(const ModelParams& params) {
    validate(params);
    const double q = params.kappa / 4.0;
    const Complex disc = std::sqrt(Complex(q * q - params.g * params.g, 0.0));
    return {Complex(-q, 0.0) + disc, Complex(-q, 0.0) - disc};
}

PopulationVector initial_population_vector(const AtomState& state) {
    return {state.p_up - state.p_down, 0.0, -state.p_down, 1.0};
}

bool physical(const AtomState& state, double trace_tol, double coherence_tol) {
    if (!std::isfinite(state.p_up) || !std::isfinite(state.p_down) ||
        !std::isfinite(state.c.real()) || !std::isfinite(state.c.imag()))
        return false;
    if (std::abs(state.p_up + state.p_down - 1.0) > trace_tol) return false;
    if (state.p_up < -trace_tol || state.p_up > 1.0 + trace_tol) return false;
    if (state.p_down < -trace_tol || state.p_down > 1.0 + trace_tol) return false;
    return std::norm(state.c) <= state.p_up * state.p_down + coherence_tol;
}

CMatrix liouvillian_B(const ModelParams& params) {
    validate(params);
    const Complex mig(0.0, -params.g);
    CMatrix l(2);
    l(0, 1) = mig;
    l(1, 0) = mig;
    l(1, 1) = -params.kappa / 2.0;
    return l;
}

CMatrix liouvillian_A(const ModelParams& params) {
    validate(params);
    const double g = params.g;
    const double k = params.kappa;
    CMatrix l(4);
    l(0, 1) = -4.0 * g;
    l(1, 0) = 3.0 * g / 4.0;
    l(1, 1) = -k / 2.0;
    l(1, 2) = -g / 2.0;
    l(1, 3) = g / 4.0;
    l(2, 0) = k / 2.0;
    l(2, 1) = 2.0 * g;
    l(2, 2) = -k;
    l(2, 3) = -k / 2.0;
    return l;
}

CMatrix lindbladian_full(const ModelParams& params) {
    validate(params);
    CMatrix h(3);
    h(0, 1) = params.g;
    h(1, 0) = params.g;
    CMatrix a(3);
    a(2, 1) = 1.0; // a = |g><i|
    const CMatrix n = numlin::dagger(a) * a;
    const CMatrix ident = CMatrix::identity(3);
    const Complex img(0.0, 1.0);

    CMatrix l = (-img) * (numlin::kron(h, ident) - numlin::kron(ident, numlin::transpose(h)));
    l += params.kappa *
         (numlin::kron(a, numlin::conjugate(a)) - 0.5 * numlin::kron(n, ident) -
          0.5 * numlin::kron(ident, numlin::transpose(n)));
    return l;
}

double Ec(const ModelParams& params, double t) {
    require_time(t, "Ec");
    const EigenratesB rates = eigenrates(params);
    if (confluent(params, rates)) {
        const double q = params.kappa / 4.0;
        return std::exp(-q * t) * (1.0 + q * t);
    }
    const Complex kp = rates.kappa_plus;
    const Complex km = rates.kappa_minus;
    return real_checked((kp * std::exp(km * t) - km * std::exp(kp * t)) / (kp - km), "Ec");
}

double Kc(const ModelParams& params, double t) {
    require_time(t, "Kc");
    validate(params);
    return -params.g * params.g * std::exp(-params.kappa * t / 2.0);
}

double T2c(const ModelParams& params, double t) {
    require_time(t, "T2c");
    const EigenratesB rates = eigenrates(params);
    if (confluent(params, rates)) {
        const double gt = params.g * t;
        return -gt * gt * std::exp(-params.kappa * t / 2.0);
    }
    const Complex kp = rates.kappa_plus;
    const Complex km = rates.kappa_minus;
    const Complex s = params.g * (std::exp(km * t) - std::exp(kp * t)) / (kp - km);
    return real_checked(-s * s, "T2c");
}

double f_ratio(const ModelParams& params, double t) {
    require_time(t, "f_ratio");
    const EigenratesB rates = eigenrates(params);
    if (confluent(params, rates)) {
        const double q = params.kappa / 4.0;
        return std::exp(-q * t) * (1.0 - q * t);
    }
    const Complex kp = rates.kappa_plus;
    const Complex km = rates.kappa_minus;
    return real_checked((kp * std::exp(kp * t) - km * std::exp(km * t)) / (kp - km), "f_ratio");
}

double Tkc(const ModelParams& params, double t, int k) {
    if (k < 2) throw std::invalid_argument("Tkc: k must be >= 2");
    return T2c(params, t) * std::pow(f_ratio(params, t), k - 2);
}

double Ep(const ModelParams& params, double t) {
    const double ec = Ec(params, t);
    return ec * ec + 0.5 * T2c(params, t);
}

double Kp(const ModelParams& params, double t) {
    const EigenratesB rates = eigenrates(params);
    if (confluent(params, rates)) {
        const double q = params.kappa / 4.0;
        return Kc(params, t) * std::exp(-q * t) * (3.0 - q * t);
    }
    const Complex kp = rates.kappa_plus;
    const Complex km = rates.kappa_minus;
    const Complex factor =
        ((kp - 2.0 * km) * std::exp(km * t) - (km - 2.0 * kp) * std::exp(kp * t)) / (kp - km);
    return Kc(params, t) * real_checked(factor, "Kp");
}

double T2p(const ModelParams& params, double t) {
    const double t2 = T2c(params, t);
    const double f = f_ratio(params, t);
    const double ec = Ec(params, t);
    const double ep = ec * ec + 0.5 * t2;
    return 1.5 * t2 * ep + (t2 * f) * ec + 0.5 * (t2 * f * f);
}

std::vector<EigenPair> eigensystem_A(const ModelParams& params) {
    validate(params);
    if (params.kappa < kRegimeEps * params.g || std::abs(params.ratio() - 1.0) <= kRegimeEps)
        throw DegenerateSpectrumError("eigensystem_A: spectrum degenerates at kappa = 0 or r = 1");

    const double g = params.g;
    const double k = params.kappa;
    const EigenratesB rates = eigenrates(params);
    const Complex kp = rates.kappa_plus;
    const Complex km = rates.kappa_minus;

    std::vector<EigenPair> out;
    out.reserve(4);
    out.push_back({Complex(0.0, 0.0),
                   rank_one_projector({1.0, 0.0, 1.0, -1.0}, {0.0, 0.0, 0.0, 1.0})});
    out.push_back({Complex(-k / 2.0, 0.0),
                   rank_one_projector({8.0 * g, k, 12.0 * g, 0.0},
                                      {g, -2.0 * k, 2.0 * g, 3.0 * g})});
    auto branch = [&](Complex lam, Complex other) {
        return EigenPair{2.0 * lam,
                         rank_one_projector({2.0 * other, Complex(-g, 0.0),
                                             2.0 * lam + other, Complex(0.0, 0.0)},
                                            {2.0 * other - lam, Complex(8.0 * g, 0.0),
                                             2.0 * lam, 2.0 * other + lam})};
    };
    out.push_back(branch(kp, km));
    out.push_back(branch(km, kp));
    return out;
}

std::vector<EigenPair> qblock_eigensystem_A(const ModelParams& params) {
    validate(params);
    if (std::abs(params.ratio() - 1.0) <= kRegimeEps)
        throw DegenerateSpectrumError("qblock_eigensystem_A: spectrum degenerates at r = 1");

    const double g = params.g;
    const double k = params.kappa;
    const EigenratesB rates = eigenrates(params);

    std::vector<EigenPair> out;
    out.reserve(3);
    out.push_back({Complex(0.0, 0.0),
                   rank_one_projector({k * g, g * g - k * k / 2.0, 2.0 * g * g + k * k},
                                      {0.0, 0.0, 1.0})});
    auto branch = [&](Complex lam, Complex other) {
        const Complex w3 = (g / 2.0) * (other - k) / (2.0 * lam - k);
        return EigenPair{Complex(-k / 2.0, 0.0) + lam,
                         rank_one_projector({other, Complex(-2.0 * g, 0.0), Complex(0.0, 0.0)},
                                            {other, Complex(g / 2.0, 0.0), w3})};
    };
    out.push_back(branch(rates.kappa_plus, rates.kappa_minus));
    out.push_back(branch(rates.kappa_minus, rates.kappa_plus));
    return out;
}

CMatrix reduced_atom_map(const ModelParams& params, double t) {
    require_time(t, "reduced_atom_map");
    const CMatrix u = numlin::expm(lindbladian_full(params), t);

    // Lift columns of the atom coordinates (p_up, p_down, Re c, Im c) into
    // the 9-dim vectorization with the cavity in vacuum, propagate, and read
    // back p_up' = ee, p_down' = ii + gg, c' = eg.
    CMatrix map(4);
    const Complex img(0.0, 1.0);
    for (int col = 0; col < 4; ++col) {
        std::vector<Complex> x(9, Complex(0.0, 0.0));
        switch (col) {
        case 0: x[0] = 1.0; break;            // |e><e|
        case 1: x[8] = 1.0; break;            // |g><g|
        case 2: x[2] = 1.0; x[6] = 1.0; break; // |e><g| + |g><e|
        case 3: x[2] = img; x[6] = -img; break;
        }
        const std::vector<Complex> y = u * x;
        map(0, col) = real_checked(y[0], "reduced_atom_map");
        map(1, col) = real_checked(y[4] + y[8], "reduced_atom_map");
        map(2, col) = y[2].real();
        map(3, col) = y[2].imag();
    }
    return map;
}

CMatrix block_basis() {
    // Row order: delta_p, Im c_ei, delta_p', tr, Re c_ei, c_eg, c_ig, c_ge, c_gi.
    // Column order: the vectorized basis of lindbladian_full (3*i + j).
    CMatrix v(9);
    const Complex half_i(0.0, 0.5);
    v(0, 0) = 1.0;
    v(0, 4) = -1.0;
    v(0, 8) = -1.0;
    v(1, 1) = -half_i; // (c_ei - c_ie) / 2i
    v(1, 3) = half_i;
    v(2, 4) = 1.0;
    v(2, 8) = -1.0;
    v(3, 0) = 1.0;
    v(3, 4) = 1.0;
    v(3, 8) = 1.0;
    v(4, 1) = 0.5;
    v(4, 3) = 0.5;
    v(5, 2) = 1.0;
    v(6, 5) = 1.0;
    v(7, 6) = 1.0;
    v(8, 7) = 1.0;
    return v;
}

CMatrix block_form(const ModelParams& params) {
    validate(params);
    const CMatrix la = liouvillian_A(params);
    const CMatrix lb = liouvillian_B(params);
    CMatrix out(9);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = la(i, j);
    out(4, 4) = -params.kappa / 2.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out(5 + i, 5 + j) = lb(i, j);
            out(7 + i, 7 + j) = std::conj(lb(i, j));
        }
    return out;
}

} // namespace ttmjc::jcmodel
