// jcmodel.hpp — Generators and closed-form dynamics of a two-level atom
// resonantly coupled to a single lossy cavity mode (Jaynes-Cummings limit,
// cavity initialized in vacuum).
//
// With the cavity starting in |0>, only three states take part in the
// dynamics: |e> = |up,0>, |i> = |down,1> and |g> = |down,0>. The Liouvillian
// splits into two decoupled sectors:
//
//   subspace B (coherences c_eg, c_ig) with the 2x2 generator liouvillian_B,
//   subspace A (populations + Im c_ei) in the variables
//   (delta_p, Im c_ei, delta_p', 1) with the 4x4 generator liouvillian_A.
//
// Both sectors admit closed forms for the dynamical map (Ec, Ep), the
// Nakajima-Zwanzig memory kernel (Kc, Kp) and the transfer tensors
// (T2c, Tkc, T2p) on a homogeneous time lattice. All channel quantities are
// evaluated in complex arithmetic; the imaginary residue is checked against
// a consistency bound before it is discarded.
//
// Everything is a pure function of (params, t); safe to evaluate
// concurrently across parameter sweeps.

#pragma once

#include <stdexcept>
#include <vector>

#include "ttmjc/numlin.hpp"

namespace ttmjc::jcmodel {

using numlin::CMatrix;
using numlin::Complex;

/// A channel value came out with an imaginary residue above tolerance.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Spectral decomposition was requested for a degenerate spectrum; the
/// caller should fall back to numlin::expm.
class DegenerateSpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    double g;     // atom-cavity coupling rate, > 0
    double kappa; // cavity photon loss rate, >= 0

    double ratio() const { return kappa / (4.0 * g); } // r = kappa/4g
};

/// Throws std::invalid_argument unless g > 0, kappa >= 0 and both finite.
void validate(const ModelParams& params);

enum class Damping { Underdamped, CriticallyDamped, Overdamped };

struct Regime {
    Damping damping;
    double r;
};

const char* to_string(Damping damping);

/// Classifies by r = kappa/4g: under (r < 1), critical (r = 1 within 1e-9),
/// over (r > 1).
Regime regime(const ModelParams& params);

/// Roots kappa_pm = -kappa/4 +- sqrt((kappa/4)^2 - g^2) of the subspace-B
/// characteristic polynomial lambda^2 + kappa*lambda/2 + g^2 = 0. They obey
/// kappa_plus + kappa_minus = -kappa/2 and kappa_plus*kappa_minus = g^2.
struct EigenratesB {
    Complex kappa_plus;
    Complex kappa_minus;
};

EigenratesB eigenrates(const ModelParams& params);

/// Reduced atom state: populations and the e-g coherence.
struct AtomState {
    double p_up;
    double p_down;
    Complex c;
};

/// Trace, positivity and coherence-bound checks on an AtomState.
bool physical(const AtomState& state, double trace_tol = 1e-12, double coherence_tol = 1e-9);

/// Subspace-A coordinates (delta_p, Im c_ei, delta_p', 1); the state vector
/// liouvillian_A acts on.
struct PopulationVector {
    double delta_p;
    double c_ei_imag;
    double delta_p_prime;
    double unit = 1.0;

    std::vector<Complex> coordinates() const {
        return {Complex(delta_p, 0.0), Complex(c_ei_imag, 0.0), Complex(delta_p_prime, 0.0),
                Complex(unit, 0.0)};
    }
};

/// Subspace-A initial condition for an atom state with the cavity in vacuum:
/// p_i = 0 and c_ei = 0, so (p_up - p_down, 0, -p_down, 1).
PopulationVector initial_population_vector(const AtomState& state);

/// 2x2 generator of the coherence sector: [[0, -ig], [-ig, -kappa/2]].
CMatrix liouvillian_B(const ModelParams& params);

/// 4x4 generator of the population sector in (delta_p, Im c_ei, delta_p', 1).
CMatrix liouvillian_A(const ModelParams& params);

/// 9x9 generator of d mu/dt = -i[H, mu] + kappa D[a] mu on the three-state
/// space, vectorized row-major over the ordered basis
/// (|e><e|, |e><i|, |e><g|, |i><e|, ..., |g><g|), i.e. index 3*i + j for
/// |b_i><b_j| with (b_0, b_1, b_2) = (e, i, g). Here H = g(|e><i| + |i><e|)
/// and a = |g><i| (the cavity annihilator in the single-excitation
/// truncation). Note the commutator carries the -i prefactor: that is the
/// convention under which dc_eg/dt = -i g c_ig.
CMatrix lindbladian_full(const ModelParams& params);

/// Coherence dynamical map: Ec(t) = (k+ e^{k- t} - k- e^{k+ t})/(k+ - k-),
/// the (0,0) entry of e^{L_B t}. Ec(0) = 1.
double Ec(const ModelParams& params, double t);

/// Coherence memory kernel: Kc(t) = -g^2 e^{-kappa t/2}.
double Kc(const ModelParams& params, double t);

/// Second coherence transfer tensor:
/// T2c(t) = -(g (e^{k- t} - e^{k+ t})/(k+ - k-))^2. In the underdamped
/// regime this is -g^2 e^{-kappa t/2} sin^2(w t)/w^2 with w = g sqrt(1-r^2),
/// so it vanishes exactly at t = m pi / w.
double T2c(const ModelParams& params, double t);

/// Scalar ratio f(t) = (k+ e^{k+ t} - k- e^{k- t})/(k+ - k-) = T3c/T2c; the
/// Q-block component of e^{L_B t}. f(0) = 1.
double f_ratio(const ModelParams& params, double t);

/// k-th coherence transfer tensor, Tkc = T2c * f^{k-2} for k >= 2.
double Tkc(const ModelParams& params, double t, int k);

/// Population dynamical map: Ep = Ec^2 + T2c/2, the (0,0) entry of e^{L_A t}.
double Ep(const ModelParams& params, double t);

/// Population memory kernel:
/// Kp(t) = Kc(t) ((k+ - 2k-) e^{k- t} - (k- - 2k+) e^{k+ t})/(k+ - k-),
/// equivalently Kc(t) (Ec(t) + 2 f(t)). Kp(0) = -3 g^2.
double Kp(const ModelParams& params, double t);

/// Second population transfer tensor:
/// T2p = (3/2) T2c Ep + T3c Ec + (1/2) T4c; proportional to T2c, so it shares
/// the Markovian lattice spacings of the coherence sector. Higher population
/// tensors carry no closed form here; extract them generically from sampled
/// Ep (module ttm).
double T2p(const ModelParams& params, double t);

struct EigenPair {
    Complex value;
    CMatrix projector;
};

/// Spectral decomposition of liouvillian_A: eigenvalues 0, -kappa/2, 2*k+,
/// 2*k- with rank-one projectors built from closed-form left/right
/// eigenvectors. Satisfies sum_l P_l e^{gamma_l t} = e^{L_A t}. Throws
/// DegenerateSpectrumError when the spectrum degenerates (kappa = 0 or
/// r = 1 within 1e-9); callers then fall back to numlin::expm.
std::vector<EigenPair> eigensystem_A(const ModelParams& params);

/// Spectral decomposition of the irrelevant 3x3 block of Q_A L_A Q_A:
/// eigenvalues 0 and lambda_pm = -kappa/2 + k_pm. Same degeneracy contract
/// as eigensystem_A (r = 1 only; kappa = 0 is fine here).
std::vector<EigenPair> qblock_eigensystem_A(const ModelParams& params);

/// Reduced one-step atom map at time t: the 4x4 real matrix acting on
/// (p_up, p_down, Re c, Im c) obtained by lifting the atom state with the
/// cavity in vacuum, propagating with e^{L t} of the 9x9 generator, and
/// compressing back. Linear (no affine part is needed because p_up and
/// p_down are carried separately).
CMatrix reduced_atom_map(const ModelParams& params, double t);

/// Invertible 9x9 change of basis V from the vectorized basis of
/// lindbladian_full to the block coordinates
/// (delta_p, Im c_ei, delta_p', tr, Re c_ei, c_eg, c_ig, c_ge, c_gi).
/// V L V^{-1} equals block_form(params).
CMatrix block_basis();

/// Expected block-diagonal form: L_A (4x4) + [-kappa/2] (Re c_ei) + L_B
/// (2x2) + conj(L_B) (c_ge, c_gi sector).
CMatrix block_form(const ModelParams& params);

} // namespace ttmjc::jcmodel
