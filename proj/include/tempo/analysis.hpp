#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tempo/dynamics.hpp"
#include "tempo/field_ops.hpp"
#include "tempo/hilbert.hpp"
#include "tempo/operators.hpp"

namespace tempo {

// Analytic eigensystem of T at radius r along z: eigenvalues -+tau_r, each
// doubly degenerate, tau_r = sqrt(r^2/c^2 + tau0^2).  Spinor columns in order
// (-tau, +1/2), (-tau, -1/2), (+tau, +1/2), (+tau, -1/2) with
// kappa = (r/c)/(tau_r + tau0) and N = sqrt((tau_r + tau0) / (2 tau_r)).
struct TimeEigensystem {
    double r = 0.0;
    double tau_r = 0.0;
    std::array<double, 4> values{};
    std::array<Spinor4, 4> spinors{};
};

TimeEigensystem time_eigensystem(double r_z, const ModelParams& params);

struct UncertaintyReport {
    double dT = 0.0;
    double dH = 0.0;
    double product = 0.0;
    // (1/2)|<[T,H]>| from the discrete operators themselves.
    double robertson_bound = 0.0;
    // (hbar/2)|<I + 2 beta K>|, the approximate closed-form bound.
    double spin_orbit_bound = 0.0;
    bool ok_robertson = false;
    bool ok_spin_orbit = false;
};

UncertaintyReport uncertainty_product(const SpinorField& f, const ModelParams& params);

// d<T>/dt = (1/i hbar)<[T, H]> evaluated instantaneously; A is a spatially
// constant vector potential (A = 0 gives the free rate).
double time_expectation_rate(const SpinorField& f, const ModelParams& params,
                             const Vec3& A = {0.0, 0.0, 0.0});

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

struct VelocityReport {
    Vec3 v_group{0.0, 0.0, 0.0};  // slope of <r> vs t, per axis
    double v_phase = 0.0;         // |d<r>/d<T>|
    double product = 0.0;         // v_phase * |v_group|
};

VelocityReport velocity_extraction(const ObservableSeries& s);

enum class Regime { nonrelativistic, ultrarelativistic };

// Leading-order slope and offset of <T>(t) in the two limits:
// nonrelativistic (cp < 0.2 m0 c^2): slope (cp/m0c^2)^2, offset tau0;
// ultrarelativistic (cp > 5 m0 c^2): slope 1, offset (m0c^2/cp) tau0.
struct RegimePrediction {
    double slope = 0.0;
    double offset = 0.0;
};

RegimePrediction regime_expansion(const ModelParams& params, double p, Regime regime);

// U(epsilon) = exp(i epsilon T / hbar), applied node-wise in position
// representation where T is matrix-local; epsilon has energy units and
// displaces <p> by (epsilon/c) <alpha> to first order (exactly lambda
// epsilon/c on alpha-eigenspinor packets).
SpinorField momentum_shift(const SpinorField& f, double epsilon, const ModelParams& params);

struct ZbwReport {
    double omega = 0.0;      // dominant angular frequency of detrended <z>(t)
    double amplitude = 0.0;  // one-sided amplitude at that frequency
};

// Needs >= 64 uniformly spaced samples.
ZbwReport zbw_spectrum(const ObservableSeries& s);

struct EMFieldSpec {
    std::function<Vec3(const Vec3&)> A;      // null -> A = 0
    std::function<double(const Vec3&)> Phi;  // null -> Phi = 0 (drops out of the rate)
    double q = 0.0;
};

struct EmRateReport {
    double rate = 0.0;
    double base_term = 0.0;      // d_active + 4 <S.L>/hbar^2
    double magnetic_term = 0.0;  // -(4q / hbar^2 c) <S.(r x A(r))>
    double gamma_term = 0.0;     // -(2i/hbar)[tau0 c <beta alpha.pi> - m0 c <beta alpha.r>]
};

// Instantaneous d<T>/dt under minimal coupling, term by term.  The scalar
// potential never appears: [T, Phi(r)] = 0 node-wise.
EmRateReport em_time_rate(const SpinorField& f, const EMFieldSpec& em, const ModelParams& params);

// (<beta alpha.p>, <beta alpha.r>); both vanish identically for rest-structure
// single-branch packets and are purely imaginary in general.
std::pair<Complex, Complex> beta_alpha_expectations(const SpinorField& f);

}  // namespace tempo
