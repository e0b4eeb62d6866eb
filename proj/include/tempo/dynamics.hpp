#pragma once

#include <vector>

#include "tempo/hilbert.hpp"
#include "tempo/operators.hpp"
#include "tempo/packets.hpp"

namespace tempo {

// psi(p) <- exp(-i H(p) t / hbar) psi(p), exact per node (no time stepping).
SpinorField evolve_free(const SpinorField& f, double t, const ModelParams& params);

// Same with H(p) = c alpha.(p - qA/c) + beta m0 c^2 for a spatially constant
// vector potential A, which keeps the Hamiltonian node-diagonal in momentum.
SpinorField evolve_uniform_A(const SpinorField& f, double t, const ModelParams& params,
                             const Vec3& A);

struct ObservableSeries {
    std::vector<double> t;
    std::vector<Vec3> r;
    std::vector<Vec3> p;
    std::vector<double> T;
    std::vector<double> H;
    std::vector<double> dT;
    std::vector<double> dH;
    std::vector<double> betaK;
    std::vector<double> purity;
};

// Evolves field0 to every requested time (each from t = 0, so there is no
// step-to-step error) and records expectations.  Times must be strictly
// increasing; field0 normalized, momentum representation.
ObservableSeries record_series(const SpinorField& field0, const std::vector<double>& times,
                               const ModelParams& params, const Vec3& A = {0.0, 0.0, 0.0});

std::vector<double> linspace(double t0, double t1, int samples);

}  // namespace tempo
