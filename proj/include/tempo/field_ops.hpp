#pragma once

#include "tempo/hilbert.hpp"
#include "tempo/operators.hpp"

namespace tempo {

// L_axis psi for a momentum-representation field, where L = r x p and r acts
// spectrally.  The position weight is applied before the momentum factor, so
// the operator ordering matches r x p exactly on the discrete torus.
SpinorField apply_angular_momentum(const SpinorField& f, int axis);

// (S.L / hbar^2) psi with S = (hbar/2) Sigma.  Ungated building block shared
// by the spin-orbit expectation, the K operator and the evolution rates.
SpinorField apply_spin_orbit(const SpinorField& f);

// <S.L> / hbar^2 on a normalized momentum-representation field.
double expect_spin_orbit(const SpinorField& f);

// <beta K> where K = beta (2 S.L / hbar^2 + 1); identically 1 + 2 <S.L>/hbar^2.
double expect_beta_K(const SpinorField& f);

// K psi.  Refuses fields that are not localized in both representations,
// since the spectral position operator wraps around otherwise.
SpinorField apply_K(const SpinorField& f);

// <T(t)> from the closed-form Heisenberg solution of the free evolution,
// evaluated node-wise with full momentum dependence.  The field is the t = 0
// state in momentum representation.
double heisenberg_time_expectation(const SpinorField& f0, double t, const ModelParams& params);

}  // namespace tempo
