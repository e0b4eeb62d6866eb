#pragma once

#include <functional>

#include "tempo/algebra.hpp"
#include "tempo/common.hpp"

namespace tempo {

// Free-particle model parameters in natural units (hbar = c = 1).
//   m0    rest mass
//   tau0  internal time constant multiplying beta in the time observable
//   q     charge, used only by the electromagnetic-field analysis
struct ModelParams {
    double m0 = 1.0;
    double tau0 = 0.0;
    double q = 0.0;
};

// H(p) = alpha.p c + beta m0 c^2, evaluated at one momentum node.
Matrix4 hamiltonian_at(const Vec3& p, const ModelParams& params);

// T(r) = alpha.r / c + beta tau0, evaluated at one position.
Matrix4 time_operator_at(const Vec3& r, const ModelParams& params);

inline double energy_at(const Vec3& p, const ModelParams& params) {
    return std::sqrt(dot(p, p) + params.m0 * params.m0);
}

enum class EnergyBranch { plus, minus };

// Projector onto the positive or negative energy subspace at momentum p:
// (E +- H) / 2E.  Undefined at E = 0 (massless packet at the zero node);
// callers on that measure-zero node must special-case it.
Matrix4 energy_projector(const Vec3& p, EnergyBranch branch, const ModelParams& params);

// Which basis a field's amplitudes live in.
enum class Representation { momentum, position, any };

// A 4x4 observable that may vary over the grid.  `rep` says which
// representation the node coordinate refers to; `any` marks matrices that are
// constant across nodes.
struct MatrixField {
    Representation rep = Representation::any;
    bool hermitian = true;
    std::function<Matrix4(const Vec3&)> at;
};

MatrixField hamiltonian_field(const ModelParams& params);
MatrixField time_operator_field(const ModelParams& params);
MatrixField position_component(int axis);
MatrixField momentum_component(int axis);
MatrixField constant_observable(const Matrix4& m);
// c^2 p_i H / E^2: the velocity observable whose expectation is the packet
// group velocity along `axis`.
MatrixField group_velocity_component(int axis, const ModelParams& params);
// (pc/E)^2 * identity: expectation gives the mean drift rate of the time
// observable.
MatrixField drift_rate_field(const ModelParams& params);
// E(p) * identity.
MatrixField energy_magnitude_field(const ModelParams& params);

}  // namespace tempo
