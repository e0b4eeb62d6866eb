#include "tempo/operators.hpp"

#include <cmath>

namespace tempo {

Matrix4 hamiltonian_at(const Vec3& p, const ModelParams& params) {
    const DiracBasis& b = dirac_basis();
    return C_LIGHT * alpha_dot(p) + (params.m0 * C_LIGHT * C_LIGHT) * b.beta;
}

Matrix4 time_operator_at(const Vec3& r, const ModelParams& params) {
    const DiracBasis& b = dirac_basis();
    return (1.0 / C_LIGHT) * alpha_dot(r) + params.tau0 * b.beta;
}

Matrix4 energy_projector(const Vec3& p, EnergyBranch branch, const ModelParams& params) {
    const double e = energy_at(p, params);
    if (e == 0.0) {
        throw validation_error("energy_projector: E = 0 node has no branch split");
    }
    const double sign = (branch == EnergyBranch::plus) ? 1.0 : -1.0;
    const Matrix4 h = hamiltonian_at(p, params);
    return 0.5 * (Matrix4::identity() + (sign / e) * h);
}

MatrixField hamiltonian_field(const ModelParams& params) {
    return MatrixField{Representation::momentum, true,
                       [params](const Vec3& p) { return hamiltonian_at(p, params); }};
}

MatrixField time_operator_field(const ModelParams& params) {
    return MatrixField{Representation::position, true,
                       [params](const Vec3& r) { return time_operator_at(r, params); }};
}

MatrixField position_component(int axis) {
    return MatrixField{Representation::position, true, [axis](const Vec3& r) {
                           return r[static_cast<std::size_t>(axis)] * Matrix4::identity();
                       }};
}

MatrixField momentum_component(int axis) {
    return MatrixField{Representation::momentum, true, [axis](const Vec3& p) {
                           return p[static_cast<std::size_t>(axis)] * Matrix4::identity();
                       }};
}

MatrixField constant_observable(const Matrix4& m) {
    return MatrixField{Representation::any, is_hermitian(m, 1e-12 * std::max(max_abs(m), 1.0)),
                       [m](const Vec3&) { return m; }};
}

MatrixField group_velocity_component(int axis, const ModelParams& params) {
    return MatrixField{Representation::momentum, true, [axis, params](const Vec3& p) {
                           const double e = energy_at(p, params);
                           // Massless zero node: packets built here always have zero
                           // amplitude at E = 0, so the value is arbitrary; keep it finite.
                           if (e == 0.0) return Matrix4::zero();
                           const double scale =
                               C_LIGHT * C_LIGHT * p[static_cast<std::size_t>(axis)] / (e * e);
                           return scale * hamiltonian_at(p, params);
                       }};
}

MatrixField drift_rate_field(const ModelParams& params) {
    return MatrixField{Representation::momentum, true, [params](const Vec3& p) {
                           const double e = energy_at(p, params);
                           // E = 0 only happens for m0 = 0, where (pc/E)^2 -> 1.
                           if (e == 0.0) return Matrix4::identity();
                           const double pc2 = C_LIGHT * C_LIGHT * dot(p, p);
                           return (pc2 / (e * e)) * Matrix4::identity();
                       }};
}

MatrixField energy_magnitude_field(const ModelParams& params) {
    return MatrixField{Representation::momentum, true, [params](const Vec3& p) {
                           return energy_at(p, params) * Matrix4::identity();
                       }};
}

}  // namespace tempo
