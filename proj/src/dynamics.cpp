#include "tempo/dynamics.hpp"

#include <cmath>

#include "tempo/field_ops.hpp"
#include "tempo/runtime.hpp"

namespace tempo {

SpinorField evolve_uniform_A(const SpinorField& f, double t, const ModelParams& params,
                             const Vec3& A) {
    if (f.rep != Representation::momentum) {
        throw validation_error("evolve: field must be in momentum representation");
    }
    SpinorField out = f;
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            Vec3 pi = f.grid.p_at(node);
            for (int a = 0; a < 3; ++a) {
                pi[static_cast<std::size_t>(a)] -=
                    params.q * A[static_cast<std::size_t>(a)] / C_LIGHT;
            }
            const double e = energy_at(pi, params);
            Spinor4 v{out.amp[4 * node], out.amp[4 * node + 1], out.amp[4 * node + 2],
                      out.amp[4 * node + 3]};
            if (e == 0.0) continue;  // H = 0 there: evolution is the identity
            // exp(-iHt) = cos(Et) I - i sin(Et) H/E since H^2 = E^2 I
            const Matrix4 h = hamiltonian_at(pi, params);
            const Complex c{std::cos(e * t / HBAR), 0.0};
            const Complex s = -I_UNIT * (std::sin(e * t / HBAR) / e);
            const Spinor4 hv = h * v;
            for (std::size_t k = 0; k < 4; ++k) out.amp[4 * node + k] = c * v[k] + s * hv[k];
        }
    });
    return out;
}

SpinorField evolve_free(const SpinorField& f, double t, const ModelParams& params) {
    return evolve_uniform_A(f, t, params, {0.0, 0.0, 0.0});
}

std::vector<double> linspace(double t0, double t1, int samples) {
    if (samples < 1) throw validation_error("linspace: need at least one sample");
    std::vector<double> ts(static_cast<std::size_t>(samples));
    if (samples == 1) {
        ts[0] = t0;
        return ts;
    }
    const double dt = (t1 - t0) / (samples - 1);
    for (int k = 0; k < samples; ++k) ts[static_cast<std::size_t>(k)] = t0 + k * dt;
    return ts;
}

ObservableSeries record_series(const SpinorField& field0, const std::vector<double>& times,
                               const ModelParams& params, const Vec3& A) {
    if (times.empty()) throw validation_error("record_series: empty time list");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw validation_error("record_series: times must be strictly increasing");
        }
    }
    if (std::abs(field_norm(field0) - 1.0) > 1e-10) {
        throw validation_error("record_series: field must be normalized");
    }

    const MatrixField time_obs = time_operator_field(params);
    const MatrixField ham_obs = hamiltonian_field(params);

    ObservableSeries s;
    s.t = times;
    const std::size_t m = times.size();
    s.r.resize(m);
    s.p.resize(m);
    s.T.resize(m);
    s.H.resize(m);
    s.dT.resize(m);
    s.dH.resize(m);
    s.betaK.resize(m);
    s.purity.resize(m);

    for (std::size_t k = 0; k < m; ++k) {
        const SpinorField ft = evolve_uniform_A(field0, times[k], params, A);
        const SpinorField pos = switch_representation(ft, Representation::position);
        for (int a = 0; a < 3; ++a) {
            s.r[k][static_cast<std::size_t>(a)] = expect_observable(pos, position_component(a));
            s.p[k][static_cast<std::size_t>(a)] = expect_observable(ft, momentum_component(a));
        }
        s.T[k] = expect_observable(pos, time_obs);
        s.dT[k] = std::sqrt(variance(pos, time_obs));
        s.H[k] = expect_observable(ft, ham_obs);
        s.dH[k] = std::sqrt(variance(ft, ham_obs));
        s.betaK[k] = expect_beta_K(ft);
        s.purity[k] = branch_purity(ft, params);
    }
    return s;
}

}  // namespace tempo
