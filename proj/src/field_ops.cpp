#include "tempo/field_ops.hpp"

#include <cmath>

#include "tempo/runtime.hpp"

namespace tempo {

namespace {

Spinor4 node_spinor(const SpinorField& f, std::size_t k) {
    return Spinor4{f.amp[4 * k], f.amp[4 * k + 1], f.amp[4 * k + 2], f.amp[4 * k + 3]};
}

void set_node(SpinorField& f, std::size_t k, const Spinor4& v) {
    for (std::size_t c = 0; c < 4; ++c) f.amp[4 * k + c] = v[c];
}

}  // namespace

SpinorField apply_angular_momentum(const SpinorField& f, int axis) {
    if (f.rep != Representation::momentum) {
        throw validation_error("apply_angular_momentum: field must be in momentum representation");
    }
    const std::array<SpinorField, 3> w = position_weighted_fields(f);
    SpinorField out = f;
    const int j = (axis + 1) % 3;
    const int k = (axis + 2) % 3;
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            const Vec3 p = f.grid.p_at(node);
            // L_i = r_j p_k - r_k p_j (cyclic), with r applied first.
            for (std::size_t c = 0; c < 4; ++c) {
                out.amp[4 * node + c] =
                    p[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(j)].amp[4 * node + c] -
                    p[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)].amp[4 * node + c];
            }
        }
    });
    return out;
}

SpinorField apply_spin_orbit(const SpinorField& f) {
    if (f.rep != Representation::momentum) {
        throw validation_error("apply_spin_orbit: field must be in momentum representation");
    }
    const std::array<SpinorField, 3> w = position_weighted_fields(f);
    SpinorField out = f;
    const DiracBasis& b = dirac_basis();
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            const Vec3 p = f.grid.p_at(node);
            Spinor4 acc{};
            for (int i = 0; i < 3; ++i) {
                const int j = (i + 1) % 3;
                const int k = (i + 2) % 3;
                Spinor4 li{};
                for (std::size_t c = 0; c < 4; ++c) {
                    li[c] = p[static_cast<std::size_t>(k)] *
                                w[static_cast<std::size_t>(j)].amp[4 * node + c] -
                            p[static_cast<std::size_t>(j)] *
                                w[static_cast<std::size_t>(k)].amp[4 * node + c];
                }
                // S_i L_i / hbar^2 = Sigma_i L_i / (2 hbar)
                const Spinor4 t = b.sigma_big[static_cast<std::size_t>(i)] * li;
                for (std::size_t c = 0; c < 4; ++c) acc[c] += t[c] / (2.0 * HBAR);
            }
            set_node(out, node, acc);
        }
    });
    return out;
}

double expect_spin_orbit(const SpinorField& f) {
    if (std::abs(field_norm(f) - 1.0) > 1e-10) {
        throw validation_error("expect_spin_orbit: field is not normalized");
    }
    const SpinorField slf = apply_spin_orbit(f);
    return inner_product(f, slf).real();
}

double expect_beta_K(const SpinorField& f) {
    return 1.0 + 2.0 * expect_spin_orbit(f);
}

SpinorField apply_K(const SpinorField& f) {
    if (f.rep != Representation::momentum) {
        throw validation_error("apply_K: field must be in momentum representation");
    }
    if (!is_localized(f) || !is_localized(switch_representation(f, Representation::position))) {
        throw validation_error("apply_K: field must be localized in both representations");
    }
    const SpinorField slf = apply_spin_orbit(f);
    SpinorField out = f;
    const DiracBasis& b = dirac_basis();
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            Spinor4 v{};
            for (std::size_t c = 0; c < 4; ++c) {
                v[c] = 2.0 * slf.amp[4 * node + c] + f.amp[4 * node + c];
            }
            set_node(out, node, b.beta * v);
        }
    });
    return out;
}

double heisenberg_time_expectation(const SpinorField& f0, double t, const ModelParams& params) {
    if (f0.rep != Representation::momentum) {
        throw validation_error("heisenberg_time_expectation: field must be in momentum representation");
    }
    if (std::abs(field_norm(f0) - 1.0) > 1e-10) {
        throw validation_error("heisenberg_time_expectation: field is not normalized");
    }

    const std::array<SpinorField, 3> w = position_weighted_fields(f0);
    const DiracBasis& b = dirac_basis();
    const std::size_t nn = f0.grid.total_nodes();

    const Complex val = parallel_reduce(nn, [&](std::size_t node) {
        const Spinor4 psi = node_spinor(f0, node);
        double psi2 = 0.0;
        for (const Complex& z : psi) psi2 += std::norm(z);

        const Vec3 p = f0.grid.p_at(node);
        const double e = energy_at(p, params);
        // Massless zero node: the states built here carry no amplitude there,
        // so it contributes nothing; skipping avoids the 1/E singularity.
        if (e == 0.0 || psi2 == 0.0) return Complex{0.0, 0.0};

        const Matrix4 h = hamiltonian_at(p, params);
        const Matrix4 hinv = (1.0 / (e * e)) * h;
        const Matrix4 u = std::cos(2.0 * e * t) * Matrix4::identity() -
                          (I_UNIT * (std::sin(2.0 * e * t) / e)) * h;
        const Matrix4 um1 = u - Matrix4::identity();
        const Matrix4 g = b.beta - params.m0 * hinv;

        // B collects every term of T(t) that is local in momentum; the
        // position operator pieces go through the precomputed weights.  Frozen
        // axes carry no position operator, so they contribute nothing.
        Matrix4 bloc = params.tau0 * (params.m0 * hinv + g * u);
        Spinor4 acc{};
        for (int i = 0; i < 3; ++i) {
            if (!f0.grid.axis_active(i)) continue;
            const double pi = p[static_cast<std::size_t>(i)];
            const Matrix4 fi = b.alpha[static_cast<std::size_t>(i)] - pi * hinv;
            const Matrix4 ai = pi * hinv + fi * u;
            bloc = bloc + ai * (pi * t * hinv + (0.5 * I_UNIT) * (fi * (hinv * um1)));
            const Spinor4 wi = ai * node_spinor(w[static_cast<std::size_t>(i)], node);
            for (std::size_t c = 0; c < 4; ++c) acc[c] += wi[c];
        }
        const Spinor4 bp = bloc * psi;
        for (std::size_t c = 0; c < 4; ++c) acc[c] += bp[c];
        return sdot(psi, acc);
    });
    return (val * f0.grid.cell_volume_p()).real();
}

}  // namespace tempo
