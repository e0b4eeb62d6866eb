#include "tempo/packets.hpp"

#include <cmath>
#include <string>

#include "tempo/runtime.hpp"

namespace tempo {

std::array<Complex, 2> pauli_eigenvector(const Vec3& axis, int sign) {
    const double n = norm3(axis);
    if (n == 0.0) throw validation_error("pauli_eigenvector: zero axis");
    if (sign != 1 && sign != -1) throw validation_error("pauli_eigenvector: sign must be +-1");
    const double theta = std::acos(axis[2] / n);
    const double phi = std::atan2(axis[1], axis[0]);
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    const Complex eip = std::exp(I_UNIT * phi);
    if (sign > 0) return {Complex{ch, 0.0}, eip * sh};
    return {-std::conj(eip) * sh, Complex{ch, 0.0}};
}

namespace {

Spinor4 branch_block(const std::array<Complex, 2>& chi, PacketBranch b) {
    if (b == PacketBranch::plus) return {chi[0], chi[1], 0.0, 0.0};
    return {0.0, 0.0, chi[0], chi[1]};
}

void validate_spec(const MomentumGrid& grid, const PacketSpec& spec) {
    if (spec.mix_weight < 0.0 || spec.mix_weight > 1.0) {
        throw validation_error("packet: mix_weight must be in [0, 1]");
    }
    if (norm3(spec.spin_axis) == 0.0) throw validation_error("packet: zero spin axis");
    if (spec.spin_sign != 1 && spec.spin_sign != -1) {
        throw validation_error("packet: spin_sign must be +-1");
    }
    for (int a = 0; a < 3; ++a) {
        if (!grid.axis_active(a)) continue;
        const double s = spec.sigma_p[static_cast<std::size_t>(a)];
        if (!(s > 0.0)) throw validation_error("packet: sigma_p must be positive on active axes");
        const double reach = std::abs(spec.p_center[static_cast<std::size_t>(a)]) + 4.0 * s;
        if (reach >= grid.p_max[static_cast<std::size_t>(a)]) {
            throw validation_error("packet: |p_center| + 4 sigma_p exceeds p_max on axis " +
                                   std::to_string(a));
        }
        const double sx = 0.5 * HBAR / s;
        const double x_max = 0.5 * grid.n[static_cast<std::size_t>(a)] * grid.dx(a);
        if (std::abs(spec.r_center[static_cast<std::size_t>(a)]) + 4.0 * sx >= x_max) {
            throw validation_error("packet: |r_center| + 4 sigma_x exceeds the position box on axis " +
                                   std::to_string(a));
        }
    }
}

}  // namespace

Spinor4 packet_spinor(const PacketSpec& spec, const Vec3& p, const ModelParams& params) {
    if (spec.structure == SpinStructure::alpha) {
        // spin_sign selects the alpha.axis eigenvalue here; the two-spinor is
        // the +1 eigenvector of sigma.axis, so Sigma.axis stays +1.
        const double s = spec.spin_sign;
        const std::array<Complex, 2> up = pauli_eigenvector(spec.spin_axis, +1);
        const double r = 1.0 / std::sqrt(2.0);
        return {r * up[0], r * up[1], r * s * up[0], r * s * up[1]};
    }

    const std::array<Complex, 2> chi = pauli_eigenvector(spec.spin_axis, spec.spin_sign);

    if (spec.structure == SpinStructure::rest) {
        if (spec.branch == PacketBranch::mixed) {
            const double wp = std::sqrt(1.0 - spec.mix_weight);
            const double wm = std::sqrt(spec.mix_weight);
            return {wp * chi[0], wp * chi[1], wm * chi[0], wm * chi[1]};
        }
        return branch_block(chi, spec.branch);
    }

    // projected: Lambda_branch applied node-wise, renormalized
    const double e = energy_at(p, params);
    if (e == 0.0) return Spinor4{};  // massless zero node carries no amplitude
    auto project = [&](PacketBranch b) {
        const Matrix4 lam = energy_projector(
            p, b == PacketBranch::plus ? EnergyBranch::plus : EnergyBranch::minus, params);
        return snormalize(lam * branch_block(chi, b));
    };
    if (spec.branch == PacketBranch::mixed) {
        const Spinor4 up = project(PacketBranch::plus);
        const Spinor4 dn = project(PacketBranch::minus);
        const double wp = std::sqrt(1.0 - spec.mix_weight);
        const double wm = std::sqrt(spec.mix_weight);
        Spinor4 out;
        for (std::size_t c = 0; c < 4; ++c) out[c] = wp * up[c] + wm * dn[c];
        return out;
    }
    return project(spec.branch);
}

SpinorField build_gaussian(const MomentumGrid& grid, const PacketSpec& spec,
                           const ModelParams& params) {
    validate_spec(grid, spec);
    SpinorField f = make_field(grid, Representation::momentum);
    const std::size_t nn = grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            const Vec3 p = grid.p_at(node);
            double logenv = 0.0;
            double phase = 0.0;
            for (int a = 0; a < 3; ++a) {
                if (!grid.axis_active(a)) continue;
                const double d = p[static_cast<std::size_t>(a)] -
                                 spec.p_center[static_cast<std::size_t>(a)];
                const double s = spec.sigma_p[static_cast<std::size_t>(a)];
                logenv -= d * d / (4.0 * s * s);
                phase -= p[static_cast<std::size_t>(a)] *
                         spec.r_center[static_cast<std::size_t>(a)] / HBAR;
            }
            const Complex env = std::exp(logenv) * std::exp(I_UNIT * phase);
            const Spinor4 u = packet_spinor(spec, p, params);
            for (std::size_t c = 0; c < 4; ++c) f.amp[4 * node + c] = env * u[c];
        }
    });
    normalize(f);
    return f;
}

double branch_purity(const SpinorField& f, const ModelParams& params) {
    if (f.rep != Representation::momentum) {
        throw validation_error("branch_purity: field must be in momentum representation");
    }
    const std::size_t nn = f.grid.total_nodes();
    const Complex plus = parallel_reduce(nn, [&](std::size_t node) {
        const Vec3 p = f.grid.p_at(node);
        const Spinor4 v{f.amp[4 * node], f.amp[4 * node + 1], f.amp[4 * node + 2],
                        f.amp[4 * node + 3]};
        const double e = energy_at(p, params);
        if (e == 0.0) return 0.5 * sdot(v, v);  // branchless node splits evenly
        const Matrix4 lam = energy_projector(p, EnergyBranch::plus, params);
        return sdot(v, lam * v);
    });
    const Complex total = inner_product(f, f);
    if (total.real() <= 0.0) throw validation_error("branch_purity: zero field");
    const double val = plus.real() * f.grid.cell_volume_p() / total.real();
    return std::min(1.0, std::max(0.0, val));
}

}  // namespace tempo
