#include "tempo/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "tempo/runtime.hpp"

namespace tempo {

TimeEigensystem time_eigensystem(double r_z, const ModelParams& params) {
    if (r_z < 0.0) throw validation_error("time_eigensystem: radius must be non-negative");
    TimeEigensystem out;
    out.r = r_z;
    const double rc = r_z / C_LIGHT;
    out.tau_r = std::sqrt(rc * rc + params.tau0 * params.tau0);
    out.values = {-out.tau_r, -out.tau_r, out.tau_r, out.tau_r};

    if (out.tau_r == 0.0) {
        // T = 0: any basis works; return the canonical one.
        for (int k = 0; k < 4; ++k) out.spinors[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1.0;
        return out;
    }
    const double kappa = rc / (out.tau_r + params.tau0);
    const double n = std::sqrt((out.tau_r + params.tau0) / (2.0 * out.tau_r));
    out.spinors[0] = {-n * kappa, 0.0, n, 0.0};
    out.spinors[1] = {0.0, n * kappa, 0.0, n};
    out.spinors[2] = {n, 0.0, n * kappa, 0.0};
    out.spinors[3] = {0.0, n, 0.0, -n * kappa};
    return out;
}

namespace {

// <T psi | H psi> with both factors taken to momentum representation.
Complex cross_matrix_element(const SpinorField& f, const ModelParams& params, const Vec3& A) {
    SpinorField tpsi = switch_representation(f, Representation::position);
    apply_matrix_field(tpsi, time_operator_field(params));
    tpsi = switch_representation(tpsi, Representation::momentum);

    SpinorField hpsi = f;
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            Vec3 pi = f.grid.p_at(node);
            for (int a = 0; a < 3; ++a) {
                pi[static_cast<std::size_t>(a)] -=
                    params.q * A[static_cast<std::size_t>(a)] / C_LIGHT;
            }
            const Matrix4 h = hamiltonian_at(pi, params);
            Spinor4 v{hpsi.amp[4 * node], hpsi.amp[4 * node + 1], hpsi.amp[4 * node + 2],
                      hpsi.amp[4 * node + 3]};
            const Spinor4 w = h * v;
            for (std::size_t c = 0; c < 4; ++c) hpsi.amp[4 * node + c] = w[c];
        }
    });
    return inner_product(tpsi, hpsi);
}

}  // namespace

UncertaintyReport uncertainty_product(const SpinorField& f, const ModelParams& params) {
    UncertaintyReport rep;
    rep.dT = std::sqrt(variance(f, time_operator_field(params)));
    rep.dH = std::sqrt(variance(f, hamiltonian_field(params)));
    rep.product = rep.dT * rep.dH;
    // <[T,H]> = 2i Im <T psi | H psi>, so (1/2)|<[T,H]>| = |Im <T psi|H psi>|.
    rep.robertson_bound = std::abs(cross_matrix_element(f, params, {0.0, 0.0, 0.0}).imag());
    rep.spin_orbit_bound = 0.5 * HBAR * std::abs(1.0 + 2.0 * expect_beta_K(f));
    rep.ok_robertson = rep.product >= rep.robertson_bound - 1e-9;
    rep.ok_spin_orbit = rep.product >= rep.spin_orbit_bound - 1e-9;
    return rep;
}

double time_expectation_rate(const SpinorField& f, const ModelParams& params, const Vec3& A) {
    return (2.0 / HBAR) * cross_matrix_element(f, params, A).imag();
}

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw validation_error("least_squares_line: need two matched samples at least");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (sxx == 0.0) throw validation_error("least_squares_line: degenerate abscissa");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

VelocityReport velocity_extraction(const ObservableSeries& s) {
    if (s.t.size() < 2) throw validation_error("velocity_extraction: need at least two samples");
    if (!(s.t.back() > s.t.front())) {
        throw validation_error("velocity_extraction: degenerate time span");
    }
    VelocityReport rep;
    std::vector<double> ri(s.t.size());
    for (int a = 0; a < 3; ++a) {
        for (std::size_t k = 0; k < s.t.size(); ++k) ri[k] = s.r[k][static_cast<std::size_t>(a)];
        rep.v_group[static_cast<std::size_t>(a)] = least_squares_line(s.t, ri).slope;
    }
    const double dTdt = least_squares_line(s.t, s.T).slope;
    if (dTdt == 0.0) throw validation_error("velocity_extraction: <T> does not advance");
    const double vg = norm3(rep.v_group);
    rep.v_phase = std::abs(vg / dTdt);
    rep.product = rep.v_phase * vg;
    return rep;
}

RegimePrediction regime_expansion(const ModelParams& params, double p, Regime regime) {
    const double cp = C_LIGHT * p;
    const double rest = params.m0 * C_LIGHT * C_LIGHT;
    RegimePrediction out;
    if (regime == Regime::nonrelativistic) {
        if (!(cp < 0.2 * rest)) {
            throw validation_error("regime_expansion: cp must be < 0.2 m0 c^2 for the nonrelativistic limit");
        }
        out.slope = (cp / rest) * (cp / rest);
        out.offset = params.tau0;
        return out;
    }
    if (!(cp > 5.0 * rest)) {
        throw validation_error("regime_expansion: cp must be > 5 m0 c^2 for the ultrarelativistic limit");
    }
    out.slope = 1.0;
    out.offset = (rest / cp) * params.tau0;
    return out;
}

SpinorField momentum_shift(const SpinorField& f, double epsilon, const ModelParams& params) {
    if (std::abs(field_norm(f) - 1.0) > 1e-10) {
        throw validation_error("momentum_shift: field must be normalized");
    }
    double cap = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (!f.grid.axis_active(a)) continue;
        const double lim = f.grid.dp(a) * f.grid.n[static_cast<std::size_t>(a)] / 8.0;
        cap = (cap == 0.0) ? lim : std::min(cap, lim);
    }
    if (std::abs(epsilon) / C_LIGHT > cap) {
        throw validation_error("momentum_shift: |epsilon|/c exceeds dp*n/8, not representable");
    }

    SpinorField pos = switch_representation(f, Representation::position);
    const double theta = epsilon / HBAR;
    const std::size_t nn = pos.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            const Vec3 r = pos.grid.x_at(node);
            const double rc = norm3(r) / C_LIGHT;
            const double tau = std::sqrt(rc * rc + params.tau0 * params.tau0);
            Spinor4 v{pos.amp[4 * node], pos.amp[4 * node + 1], pos.amp[4 * node + 2],
                      pos.amp[4 * node + 3]};
            if (tau == 0.0) continue;  // T = 0 there: U is the identity
            // exp(i theta T) = cos(theta tau) I + i sin(theta tau) T / tau
            const Matrix4 tm = time_operator_at(r, params);
            const Complex c{std::cos(theta * tau), 0.0};
            const Complex s = I_UNIT * (std::sin(theta * tau) / tau);
            const Spinor4 tv = tm * v;
            for (std::size_t k = 0; k < 4; ++k) pos.amp[4 * node + k] = c * v[k] + s * tv[k];
        }
    });
    return switch_representation(pos, Representation::momentum);
}

ZbwReport zbw_spectrum(const ObservableSeries& s) {
    const std::size_t n = s.t.size();
    if (n < 64) throw validation_error("zbw_spectrum: need at least 64 samples");
    const double dt = s.t[1] - s.t[0];
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((s.t[k] - s.t[k - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw validation_error("zbw_spectrum: samples must be uniformly spaced");
        }
    }

    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = s.r[k][2];
    const LineFit trend = least_squares_line(s.t, z);
    for (std::size_t k = 0; k < n; ++k) z[k] -= trend.intercept + trend.slope * s.t[k];

    ZbwReport rep;
    const double nd = static_cast<double>(n);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        Complex xk{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * M_PI * static_cast<double>(j * k) / nd;
            xk += z[j] * Complex{std::cos(ang), std::sin(ang)};
        }
        const double amp = 2.0 * std::abs(xk) / nd;
        if (amp > rep.amplitude) {
            rep.amplitude = amp;
            rep.omega = 2.0 * M_PI * static_cast<double>(k) / (nd * dt);
        }
    }
    return rep;
}

namespace {

MatrixField beta_alpha_momentum() {
    return MatrixField{Representation::momentum, false, [](const Vec3& p) {
                           const DiracBasis& b = dirac_basis();
                           return b.beta * alpha_dot(p);
                       }};
}

MatrixField beta_alpha_position() {
    return MatrixField{Representation::position, false, [](const Vec3& r) {
                           const DiracBasis& b = dirac_basis();
                           return b.beta * alpha_dot(r);
                       }};
}

}  // namespace

std::pair<Complex, Complex> beta_alpha_expectations(const SpinorField& f) {
    return {expect_complex(f, beta_alpha_momentum()), expect_complex(f, beta_alpha_position())};
}

EmRateReport em_time_rate(const SpinorField& f, const EMFieldSpec& em, const ModelParams& params) {
    if (std::abs(field_norm(f) - 1.0) > 1e-10) {
        throw validation_error("em_time_rate: field must be normalized");
    }
    EmRateReport rep;
    const int d = f.grid.active_axes();
    rep.base_term = d + 4.0 * expect_spin_orbit(f);

    Complex ba_pi = expect_complex(f, beta_alpha_momentum());
    Complex ba_r = expect_complex(f, beta_alpha_position());

    if (em.A) {
        const MatrixField spin_rxa{Representation::position, true, [&em](const Vec3& r) {
                                       const Vec3 rxa = cross(r, em.A(r));
                                       return (0.5 * HBAR) * sigma_dot(rxa);
                                   }};
        rep.magnetic_term =
            -(4.0 * em.q / (HBAR * HBAR * C_LIGHT)) * expect_complex(f, spin_rxa).real();

        const MatrixField beta_alpha_a{Representation::position, false, [&em](const Vec3& r) {
                                           const DiracBasis& b = dirac_basis();
                                           return b.beta * alpha_dot(em.A(r));
                                       }};
        ba_pi -= (em.q / C_LIGHT) * expect_complex(f, beta_alpha_a);
    }

    const Complex gamma =
        -2.0 * I_UNIT / HBAR *
        (params.tau0 * C_LIGHT * ba_pi - params.m0 * C_LIGHT * ba_r);
    rep.gamma_term = gamma.real();
    rep.rate = rep.base_term + rep.magnetic_term + rep.gamma_term;
    return rep;
}

}  // namespace tempo
