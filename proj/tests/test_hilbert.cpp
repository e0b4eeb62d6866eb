#include "doctest.h"

#include <cmath>

#include "tempo/hilbert.hpp"
#include "tempo/runtime.hpp"

using namespace tempo;

namespace {

// Scalar Gaussian envelope in component 0: exp(-(p_z - pc)^2 / (4 sigma^2)),
// normalized.  Exercises the transform machinery without the packet module.
SpinorField scalar_gaussian(const MomentumGrid& grid, double pc, double sigma) {
    SpinorField f = make_field(grid, Representation::momentum);
    for (std::size_t node = 0; node < grid.total_nodes(); ++node) {
        const Vec3 p = grid.p_at(node);
        double q2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            if (!grid.axis_active(a)) continue;
            const double d = p[static_cast<std::size_t>(a)] - (a == 2 ? pc : 0.0);
            q2 += d * d;
        }
        f.amp[4 * node] = std::exp(-q2 / (4.0 * sigma * sigma));
    }
    normalize(f);
    return f;
}

}  // namespace

TEST_CASE("grid spacings follow the conjugate relation") {
    const MomentumGrid g = make_grid(16, 4.0);
    CHECK(g.dp(0) == doctest::Approx(0.5));
    CHECK(g.dx(0) == doctest::Approx(0.7853981633974483));
    CHECK(g.total_nodes() == 16u * 16u * 16u);
    CHECK(g.active_axes() == 3);
    CHECK(g.cell_volume_p() == doctest::Approx(0.125));
    // dx * dp * n = 2 pi hbar per axis.
    CHECK(g.dx(1) * g.dp(1) * 16 == doctest::Approx(2.0 * M_PI * HBAR));
}

TEST_CASE("grid construction rejects invalid shapes") {
    CHECK_THROWS_AS(make_grid(7, 4.0), validation_error);
    CHECK_THROWS_AS(make_grid(0, 4.0), validation_error);
    CHECK_THROWS_AS(make_grid(16, -1.0), validation_error);
    CHECK_THROWS_AS(make_grid({1, 1, 1}, {0.0, 0.0, 0.0}), validation_error);
    CHECK_THROWS_AS(make_grid({1, 6, 1}, {0.0, 2.0, 0.0}), validation_error);
}

TEST_CASE("frozen axes carry no measure and sit at coordinate zero") {
    const MomentumGrid g = make_grid_1d(8, 2.0);
    CHECK(g.active_axes() == 1);
    CHECK(!g.axis_active(0));
    CHECK(!g.axis_active(1));
    CHECK(g.axis_active(2));
    CHECK(g.total_nodes() == 8u);
    CHECK(g.dp(0) == 0.0);
    CHECK(g.cell_volume_p() == doctest::Approx(0.5));
    for (std::size_t node = 0; node < g.total_nodes(); ++node) {
        CHECK(g.p_at(node)[0] == 0.0);
        CHECK(g.p_at(node)[1] == 0.0);
        CHECK(g.x_at(node)[0] == 0.0);
    }
    // Centered layout: node n/2 sits at the origin.
    CHECK(g.p_at(4)[2] == 0.0);
    CHECK(g.p_at(0)[2] == doctest::Approx(-2.0));
}

TEST_CASE("node indexing round-trips") {
    const MomentumGrid g = make_grid({4, 1, 8}, {1.0, 0.0, 2.0});
    CHECK(g.total_nodes() == 32u);
    for (std::size_t node = 0; node < g.total_nodes(); ++node) {
        const std::array<int, 3> c = g.node_coords(node);
        CHECK(g.node_index(c[0], c[1], c[2]) == node);
    }
}

TEST_CASE("fields cannot be built in the unresolved representation") {
    const MomentumGrid g = make_grid_1d(8, 2.0);
    CHECK_THROWS_AS(make_field(g, Representation::any), validation_error);
}

TEST_CASE("representation switches are unitary round trips") {
    const MomentumGrid g1 = make_grid_1d(256, 2.0);
    const SpinorField f = scalar_gaussian(g1, 0.3, 0.1);
    const SpinorField pos = switch_representation(f, Representation::position);
    CHECK(pos.rep == Representation::position);
    CHECK(std::abs(field_norm(pos) - 1.0) <= 1e-12);
    const SpinorField back = switch_representation(pos, Representation::momentum);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.amp.size(); ++i)
        worst = std::max(worst, std::abs(f.amp[i] - back.amp[i]));
    CHECK(worst <= 1e-12);

    // Same through the 3D path on an anisotropic grid with a frozen axis.
    const MomentumGrid g3 = make_grid({8, 1, 32}, {1.5, 0.0, 2.0});
    SpinorField h = make_field(g3, Representation::momentum);
    Rng rng(5150);
    for (Complex& z : h.amp) z = Complex{rng.normal(), rng.normal()};
    normalize(h);
    const SpinorField hx = switch_representation(h, Representation::position);
    CHECK(std::abs(field_norm(hx) - 1.0) <= 1e-12);
    const SpinorField hb = switch_representation(hx, Representation::momentum);
    worst = 0.0;
    for (std::size_t i = 0; i < h.amp.size(); ++i)
        worst = std::max(worst, std::abs(h.amp[i] - hb.amp[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("inner products are preserved across the transform") {
    const MomentumGrid g = make_grid_1d(128, 2.0);
    const SpinorField a = scalar_gaussian(g, 0.2, 0.15);
    const SpinorField b = scalar_gaussian(g, -0.1, 0.2);
    const Complex ip_mom = inner_product(a, b);
    const Complex ip_pos = inner_product(switch_representation(a, Representation::position),
                                         switch_representation(b, Representation::position));
    CHECK(std::abs(ip_mom - ip_pos) <= 1e-12);
}

TEST_CASE("a single momentum node maps to a flat position magnitude with the right phase") {
    const MomentumGrid g = make_grid_1d(64, 2.0);
    SpinorField f = make_field(g, Representation::momentum);
    // Put all amplitude two nodes above center: p = 2 dp.
    const std::size_t center = 32;
    f.amp[4 * (center + 2)] = 1.0;
    normalize(f);
    const SpinorField pos = switch_representation(f, Representation::position);
    const double expected_mag = std::abs(pos.amp[0]);
    const double p = g.p_at(center + 2)[2];
    for (std::size_t node = 0; node < g.total_nodes(); ++node) {
        CHECK(std::abs(pos.amp[4 * node]) == doctest::Approx(expected_mag).epsilon(1e-10));
        // Forward convention: psi(x) ~ exp(+i p x / hbar).
        const double x = g.x_at(node)[2];
        const Complex phase = pos.amp[4 * node] / pos.amp[4 * center];
        const Complex want = std::exp(I_UNIT * (p * x / HBAR));
        CHECK(std::abs(phase - want) <= 1e-10);
    }
}

TEST_CASE("gaussian width maps to the conjugate width") {
    const MomentumGrid g = make_grid_1d(512, 2.0);
    const double sigma_p = 0.1;
    const SpinorField f = scalar_gaussian(g, 0.0, sigma_p);
    const double var_p = variance(f, momentum_component(2));
    CHECK(std::sqrt(var_p) == doctest::Approx(sigma_p).epsilon(1e-6));
    const SpinorField pos = switch_representation(f, Representation::position);
    const double var_x = variance(pos, position_component(2));
    CHECK(std::sqrt(var_x) == doctest::Approx(HBAR / (2.0 * sigma_p)).epsilon(1e-6));
}

TEST_CASE("canonical commutator expectation on a localized state") {
    const MomentumGrid g = make_grid_1d(512, 2.0);
    const SpinorField f = scalar_gaussian(g, 0.25, 0.1);
    SpinorField pf = f;
    apply_matrix_field(pf, momentum_component(2));
    const SpinorField z_pf = apply_position_component(pf, 2);
    SpinorField zf = apply_position_component(f, 2);
    apply_matrix_field(zf, momentum_component(2));
    const Complex comm = inner_product(f, z_pf) - inner_product(f, zf);
    CHECK(std::abs(comm - I_UNIT * HBAR) <= 1e-6);
}

TEST_CASE("two routes to the time expectation agree") {
    const ModelParams params{1.0, 0.8, 0.0};
    const MomentumGrid g = make_grid({32, 1, 32}, {2.0, 0.0, 2.0});
    SpinorField f = make_field(g, Representation::momentum);
    for (std::size_t node = 0; node < g.total_nodes(); ++node) {
        const Vec3 p = g.p_at(node);
        const double q2 = (p[0] - 0.2) * (p[0] - 0.2) + (p[2] - 0.3) * (p[2] - 0.3);
        const double env = std::exp(-q2 / (4.0 * 0.15 * 0.15));
        // Spread over two components so beta and alpha terms both matter.
        f.amp[4 * node] = env;
        f.amp[4 * node + 2] = 0.4 * env * std::exp(I_UNIT * (0.9 * p[0]));
    }
    normalize(f);

    // Route one: multiply by T(r) in position space.
    const SpinorField pos = switch_representation(f, Representation::position);
    const double direct = expect_observable(pos, time_operator_field(params));

    // Route two: stay in momentum space, alpha_i applied to x_i-weighted
    // fields plus the constant beta part.
    const DiracBasis& b = dirac_basis();
    const std::array<SpinorField, 3> w = position_weighted_fields(f);
    double via_weights = 0.0;
    for (int i = 0; i < 3; ++i) {
        SpinorField aw = w[static_cast<std::size_t>(i)];
        apply_matrix_field(aw, constant_observable(b.alpha[static_cast<std::size_t>(i)]));
        via_weights += inner_product(f, aw).real() / C_LIGHT;
    }
    via_weights += params.tau0 * expect_complex(f, constant_observable(b.beta)).real();

    CHECK(std::abs(direct - via_weights) <= 1e-7);
}

TEST_CASE("expectation guards: normalization, hermiticity, grid compatibility") {
    const MomentumGrid g = make_grid_1d(64, 2.0);
    SpinorField f = scalar_gaussian(g, 0.0, 0.2);
    SpinorField big = f;
    for (Complex& z : big.amp) z *= 2.0;
    CHECK_THROWS_AS(expect_observable(big, momentum_component(2)), validation_error);

    const DiracBasis& b = dirac_basis();
    CHECK_THROWS_AS(expect_observable(f, constant_observable(b.beta * b.alpha[2])),
                    validation_error);

    const MomentumGrid g2 = make_grid_1d(32, 2.0);
    const SpinorField other = scalar_gaussian(g2, 0.0, 0.2);
    CHECK_THROWS_AS(inner_product(f, other), validation_error);

    const SpinorField pos = switch_representation(f, Representation::position);
    CHECK_THROWS_AS(inner_product(f, pos), validation_error);

    // A position-tagged observable cannot be applied node-locally in momentum.
    CHECK_THROWS_AS(apply_matrix_field(f, position_component(2)), validation_error);
}

TEST_CASE("variance is clipped at zero and vanishes on eigenstates") {
    const MomentumGrid g = make_grid_1d(64, 2.0);
    SpinorField f = make_field(g, Representation::momentum);
    f.amp[4 * 20] = 1.0;  // single node: momentum eigenstate
    normalize(f);
    CHECK(variance(f, momentum_component(2)) == doctest::Approx(0.0));
    CHECK(variance(f, momentum_component(2)) >= 0.0);
}

TEST_CASE("localization detector distinguishes packets from flat fields") {
    const MomentumGrid g = make_grid_1d(256, 2.0);
    CHECK(is_localized(scalar_gaussian(g, 0.0, 0.05)));
    SpinorField flat = make_field(g, Representation::momentum);
    for (std::size_t node = 0; node < g.total_nodes(); ++node) flat.amp[4 * node] = 1.0;
    normalize(flat);
    CHECK(!is_localized(flat));
    // A packet pushed against the grid edge is not localized either.
    CHECK(!is_localized(scalar_gaussian(g, 1.95, 0.1)));
}

TEST_CASE("position weighting on frozen axes gives the zero field") {
    const MomentumGrid g = make_grid_1d(64, 2.0);
    const SpinorField f = scalar_gaussian(g, 0.1, 0.2);
    const SpinorField wx = apply_position_component(f, 0);
    double total = 0.0;
    for (const Complex& z : wx.amp) total += std::abs(z);
    CHECK(total == 0.0);

    // And the batch version agrees with the single-axis one on active axes.
    const std::array<SpinorField, 3> w = position_weighted_fields(f);
    const SpinorField wz = apply_position_component(f, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < wz.amp.size(); ++i)
        worst = std::max(worst, std::abs(w[2].amp[i] - wz.amp[i]));
    CHECK(worst <= 1e-13);
}

TEST_CASE("normalize rejects the zero field") {
    const MomentumGrid g = make_grid_1d(8, 2.0);
    SpinorField f = make_field(g, Representation::momentum);
    CHECK_THROWS_AS(normalize(f), validation_error);
}
