#include "doctest.h"

#include <cmath>

#include "tempo/algebra.hpp"
#include "tempo/runtime.hpp"

using namespace tempo;

namespace {

Matrix4 random_hermitian(Rng& rng) {
    Matrix4 m;
    for (int r = 0; r < 4; ++r) {
        m(r, r) = rng.normal();
        for (int c = r + 1; c < 4; ++c) {
            const Complex v{rng.normal(), rng.normal()};
            m(r, c) = v;
            m(c, r) = std::conj(v);
        }
    }
    return m;
}

Complex det3(const Matrix4& m, int skip_r, int skip_c) {
    Complex sub[3][3];
    int rr = 0;
    for (int r = 0; r < 4; ++r) {
        if (r == skip_r) continue;
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
            if (c == skip_c) continue;
            sub[rr][cc++] = m(r, c);
        }
        ++rr;
    }
    return sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
           sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
           sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
}

Complex det4(const Matrix4& m) {
    Complex acc{0.0, 0.0};
    double sign = 1.0;
    for (int c = 0; c < 4; ++c) {
        acc += sign * m(0, c) * det3(m, 0, c);
        sign = -sign;
    }
    return acc;
}

Matrix4 outer(const Eigensystem4& es) {
    Matrix4 rec;
    for (int k = 0; k < 4; ++k)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                rec(r, c) += es.values[static_cast<std::size_t>(k)] * es.vectors(r, k) *
                             std::conj(es.vectors(c, k));
    return rec;
}

}  // namespace

TEST_CASE("basis matrices are hermitian, traceless, and close the Clifford algebra") {
    const DiracBasis& b = dirac_basis();
    const std::array<Matrix4, 4> gens = {b.alpha[0], b.alpha[1], b.alpha[2], b.beta};
    for (const Matrix4& g : gens) {
        CHECK(max_abs(g - adjoint(g)) == 0.0);
        CHECK(std::abs(trace(g)) == 0.0);
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Matrix4 anti =
                bracket(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)],
                        BracketKind::anticommutator);
            const Matrix4 want = (i == j) ? 2.0 * Matrix4::identity() : Matrix4::zero();
            CHECK(max_abs(anti - want) <= 1e-13);
        }
    }
}

TEST_CASE("spin matrices are the antisymmetrized velocity products") {
    const DiracBasis& b = dirac_basis();
    // Sigma_k = -(i/2) eps_kij alpha_i alpha_j
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        const Matrix4 lhs = (-0.5 * I_UNIT) *
                            (b.alpha[static_cast<std::size_t>(i)] *
                                 b.alpha[static_cast<std::size_t>(j)] -
                             b.alpha[static_cast<std::size_t>(j)] *
                                 b.alpha[static_cast<std::size_t>(i)]);
        CHECK(max_abs(lhs - b.sigma_big[static_cast<std::size_t>(k)]) <= 1e-14);
    }
    // su(2): [Sigma_i, Sigma_j] = 2i eps_ijk Sigma_k, Sigma_i^2 = 1
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        const Matrix4 comm = bracket(b.sigma_big[static_cast<std::size_t>(i)],
                                     b.sigma_big[static_cast<std::size_t>(j)],
                                     BracketKind::commutator);
        CHECK(max_abs(comm - (2.0 * I_UNIT) * b.sigma_big[static_cast<std::size_t>(k)]) <= 1e-14);
        CHECK(max_abs(b.sigma_big[static_cast<std::size_t>(k)] *
                          b.sigma_big[static_cast<std::size_t>(k)] -
                      Matrix4::identity()) <= 1e-14);
    }
}

TEST_CASE("commutator and anticommutator brackets evaluate correctly") {
    const DiracBasis& b = dirac_basis();
    // [alpha_z, beta] = 2 alpha_z beta because they anticommute.
    const Matrix4 comm = bracket(b.alpha[2], b.beta, BracketKind::commutator);
    CHECK(max_abs(comm - 2.0 * (b.alpha[2] * b.beta)) <= 1e-14);
    // [beta, beta] = 0, {beta, beta} = 2.
    CHECK(max_abs(bracket(b.beta, b.beta, BracketKind::commutator)) == 0.0);
    CHECK(max_abs(bracket(b.beta, b.beta, BracketKind::anticommutator) -
                  2.0 * Matrix4::identity()) == 0.0);
}

TEST_CASE("directional contractions are linear in the direction") {
    const Vec3 n{0.3, -1.2, 0.4};
    const DiracBasis& b = dirac_basis();
    Matrix4 want = Matrix4::zero();
    for (int i = 0; i < 3; ++i)
        want = want + n[static_cast<std::size_t>(i)] * b.alpha[static_cast<std::size_t>(i)];
    CHECK(max_abs(alpha_dot(n) - want) == 0.0);
    // (alpha.n)^2 = |n|^2 and (sigma.n)^2 = |n|^2.
    const double n2 = dot(n, n);
    CHECK(max_abs(alpha_dot(n) * alpha_dot(n) - n2 * Matrix4::identity()) <= 1e-14);
    CHECK(max_abs(sigma_dot(n) * sigma_dot(n) - n2 * Matrix4::identity()) <= 1e-14);
}

TEST_CASE("matrix helpers: adjoint, trace, norms") {
    Matrix4 m;
    m(0, 1) = Complex{1.0, 2.0};
    m(3, 3) = Complex{-4.0, 0.5};
    const Matrix4 a = adjoint(m);
    CHECK(a(1, 0) == Complex{1.0, -2.0});
    CHECK(a(3, 3) == Complex{-4.0, -0.5});
    CHECK(trace(m) == Complex{-4.0, 0.5});
    CHECK(max_abs(m) == doctest::Approx(std::sqrt(16.25)));
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(5.0 + 16.25)));
    CHECK(is_hermitian(Matrix4::identity(), 1e-15));
    CHECK(!is_hermitian(m, 1e-6));
}

TEST_CASE("spinor inner product conjugates the left argument") {
    Spinor4 a{Complex{0.0, 1.0}, 0.0, 0.0, 0.0};
    Spinor4 b{Complex{1.0, 0.0}, 0.0, 0.0, 0.0};
    CHECK(sdot(a, b) == Complex{0.0, -1.0});
    CHECK(snorm(a) == doctest::Approx(1.0));
    Spinor4 c{3.0, 0.0, 4.0, 0.0};
    const Spinor4 u = snormalize(c);
    CHECK(snorm(u) == doctest::Approx(1.0));
    CHECK(u[0].real() == doctest::Approx(0.6));
    CHECK(u[2].real() == doctest::Approx(0.8));
}

TEST_CASE("eigensystem of a doubly degenerate flat matrix") {
    const DiracBasis& b = dirac_basis();
    const Eigensystem4 es = hermitian_eigensystem(b.beta);
    CHECK(es.values[0] == doctest::Approx(-1.0));
    CHECK(es.values[1] == doctest::Approx(-1.0));
    CHECK(es.values[2] == doctest::Approx(1.0));
    CHECK(es.values[3] == doctest::Approx(1.0));
    // Columns orthonormal even inside degenerate blocks.
    const Matrix4 gram = adjoint(es.vectors) * es.vectors;
    CHECK(max_abs(gram - Matrix4::identity()) <= 1e-13);
}

TEST_CASE("eigenvalues come out ascending and reproduce the matrix") {
    Rng rng(991);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix4 m = random_hermitian(rng);
        const Eigensystem4 es = hermitian_eigensystem(m);
        for (int k = 0; k + 1 < 4; ++k)
            CHECK(es.values[static_cast<std::size_t>(k)] <=
                  es.values[static_cast<std::size_t>(k + 1)]);
        const double scale = std::max(1.0, max_abs(m));
        CHECK(max_abs(outer(es) - m) / scale <= 1e-12);
        const Matrix4 gram = adjoint(es.vectors) * es.vectors;
        CHECK(max_abs(gram - Matrix4::identity()) <= 1e-12);
    }
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial") {
    // Independent cross-check: det(M - lambda I) = 0 evaluated by cofactor
    // expansion, which never touches the Jacobi path.
    Rng rng(1235);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix4 m = random_hermitian(rng);
        const Eigensystem4 es = hermitian_eigensystem(m);
        const double scale = std::max(1.0, max_abs(m));
        for (int k = 0; k < 4; ++k) {
            const Matrix4 shifted =
                m - es.values[static_cast<std::size_t>(k)] * Matrix4::identity();
            CHECK(std::abs(det4(shifted)) / (scale * scale * scale * scale) <= 1e-10);
        }
    }
}

TEST_CASE("degenerate eigenvectors span the right subspace") {
    // alpha.p + beta m at p = 0.75 z has eigenvalues -+1.25, each twice.
    const DiracBasis& b = dirac_basis();
    const Matrix4 h = 0.75 * b.alpha[2] + 1.0 * b.beta;
    const Eigensystem4 es = hermitian_eigensystem(h);
    CHECK(es.values[0] == doctest::Approx(-1.25));
    CHECK(es.values[3] == doctest::Approx(1.25));
    // Project h onto each eigenvector: h v = lambda v regardless of the basis
    // chosen inside the degenerate pair.
    for (int k = 0; k < 4; ++k) {
        Spinor4 v{es.vectors(0, k), es.vectors(1, k), es.vectors(2, k), es.vectors(3, k)};
        const Spinor4 hv = h * v;
        double resid = 0.0;
        for (int i = 0; i < 4; ++i)
            resid += std::norm(hv[static_cast<std::size_t>(i)] -
                               es.values[static_cast<std::size_t>(k)] *
                                   v[static_cast<std::size_t>(i)]);
        CHECK(std::sqrt(resid) <= 1e-13);
    }
}

TEST_CASE("non-hermitian input is rejected") {
    Matrix4 m;
    m(0, 1) = Complex{1.0, 0.0};
    m(1, 0) = Complex{2.0, 0.0};
    CHECK_THROWS_AS(hermitian_eigensystem(m), validation_error);
}

TEST_CASE("matrix exponential is unitary and has the right special values") {
    const DiracBasis& b = dirac_basis();
    // exp(i pi beta) = cos(pi) I + i sin(pi) beta = -I.
    const Matrix4 u = unitary_exponential(b.beta, M_PI);
    CHECK(max_abs(u + Matrix4::identity()) <= 1e-13);
    CHECK(max_abs(unitary_exponential(b.beta, 0.0) - Matrix4::identity()) <= 1e-14);

    Rng rng(7);
    const Matrix4 m = random_hermitian(rng);
    const Matrix4 a = unitary_exponential(m, 0.37);
    const Matrix4 inv = unitary_exponential(m, -0.37);
    CHECK(max_abs(a * inv - Matrix4::identity()) <= 1e-12);
    CHECK(max_abs(adjoint(a) * a - Matrix4::identity()) <= 1e-12);
}
