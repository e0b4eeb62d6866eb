#pragma once

#include <array>
#include <cstddef>

#include "tempo/common.hpp"

namespace tempo {

// Dense 4x4 complex matrix, row-major.  Small enough that everything is done
// by value; no allocation anywhere in this module.
struct Matrix4 {
    std::array<Complex, 16> a{};

    Complex& operator()(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& operator()(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

    static Matrix4 zero() { return Matrix4{}; }
    static Matrix4 identity();
};

using Spinor4 = std::array<Complex, 4>;

Matrix4 operator+(const Matrix4& x, const Matrix4& y);
Matrix4 operator-(const Matrix4& x, const Matrix4& y);
Matrix4 operator*(const Matrix4& x, const Matrix4& y);
Matrix4 operator*(Complex s, const Matrix4& x);
Matrix4 operator*(double s, const Matrix4& x);
Spinor4 operator*(const Matrix4& m, const Spinor4& v);

Matrix4 adjoint(const Matrix4& m);
Complex trace(const Matrix4& m);
double frobenius_norm(const Matrix4& m);
double max_abs(const Matrix4& m);
bool is_hermitian(const Matrix4& m, double tol);

// <a|b> with the conjugate on the left argument.
Complex sdot(const Spinor4& a, const Spinor4& b);
double snorm(const Spinor4& a);
Spinor4 snormalize(const Spinor4& a);

// Dirac matrices in the standard block representation:
//   beta  = diag(1, 1, -1, -1)
//   alpha_i = [[0, sigma_i], [sigma_i, 0]]
//   sigma_big_i = diag(sigma_i, sigma_i)   (spin, in units of hbar/2)
struct DiracBasis {
    Matrix4 identity;
    Matrix4 beta;
    std::array<Matrix4, 3> alpha;
    std::array<Matrix4, 3> sigma_big;
};

const DiracBasis& dirac_basis();

// sum_i v_i * alpha_i
Matrix4 alpha_dot(const Vec3& v);
// sum_i v_i * sigma_big_i
Matrix4 sigma_dot(const Vec3& v);

enum class BracketKind { commutator, anticommutator };

Matrix4 bracket(const Matrix4& x, const Matrix4& y, BracketKind kind);

// Eigenvalues ascending; vectors(:,k) is the unit eigenvector for values[k],
// with a fixed phase (largest-magnitude component made real positive) so
// results are reproducible.
struct Eigensystem4 {
    std::array<double, 4> values{};
    Matrix4 vectors;
};

// Cyclic complex Jacobi.  Rejects matrices whose Hermitian defect exceeds
// 1e-12 relative to their magnitude.
Eigensystem4 hermitian_eigensystem(const Matrix4& m);

// exp(i * s * m) for Hermitian m, assembled from the eigensystem.
Matrix4 unitary_exponential(const Matrix4& m, double s);

}  // namespace tempo
