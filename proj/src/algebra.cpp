#include "tempo/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace tempo {

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Matrix4 operator+(const Matrix4& x, const Matrix4& y) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Matrix4 operator-(const Matrix4& x, const Matrix4& y) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Matrix4 operator*(const Matrix4& x, const Matrix4& y) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            const Complex xik = x(i, k);
            if (xik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

Matrix4 operator*(Complex s, const Matrix4& x) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
    return r;
}

Matrix4 operator*(double s, const Matrix4& x) {
    return Complex{s, 0.0} * x;
}

Spinor4 operator*(const Matrix4& m, const Spinor4& v) {
    Spinor4 r{};
    for (int i = 0; i < 4; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < 4; ++j) acc += m(i, j) * v[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

Matrix4 adjoint(const Matrix4& m) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

Complex trace(const Matrix4& m) {
    return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3);
}

double frobenius_norm(const Matrix4& m) {
    double s = 0.0;
    for (const Complex& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const Matrix4& m) {
    double s = 0.0;
    for (const Complex& z : m.a) s = std::max(s, std::abs(z));
    return s;
}

bool is_hermitian(const Matrix4& m, double tol) {
    return max_abs(m - adjoint(m)) <= tol;
}

Complex sdot(const Spinor4& a, const Spinor4& b) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double snorm(const Spinor4& a) {
    return std::sqrt(sdot(a, a).real());
}

Spinor4 snormalize(const Spinor4& a) {
    double n = snorm(a);
    if (n == 0.0) return a;
    Spinor4 r = a;
    for (Complex& z : r) z /= n;
    return r;
}

namespace {

DiracBasis build_basis() {
    DiracBasis b;
    b.identity = Matrix4::identity();

    b.beta(0, 0) = 1.0;
    b.beta(1, 1) = 1.0;
    b.beta(2, 2) = -1.0;
    b.beta(3, 3) = -1.0;

    // Pauli blocks
    const Complex one{1.0, 0.0};
    Matrix4 sx, sy, sz;
    sx(0, 1) = one;
    sx(1, 0) = one;
    sy(0, 1) = -I_UNIT;
    sy(1, 0) = I_UNIT;
    sz(0, 0) = one;
    sz(1, 1) = -one;
    const std::array<Matrix4, 3> pauli{sx, sy, sz};

    for (int k = 0; k < 3; ++k) {
        Matrix4 alpha, big;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const Complex p = pauli[static_cast<std::size_t>(k)](i, j);
                alpha(i, j + 2) = p;
                alpha(i + 2, j) = p;
                big(i, j) = p;
                big(i + 2, j + 2) = p;
            }
        }
        b.alpha[static_cast<std::size_t>(k)] = alpha;
        b.sigma_big[static_cast<std::size_t>(k)] = big;
    }
    return b;
}

}  // namespace

const DiracBasis& dirac_basis() {
    static const DiracBasis basis = build_basis();
    return basis;
}

Matrix4 alpha_dot(const Vec3& v) {
    const DiracBasis& b = dirac_basis();
    return v[0] * b.alpha[0] + v[1] * b.alpha[1] + v[2] * b.alpha[2];
}

Matrix4 sigma_dot(const Vec3& v) {
    const DiracBasis& b = dirac_basis();
    return v[0] * b.sigma_big[0] + v[1] * b.sigma_big[1] + v[2] * b.sigma_big[2];
}

Matrix4 bracket(const Matrix4& x, const Matrix4& y, BracketKind kind) {
    if (kind == BracketKind::commutator) return x * y - y * x;
    return x * y + y * x;
}

namespace {

// One complex Jacobi rotation zeroing m(p,q).  The pivot is factored as a
// phase times a real Givens rotation; both are accumulated into v.
void jacobi_rotate(Matrix4& m, Matrix4& v, int p, int q) {
    const Complex apq = m(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;

    const Complex phase = apq / abs_apq;
    const double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * abs_apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Columns transform with U = P * G where P = diag(1, conj(phase)) makes
    // the pivot real and G is the real rotation in the (p,q) plane that then
    // zeroes it; m <- U^dagger m U.
    for (int r = 0; r < 4; ++r) {
        const Complex mrp = m(r, p);
        const Complex mrq = m(r, q) * std::conj(phase);
        m(r, p) = c * mrp - s * mrq;
        m(r, q) = s * mrp + c * mrq;
    }
    for (int cidx = 0; cidx < 4; ++cidx) {
        const Complex mpc = m(p, cidx);
        const Complex mqc = phase * m(q, cidx);
        m(p, cidx) = c * mpc - s * mqc;
        m(q, cidx) = s * mpc + c * mqc;
    }
    for (int r = 0; r < 4; ++r) {
        const Complex vrp = v(r, p);
        const Complex vrq = v(r, q) * std::conj(phase);
        v(r, p) = c * vrp - s * vrq;
        v(r, q) = s * vrp + c * vrq;
    }

    // Clean the pivot pair exactly.
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = Complex{m(p, p).real(), 0.0};
    m(q, q) = Complex{m(q, q).real(), 0.0};
}

double offdiag_norm(const Matrix4& m) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

Eigensystem4 hermitian_eigensystem(const Matrix4& m) {
    const double scale = std::max(max_abs(m), 1.0);
    if (!is_hermitian(m, 1e-12 * scale)) {
        throw validation_error("hermitian_eigensystem: matrix is not Hermitian");
    }

    // Exact symmetrization removes the inert rounding-level defect.
    Matrix4 w = 0.5 * (m + adjoint(m));
    Matrix4 v = Matrix4::identity();

    const double tol = 1e-14 * scale;
    for (int sweep = 0; sweep < 100 && offdiag_norm(w) > tol; ++sweep) {
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) jacobi_rotate(w, v, p, q);
    }

    Eigensystem4 out;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> vals{};
    for (int i = 0; i < 4; ++i) vals[static_cast<std::size_t>(i)] = w(i, i).real();
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return vals[static_cast<std::size_t>(x)] < vals[static_cast<std::size_t>(y)];
    });

    for (int k = 0; k < 4; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = vals[static_cast<std::size_t>(src)];

        // Fixed phase: make the largest-magnitude component real positive.
        int big = 0;
        double big_mag = 0.0;
        for (int r = 0; r < 4; ++r) {
            const double mag = std::abs(v(r, src));
            if (mag > big_mag + 1e-15) {
                big_mag = mag;
                big = r;
            }
        }
        Complex ph{1.0, 0.0};
        if (big_mag > 0.0) ph = std::conj(v(big, src)) / big_mag;
        for (int r = 0; r < 4; ++r) out.vectors(r, k) = ph * v(r, src);
    }
    return out;
}

Matrix4 unitary_exponential(const Matrix4& m, double s) {
    const Eigensystem4 es = hermitian_eigensystem(m);
    Matrix4 r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex acc{0.0, 0.0};
            for (int k = 0; k < 4; ++k) {
                const Complex ph = std::exp(I_UNIT * (s * es.values[static_cast<std::size_t>(k)]));
                acc += es.vectors(i, k) * ph * std::conj(es.vectors(j, k));
            }
            r(i, j) = acc;
        }
    }
    return r;
}

}  // namespace tempo
