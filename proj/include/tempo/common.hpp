#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace tempo {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr Complex I_UNIT{0.0, 1.0};

// Natural units throughout: hbar = c = 1.  Masses, momenta and energies share
// one scale; times and lengths share the inverse scale.
inline constexpr double HBAR = 1.0;
inline constexpr double C_LIGHT = 1.0;

// Raised on malformed user input: bad config values, non-Hermitian matrices
// handed to the Hermitian solver, packets that do not fit their grid.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double norm3(const Vec3& a) {
    return std::sqrt(dot(a, a));
}

}  // namespace tempo
