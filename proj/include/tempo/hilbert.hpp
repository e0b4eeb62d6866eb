#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tempo/algebra.hpp"
#include "tempo/common.hpp"
#include "tempo/operators.hpp"

namespace tempo {

// Uniform periodic momentum grid.  Axis a holds n[a] nodes at
// p = -p_max[a] + j * dp with dp = 2 p_max[a] / n[a]; n[a] == 1 freezes the
// axis (its coordinate is identically zero and it carries no cell measure).
// The conjugate position grid has spacing dx = 2 pi hbar / (n dp) and the
// same centered layout.
struct MomentumGrid {
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> p_max{0.0, 0.0, 0.0};

    bool axis_active(int a) const { return n[static_cast<std::size_t>(a)] > 1; }
    int active_axes() const;
    std::size_t total_nodes() const;

    double dp(int a) const;
    double dx(int a) const;
    double cell_volume_p() const;
    double cell_volume_x() const;

    std::size_t node_index(int ix, int iy, int iz) const;
    std::array<int, 3> node_coords(std::size_t node) const;
    Vec3 p_at(std::size_t node) const;
    Vec3 x_at(std::size_t node) const;

    bool operator==(const MomentumGrid& o) const { return n == o.n && p_max == o.p_max; }
};

// Cubic grid, all three axes active.
MomentumGrid make_grid(int n, double p_max);
// Per-axis grid; n[a] == 1 freezes axis a (p_max[a] is then ignored).
MomentumGrid make_grid(const std::array<int, 3>& n, const std::array<double, 3>& p_max);
// One active axis (z); x and y frozen.
MomentumGrid make_grid_1d(int n, double p_max);

// Four-component amplitude on a grid.  Storage is node-major: component c of
// node k sits at amp[4 * k + c].  Normalization is in the continuum sense:
// sum over nodes of |psi|^2 times the cell volume of the representation.
struct SpinorField {
    MomentumGrid grid;
    Representation rep = Representation::momentum;
    std::vector<Complex> amp;
};

SpinorField make_field(const MomentumGrid& grid, Representation rep);

// <a|b>; both fields must share grid and representation.
Complex inner_product(const SpinorField& a, const SpinorField& b);
double field_norm(const SpinorField& f);
void normalize(SpinorField& f);

// Unitary centered transform between representations.  Frozen axes pass
// through.  Round trips reproduce the input to rounding error.
SpinorField switch_representation(const SpinorField& f, Representation target);

// In-place node-local multiply; the observable's representation must be `any`
// or match the field's.
void apply_matrix_field(SpinorField& f, const MatrixField& obs);

// <psi| M |psi>, switching representation internally when needed.  No
// normalization requirement.
Complex expect_complex(const SpinorField& f, const MatrixField& obs);

// Real expectation of a Hermitian observable on a normalized field.  Throws
// if the observable is not flagged Hermitian or the norm is off by > 1e-10.
double expect_observable(const SpinorField& f, const MatrixField& obs);

// <M^2> - <M>^2 for a node-local Hermitian observable, clipped at zero.
double variance(const SpinorField& f, const MatrixField& obs);

// True when every boundary node's spinor magnitude is at most rel_tol times
// the peak magnitude, in the field's current representation.
bool is_localized(const SpinorField& f, double rel_tol = 1e-10);

// x_axis-weighted copy of a momentum-representation field:
// (x_hat psi)(p) = i hbar d psi / d p_axis, computed spectrally.  Frozen axes
// give the zero field.
SpinorField apply_position_component(const SpinorField& f, int axis);

// All three x_hat_i psi at once, sharing one transform to position space.
std::array<SpinorField, 3> position_weighted_fields(const SpinorField& f);

}  // namespace tempo
