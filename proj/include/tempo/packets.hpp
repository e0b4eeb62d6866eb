#pragma once

#include "tempo/hilbert.hpp"
#include "tempo/operators.hpp"

namespace tempo {

enum class PacketBranch { plus, minus, mixed };

// How the four-spinor at each node is built from the two-spinor chi
// (eigenvector of sigma.spin_axis with eigenvalue spin_sign):
//   projected  Lambda_branch(p) applied to (chi, 0) or (0, chi), renormalized
//              node-wise; exact branch purity.
//   rest       constant (chi, 0) / (0, chi) blocks, momentum-independent;
//              makes <beta alpha.p> and <beta alpha.r> vanish identically
//              (the definite-spin realization).
//   alpha      eigenspinor of alpha.spin_axis with eigenvalue spin_sign,
//              (chi, spin_sign * chi)/sqrt(2); used by the shift generator
//              checks.
enum class SpinStructure { projected, rest, alpha };

struct PacketSpec {
    Vec3 p_center{0.0, 0.0, 0.0};
    Vec3 sigma_p{0.1, 0.1, 0.1};
    Vec3 r_center{0.0, 0.0, 0.0};
    PacketBranch branch = PacketBranch::plus;
    double mix_weight = 0.5;  // weight of the minus branch when branch == mixed
    Vec3 spin_axis{0.0, 0.0, 1.0};
    int spin_sign = +1;
    SpinStructure structure = SpinStructure::projected;
};

// Two-spinor eigenvector of sigma.axis with the given sign (+1 or -1).
std::array<Complex, 2> pauli_eigenvector(const Vec3& axis, int sign);

// Normalized four-spinor for one momentum node under the given spec.
Spinor4 packet_spinor(const PacketSpec& spec, const Vec3& p, const ModelParams& params);

// Gaussian packet: envelope exp(-(p-P)^2 / 4 sigma^2) * exp(-i p.R / hbar)
// over the active axes, times the node spinor; normalized.
SpinorField build_gaussian(const MomentumGrid& grid, const PacketSpec& spec,
                           const ModelParams& params);

// <Lambda_plus>: 1 for a pure positive-branch field, 0 for pure negative.
// The massless zero-energy node counts half to each branch.
double branch_purity(const SpinorField& f, const ModelParams& params);

}  // namespace tempo
