#include "tempo/hilbert.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "tempo/runtime.hpp"

namespace tempo {

namespace {

bool is_pow2(int n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

void validate_grid(const MomentumGrid& g) {
    int active = 0;
    for (int a = 0; a < 3; ++a) {
        const int n = g.n[static_cast<std::size_t>(a)];
        if (!is_pow2(n)) {
            throw validation_error("grid: node count per axis must be a power of two, got " +
                                   std::to_string(n));
        }
        if (n > 1) {
            ++active;
            if (!(g.p_max[static_cast<std::size_t>(a)] > 0.0)) {
                throw validation_error("grid: active axis needs p_max > 0");
            }
        }
    }
    if (active == 0) throw validation_error("grid: at least one axis must be active");
}

}  // namespace

int MomentumGrid::active_axes() const {
    int c = 0;
    for (int a = 0; a < 3; ++a)
        if (axis_active(a)) ++c;
    return c;
}

std::size_t MomentumGrid::total_nodes() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
}

double MomentumGrid::dp(int a) const {
    if (!axis_active(a)) return 0.0;
    return 2.0 * p_max[static_cast<std::size_t>(a)] / n[static_cast<std::size_t>(a)];
}

double MomentumGrid::dx(int a) const {
    if (!axis_active(a)) return 0.0;
    return 2.0 * M_PI * HBAR / (n[static_cast<std::size_t>(a)] * dp(a));
}

double MomentumGrid::cell_volume_p() const {
    double v = 1.0;
    for (int a = 0; a < 3; ++a)
        if (axis_active(a)) v *= dp(a);
    return v;
}

double MomentumGrid::cell_volume_x() const {
    double v = 1.0;
    for (int a = 0; a < 3; ++a)
        if (axis_active(a)) v *= dx(a);
    return v;
}

std::size_t MomentumGrid::node_index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n[1] + static_cast<std::size_t>(iy)) * n[2] +
           static_cast<std::size_t>(iz);
}

std::array<int, 3> MomentumGrid::node_coords(std::size_t node) const {
    const int iz = static_cast<int>(node % static_cast<std::size_t>(n[2]));
    node /= static_cast<std::size_t>(n[2]);
    const int iy = static_cast<int>(node % static_cast<std::size_t>(n[1]));
    const int ix = static_cast<int>(node / static_cast<std::size_t>(n[1]));
    return {ix, iy, iz};
}

Vec3 MomentumGrid::p_at(std::size_t node) const {
    const std::array<int, 3> c = node_coords(node);
    Vec3 p{0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        if (!axis_active(a)) continue;
        p[static_cast<std::size_t>(a)] =
            (c[static_cast<std::size_t>(a)] - n[static_cast<std::size_t>(a)] / 2) * dp(a);
    }
    return p;
}

Vec3 MomentumGrid::x_at(std::size_t node) const {
    const std::array<int, 3> c = node_coords(node);
    Vec3 x{0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        if (!axis_active(a)) continue;
        x[static_cast<std::size_t>(a)] =
            (c[static_cast<std::size_t>(a)] - n[static_cast<std::size_t>(a)] / 2) * dx(a);
    }
    return x;
}

MomentumGrid make_grid(int n, double p_max) {
    MomentumGrid g;
    g.n = {n, n, n};
    g.p_max = {p_max, p_max, p_max};
    if (n < 2) throw validation_error("grid: cubic grid needs n >= 2");
    validate_grid(g);
    return g;
}

MomentumGrid make_grid(const std::array<int, 3>& n, const std::array<double, 3>& p_max) {
    MomentumGrid g;
    g.n = n;
    g.p_max = p_max;
    for (int a = 0; a < 3; ++a)
        if (g.n[static_cast<std::size_t>(a)] == 1) g.p_max[static_cast<std::size_t>(a)] = 0.0;
    validate_grid(g);
    return g;
}

MomentumGrid make_grid_1d(int n, double p_max) {
    return make_grid({1, 1, n}, {0.0, 0.0, p_max});
}

SpinorField make_field(const MomentumGrid& grid, Representation rep) {
    if (rep == Representation::any) {
        throw validation_error("field: representation must be momentum or position");
    }
    validate_grid(grid);
    SpinorField f;
    f.grid = grid;
    f.rep = rep;
    f.amp.assign(4 * grid.total_nodes(), Complex{0.0, 0.0});
    return f;
}

namespace {

double cell_volume(const SpinorField& f) {
    return f.rep == Representation::momentum ? f.grid.cell_volume_p() : f.grid.cell_volume_x();
}

Vec3 coord_at(const SpinorField& f, std::size_t node) {
    return f.rep == Representation::momentum ? f.grid.p_at(node) : f.grid.x_at(node);
}

int node_parity(const MomentumGrid& g, std::size_t node) {
    const std::array<int, 3> c = g.node_coords(node);
    return (c[0] + c[1] + c[2]) & 1;
}

}  // namespace

Complex inner_product(const SpinorField& a, const SpinorField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep) {
        throw validation_error("inner_product: fields must share grid and representation");
    }
    const std::size_t nn = a.grid.total_nodes();
    const Complex* pa = a.amp.data();
    const Complex* pb = b.amp.data();
    Complex s = parallel_reduce(nn, [pa, pb](std::size_t k) {
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < 4; ++c) acc += std::conj(pa[4 * k + c]) * pb[4 * k + c];
        return acc;
    });
    return s * cell_volume(a);
}

double field_norm(const SpinorField& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

void normalize(SpinorField& f) {
    const double n = field_norm(f);
    if (n == 0.0) throw validation_error("normalize: zero field");
    const double s = 1.0 / n;
    parallel_for(f.amp.size(), [&f, s](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) f.amp[i] *= s;
    });
}

namespace {

// Plans are cached per node-count triple; the centered layout and cell sizes
// only enter through the sign and scale passes around the raw transforms.
struct PlanSet {
    std::array<fftw_plan, 3> to_pos{nullptr, nullptr, nullptr};
    std::array<fftw_plan, 3> to_mom{nullptr, nullptr, nullptr};

    ~PlanSet() {
        for (fftw_plan p : to_pos)
            if (p) fftw_destroy_plan(p);
        for (fftw_plan p : to_mom)
            if (p) fftw_destroy_plan(p);
    }
};

std::mutex g_plan_mutex;

PlanSet& plans_for(const MomentumGrid& g) {
    static std::map<std::array<int, 3>, std::unique_ptr<PlanSet>> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(g.n);
    if (it != cache.end()) return *it->second;

    auto ps = std::make_unique<PlanSet>();
    fftw_complex* scratch = fftw_alloc_complex(4 * g.total_nodes());
    const std::array<int, 3> stride{g.n[1] * g.n[2] * 4, g.n[2] * 4, 4};
    for (int a = 0; a < 3; ++a) {
        if (!g.axis_active(a)) continue;
        fftw_iodim dim{g.n[static_cast<std::size_t>(a)], stride[static_cast<std::size_t>(a)],
                       stride[static_cast<std::size_t>(a)]};
        fftw_iodim hm[3];
        int hr = 0;
        for (int b = 0; b < 3; ++b) {
            if (b == a) continue;
            hm[hr++] = fftw_iodim{g.n[static_cast<std::size_t>(b)],
                                  stride[static_cast<std::size_t>(b)],
                                  stride[static_cast<std::size_t>(b)]};
        }
        hm[hr++] = fftw_iodim{4, 1, 1};
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        ps->to_pos[static_cast<std::size_t>(a)] =
            fftw_plan_guru_dft(1, &dim, hr, hm, scratch, scratch, FFTW_BACKWARD, flags);
        ps->to_mom[static_cast<std::size_t>(a)] =
            fftw_plan_guru_dft(1, &dim, hr, hm, scratch, scratch, FFTW_FORWARD, flags);
        if (!ps->to_pos[static_cast<std::size_t>(a)] || !ps->to_mom[static_cast<std::size_t>(a)]) {
            fftw_free(scratch);
            throw std::runtime_error("fftw plan creation failed");
        }
    }
    fftw_free(scratch);
    PlanSet& ref = *ps;
    cache.emplace(g.n, std::move(ps));
    return ref;
}

// e^{i pi n / 2} for even n: +1 when n % 4 == 0, -1 when n % 4 == 2.
double center_phase(int n) {
    return (n % 4 == 0) ? 1.0 : -1.0;
}

}  // namespace

SpinorField switch_representation(const SpinorField& f, Representation target) {
    if (target == Representation::any || f.rep == Representation::any) {
        throw validation_error("switch_representation: need a concrete representation");
    }
    if (f.rep == target) return f;

    SpinorField out = f;
    const MomentumGrid& g = out.grid;
    const std::size_t nn = g.total_nodes();

    // Centered transform: the (-1)^j / (-1)^k checkerboards move the origin
    // of both grids to the middle of the array.
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            if (node_parity(g, k)) {
                for (std::size_t c = 0; c < 4; ++c) out.amp[4 * k + c] = -out.amp[4 * k + c];
            }
        }
    });

    PlanSet& ps = plans_for(g);
    fftw_complex* data = reinterpret_cast<fftw_complex*>(out.amp.data());
    const bool to_position = (target == Representation::position);
    for (int a = 0; a < 3; ++a) {
        if (!g.axis_active(a)) continue;
        fftw_execute_dft(
            to_position ? ps.to_pos[static_cast<std::size_t>(a)] : ps.to_mom[static_cast<std::size_t>(a)],
            data, data);
    }

    double ntot = 1.0;
    double phi = 1.0;
    for (int a = 0; a < 3; ++a) {
        if (!g.axis_active(a)) continue;
        ntot *= g.n[static_cast<std::size_t>(a)];
        phi *= center_phase(g.n[static_cast<std::size_t>(a)]);
    }
    const double volratio = to_position ? std::sqrt(g.cell_volume_p() / g.cell_volume_x())
                                        : std::sqrt(g.cell_volume_x() / g.cell_volume_p());
    const double base = phi / std::sqrt(ntot) * volratio;

    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const double s = node_parity(g, k) ? -base : base;
            for (std::size_t c = 0; c < 4; ++c) out.amp[4 * k + c] *= s;
        }
    });

    out.rep = target;
    return out;
}

void apply_matrix_field(SpinorField& f, const MatrixField& obs) {
    if (obs.rep != Representation::any && obs.rep != f.rep) {
        throw validation_error("apply_matrix_field: representation mismatch");
    }
    const std::size_t nn = f.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const Matrix4 m = obs.at(coord_at(f, k));
            Spinor4 v{f.amp[4 * k], f.amp[4 * k + 1], f.amp[4 * k + 2], f.amp[4 * k + 3]};
            const Spinor4 w = m * v;
            for (std::size_t c = 0; c < 4; ++c) f.amp[4 * k + c] = w[c];
        }
    });
}

Complex expect_complex(const SpinorField& f, const MatrixField& obs) {
    const SpinorField* src = &f;
    SpinorField switched;
    if (obs.rep != Representation::any && obs.rep != f.rep) {
        switched = switch_representation(f, obs.rep);
        src = &switched;
    }
    const SpinorField& s = *src;
    const std::size_t nn = s.grid.total_nodes();
    Complex val = parallel_reduce(nn, [&s, &obs](std::size_t k) {
        const Matrix4 m = obs.at(coord_at(s, k));
        Spinor4 v{s.amp[4 * k], s.amp[4 * k + 1], s.amp[4 * k + 2], s.amp[4 * k + 3]};
        return sdot(v, m * v);
    });
    return val * cell_volume(s);
}

double expect_observable(const SpinorField& f, const MatrixField& obs) {
    if (!obs.hermitian) {
        throw validation_error("expect_observable: observable not flagged Hermitian");
    }
    if (std::abs(field_norm(f) - 1.0) > 1e-10) {
        throw validation_error("expect_observable: field is not normalized");
    }
    return expect_complex(f, obs).real();
}

double variance(const SpinorField& f, const MatrixField& obs) {
    if (!obs.hermitian) {
        throw validation_error("variance: observable not flagged Hermitian");
    }
    if (std::abs(field_norm(f) - 1.0) > 1e-10) {
        throw validation_error("variance: field is not normalized");
    }
    const SpinorField* src = &f;
    SpinorField switched;
    if (obs.rep != Representation::any && obs.rep != f.rep) {
        switched = switch_representation(f, obs.rep);
        src = &switched;
    }
    const SpinorField& s = *src;
    const std::size_t nn = s.grid.total_nodes();
    const Complex m1 = parallel_reduce(nn, [&s, &obs](std::size_t k) {
                           const Matrix4 m = obs.at(coord_at(s, k));
                           Spinor4 v{s.amp[4 * k], s.amp[4 * k + 1], s.amp[4 * k + 2],
                                     s.amp[4 * k + 3]};
                           return sdot(v, m * v);
                       }) *
                       cell_volume(s);
    const Complex m2 = parallel_reduce(nn, [&s, &obs](std::size_t k) {
                           const Matrix4 m = obs.at(coord_at(s, k));
                           Spinor4 v{s.amp[4 * k], s.amp[4 * k + 1], s.amp[4 * k + 2],
                                     s.amp[4 * k + 3]};
                           const Spinor4 w = m * v;
                           return sdot(w, w);
                       }) *
                       cell_volume(s);
    return std::max(0.0, m2.real() - m1.real() * m1.real());
}

bool is_localized(const SpinorField& f, double rel_tol) {
    const MomentumGrid& g = f.grid;
    const std::size_t nn = g.total_nodes();
    const std::size_t blocks = (nn + REDUCE_BLOCK - 1) / REDUCE_BLOCK;
    std::vector<double> peak(blocks, 0.0), edge(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
        for (std::size_t b = b0; b < b1; ++b) {
            const std::size_t lo = b * REDUCE_BLOCK;
            const std::size_t hi = std::min(nn, lo + REDUCE_BLOCK);
            double pk = 0.0, ed = 0.0;
            for (std::size_t k = lo; k < hi; ++k) {
                double mag2 = 0.0;
                for (std::size_t c = 0; c < 4; ++c) mag2 += std::norm(f.amp[4 * k + c]);
                pk = std::max(pk, mag2);
                const std::array<int, 3> cs = g.node_coords(k);
                bool boundary = false;
                for (int a = 0; a < 3; ++a) {
                    if (!g.axis_active(a)) continue;
                    const int j = cs[static_cast<std::size_t>(a)];
                    if (j == 0 || j == g.n[static_cast<std::size_t>(a)] - 1) boundary = true;
                }
                if (boundary) ed = std::max(ed, mag2);
            }
            peak[b] = pk;
            edge[b] = ed;
        }
    });
    double pk = 0.0, ed = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        pk = std::max(pk, peak[b]);
        ed = std::max(ed, edge[b]);
    }
    if (pk == 0.0) return false;
    return std::sqrt(ed) <= rel_tol * std::sqrt(pk);
}

SpinorField apply_position_component(const SpinorField& f, int axis) {
    if (f.rep != Representation::momentum) {
        throw validation_error("apply_position_component: field must be in momentum representation");
    }
    if (!f.grid.axis_active(axis)) {
        SpinorField zero = f;
        std::fill(zero.amp.begin(), zero.amp.end(), Complex{0.0, 0.0});
        return zero;
    }
    SpinorField pos = switch_representation(f, Representation::position);
    const std::size_t nn = pos.grid.total_nodes();
    parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const double x = pos.grid.x_at(k)[static_cast<std::size_t>(axis)];
            for (std::size_t c = 0; c < 4; ++c) pos.amp[4 * k + c] *= x;
        }
    });
    return switch_representation(pos, Representation::momentum);
}

std::array<SpinorField, 3> position_weighted_fields(const SpinorField& f) {
    if (f.rep != Representation::momentum) {
        throw validation_error("position_weighted_fields: field must be in momentum representation");
    }
    const SpinorField pos = switch_representation(f, Representation::position);
    std::array<SpinorField, 3> out{f, f, f};
    for (int a = 0; a < 3; ++a) {
        if (!f.grid.axis_active(a)) {
            std::fill(out[static_cast<std::size_t>(a)].amp.begin(),
                      out[static_cast<std::size_t>(a)].amp.end(), Complex{0.0, 0.0});
            continue;
        }
        SpinorField w = pos;
        const std::size_t nn = w.grid.total_nodes();
        parallel_for(nn, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                const double x = w.grid.x_at(k)[static_cast<std::size_t>(a)];
                for (std::size_t c = 0; c < 4; ++c) w.amp[4 * k + c] *= x;
            }
        });
        out[static_cast<std::size_t>(a)] = switch_representation(w, Representation::momentum);
    }
    return out;
}

}  // namespace tempo
