#include "tempo/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tempo/algebra.hpp"
#include "tempo/analysis.hpp"
#include "tempo/config.hpp"
#include "tempo/dynamics.hpp"
#include "tempo/field_ops.hpp"
#include "tempo/hilbert.hpp"
#include "tempo/operators.hpp"
#include "tempo/packets.hpp"
#include "tempo/runtime.hpp"

namespace tempo {

namespace {

// ---------------------------------------------------------------- formatting

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;

    explicit CsvWriter(const std::string& path) : out(path) {
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }

    void values(const std::vector<double>& vals) {
        std::vector<std::string> cells;
        cells.reserve(vals.size());
        for (double v : vals) cells.push_back(fmt_num(v));
        row(cells);
    }
};

// ----------------------------------------------------------------- arguments

const char* kUsage =
    "usage: tempo <command> [--config FILE] [--out FILE] [flags]\n"
    "\n"
    "commands:\n"
    "  eigen        time-operator eigensystem at radius r (--r, --tau0)\n"
    "  evolve       record observables along a time schedule\n"
    "  uncertainty  time-energy uncertainty product and its lower bounds\n"
    "  velocities   group/phase velocities from <r>(t) and <T>(t)\n"
    "  limits       leading-order <T> slope and offset in a momentum regime\n"
    "  shift        apply the momentum displacement generator (--epsilon)\n"
    "  zbw          dominant oscillation of <z>(t) (needs >= 64 samples)\n"
    "  emrate       instantaneous d<T>/dt under minimal coupling\n"
    "  check        deterministic self-test battery (--seed)\n"
    "\n"
    "flags: --config FILE, --out FILE, --m0 X, --tau0 X, --q X, --r X,\n"
    "       --epsilon X, --seed N\n";

struct CliArgs {
    std::string command;
    std::map<std::string, std::string> flags;
};

CliArgs parse_args(int argc, char** argv) {
    static const std::set<std::string> value_flags = {"--config", "--out",     "--r",
                                                      "--tau0",   "--m0",      "--q",
                                                      "--epsilon", "--seed"};
    CliArgs args;
    for (int i = 1; i < argc; ++i) {
        const std::string tok = argv[i];
        if (tok.rfind("--", 0) == 0) {
            if (!value_flags.count(tok)) throw validation_error("unknown flag '" + tok + "'");
            if (i + 1 >= argc) throw validation_error("flag '" + tok + "' needs a value");
            args.flags[tok] = argv[++i];
        } else if (args.command.empty()) {
            args.command = tok;
        } else {
            throw validation_error("unexpected argument '" + tok + "'");
        }
    }
    if (args.command.empty()) throw validation_error(std::string("missing command\n") + kUsage);
    return args;
}

double flag_double(const std::string& name, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw validation_error("flag '" + name + "' expects a number, got '" + text + "'");
    return v;
}

std::uint64_t flag_u64(const std::string& name, const std::string& text) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    // strtoull silently wraps negative input, so reject it explicitly.
    if (end == text.c_str() || *end != '\0' || text.find('-') != std::string::npos)
        throw validation_error("flag '" + name + "' expects an unsigned integer, got '" + text +
                               "'");
    return v;
}

// --------------------------------------------------------- run configuration

struct RunConfig {
    ModelParams params;
    std::array<int, 3> n{32, 32, 32};
    std::array<double, 3> p_max{2.0, 2.0, 2.0};
    PacketSpec packet;
    double t_start = 0.0;
    double t_end = 10.0;
    int samples = 65;
    std::string em_kind = "constant";
    Vec3 em_a{0.0, 0.0, 0.0};
    double em_b = 0.0;
    double em_q = 0.0;
    std::string phi_kind = "none";
    double phi_value = 0.0;
    Vec3 phi_gradient{0.0, 0.0, 0.0};
    double eigen_r = 3.0;
    double shift_epsilon = 0.125;
    std::uint64_t seed = 12345;
};

RunConfig default_config() {
    RunConfig rc;
    rc.packet.p_center = {0.0, 0.0, 0.75};
    rc.packet.sigma_p = {0.15, 0.15, 0.15};
    return rc;
}

PacketBranch branch_from(const std::string& s) {
    if (s == "plus") return PacketBranch::plus;
    if (s == "minus") return PacketBranch::minus;
    if (s == "mixed") return PacketBranch::mixed;
    throw validation_error("[packet] branch: unknown value '" + s + "' (want plus|minus|mixed)");
}

SpinStructure structure_from(const std::string& s) {
    if (s == "projected") return SpinStructure::projected;
    if (s == "rest") return SpinStructure::rest;
    if (s == "alpha") return SpinStructure::alpha;
    throw validation_error("[packet] structure: unknown value '" + s +
                           "' (want projected|rest|alpha)");
}

RunConfig config_from(const ConfigFile& cfg) {
    RunConfig rc = default_config();
    rc.params.m0 = cfg.get_double("params", "m0", rc.params.m0);
    rc.params.tau0 = cfg.get_double("params", "tau0", rc.params.tau0);
    rc.params.q = cfg.get_double("params", "q", rc.params.q);

    rc.n = cfg.get_int3("grid", "n", rc.n);
    rc.p_max = cfg.get_vec3("grid", "p_max", rc.p_max);

    rc.packet.p_center = cfg.get_vec3("packet", "p_center", rc.packet.p_center);
    rc.packet.sigma_p = cfg.get_vec3("packet", "sigma_p", rc.packet.sigma_p);
    rc.packet.r_center = cfg.get_vec3("packet", "r_center", rc.packet.r_center);
    rc.packet.branch = branch_from(cfg.get_string("packet", "branch", "plus"));
    rc.packet.mix_weight = cfg.get_double("packet", "mix_weight", rc.packet.mix_weight);
    rc.packet.spin_axis = cfg.get_vec3("packet", "spin_axis", rc.packet.spin_axis);
    rc.packet.spin_sign = cfg.get_int("packet", "spin_sign", rc.packet.spin_sign);
    rc.packet.structure = structure_from(cfg.get_string("packet", "structure", "projected"));

    rc.t_start = cfg.get_double("schedule", "t_start", rc.t_start);
    rc.t_end = cfg.get_double("schedule", "t_end", rc.t_end);
    rc.samples = cfg.get_int("schedule", "samples", rc.samples);

    rc.em_kind = cfg.get_string("em", "kind", rc.em_kind);
    rc.em_a = cfg.get_vec3("em", "a", rc.em_a);
    rc.em_b = cfg.get_double("em", "b", rc.em_b);
    rc.em_q = cfg.get_double("em", "q", rc.params.q);
    rc.phi_kind = cfg.get_string("em", "phi_kind", rc.phi_kind);
    rc.phi_value = cfg.get_double("em", "phi_value", rc.phi_value);
    rc.phi_gradient = cfg.get_vec3("em", "phi_gradient", rc.phi_gradient);

    rc.eigen_r = cfg.get_double("eigen", "r", rc.eigen_r);
    rc.shift_epsilon = cfg.get_double("shift", "epsilon", rc.shift_epsilon);
    const int seed = cfg.get_int("check", "seed", static_cast<int>(rc.seed));
    if (seed < 0) throw validation_error("[check] seed must be non-negative");
    rc.seed = static_cast<std::uint64_t>(seed);
    return rc;
}

MomentumGrid grid_from(const RunConfig& rc) { return make_grid(rc.n, rc.p_max); }

SpinorField packet_from(const RunConfig& rc, const MomentumGrid& grid) {
    return build_gaussian(grid, rc.packet, rc.params);
}

std::vector<double> times_from(const RunConfig& rc) {
    if (rc.samples < 1) throw validation_error("[schedule] samples must be >= 1");
    if (rc.samples > 1 && rc.t_end <= rc.t_start)
        throw validation_error("[schedule] t_end must exceed t_start");
    return linspace(rc.t_start, rc.t_end, rc.samples);
}

Vec3 uniform_A_from(const RunConfig& rc) {
    if (rc.params.q == 0.0) return {0.0, 0.0, 0.0};
    if (rc.em_kind != "constant")
        throw validation_error(
            "time evolution with q != 0 needs [em] kind = constant (uniform A)");
    return rc.em_a;
}

EMFieldSpec em_from(const RunConfig& rc) {
    EMFieldSpec em;
    em.q = rc.em_q;
    if (rc.em_kind == "constant") {
        const Vec3 a = rc.em_a;
        em.A = [a](const Vec3&) { return a; };
    } else if (rc.em_kind == "linear") {
        const double b = rc.em_b;
        em.A = [b](const Vec3& r) { return Vec3{0.0, b * r[0], 0.0}; };
    } else if (rc.em_kind == "circular") {
        const double b = rc.em_b;
        em.A = [b](const Vec3& r) { return Vec3{-0.5 * b * r[1], 0.5 * b * r[0], 0.0}; };
    } else {
        throw validation_error("[em] kind: unknown value '" + rc.em_kind +
                               "' (want constant|linear|circular)");
    }
    if (rc.phi_kind == "none") {
        em.Phi = nullptr;
    } else if (rc.phi_kind == "constant") {
        const double v = rc.phi_value;
        em.Phi = [v](const Vec3&) { return v; };
    } else if (rc.phi_kind == "linear") {
        const Vec3 g = rc.phi_gradient;
        em.Phi = [g](const Vec3& r) { return dot(g, r); };
    } else {
        throw validation_error("[em] phi_kind: unknown value '" + rc.phi_kind +
                               "' (want none|constant|linear)");
    }
    return em;
}

// ------------------------------------------------------------------ commands

int cmd_eigen(const RunConfig& rc, const std::string& out_path) {
    const TimeEigensystem es = time_eigensystem(rc.eigen_r, rc.params);
    CsvWriter w(out_path);
    w.row({"state", "eigenvalue", "c1_re", "c1_im", "c2_re", "c2_im", "c3_re", "c3_im", "c4_re",
           "c4_im"});
    static const char* labels[4] = {"minus_up", "minus_down", "plus_up", "plus_down"};
    for (int k = 0; k < 4; ++k) {
        std::vector<std::string> cells{labels[k], fmt_num(es.values[static_cast<size_t>(k)])};
        for (int i = 0; i < 4; ++i) {
            const Complex c = es.spinors[static_cast<size_t>(k)][static_cast<size_t>(i)];
            cells.push_back(fmt_num(c.real()));
            cells.push_back(fmt_num(c.imag()));
        }
        w.row(cells);
    }
    std::printf("tau_r = %.14e\n", es.tau_r);
    std::printf("eigenvalues: %.14e %.14e %.14e %.14e\n", es.values[0], es.values[1], es.values[2],
                es.values[3]);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

void write_series_csv(const ObservableSeries& s, const std::string& out_path) {
    CsvWriter w(out_path);
    w.row({"t", "x_mean", "y_mean", "z_mean", "px_mean", "py_mean", "pz_mean", "T_mean", "H_mean",
           "T_sigma", "H_sigma", "beta_K", "plus_fraction"});
    for (size_t i = 0; i < s.t.size(); ++i) {
        w.values({s.t[i], s.r[i][0], s.r[i][1], s.r[i][2], s.p[i][0], s.p[i][1], s.p[i][2], s.T[i],
                  s.H[i], s.dT[i], s.dH[i], s.betaK[i], s.purity[i]});
    }
}

ObservableSeries series_from(const RunConfig& rc) {
    const MomentumGrid grid = grid_from(rc);
    const SpinorField f = packet_from(rc, grid);
    return record_series(f, times_from(rc), rc.params, uniform_A_from(rc));
}

int cmd_evolve(const RunConfig& rc, const std::string& out_path) {
    const ObservableSeries s = series_from(rc);
    write_series_csv(s, out_path);
    std::printf("recorded %zu samples over t = [%g, %g]\n", s.t.size(), s.t.front(), s.t.back());
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_uncertainty(const RunConfig& rc, const std::string& out_path) {
    const MomentumGrid grid = grid_from(rc);
    const SpinorField f = packet_from(rc, grid);
    const UncertaintyReport ur = uncertainty_product(f, rc.params);
    CsvWriter w(out_path);
    w.row({"T_sigma", "H_sigma", "product", "commutator_bound", "spin_orbit_bound",
           "ok_commutator", "ok_spin_orbit"});
    w.values({ur.dT, ur.dH, ur.product, ur.robertson_bound, ur.spin_orbit_bound,
              ur.ok_robertson ? 1.0 : 0.0, ur.ok_spin_orbit ? 1.0 : 0.0});
    std::printf("dT*dH = %.14e\n", ur.product);
    std::printf("commutator bound = %.14e (%s)\n", ur.robertson_bound,
                ur.ok_robertson ? "ok" : "violated");
    std::printf("spin-orbit bound = %.14e (%s)\n", ur.spin_orbit_bound, ur.ok_spin_orbit ? "ok" : "violated");
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_velocities(const RunConfig& rc, const std::string& out_path) {
    const ObservableSeries s = series_from(rc);
    const VelocityReport rep = velocity_extraction(s);
    CsvWriter w(out_path);
    w.row({"vg_x", "vg_y", "vg_z", "v_group", "v_phase", "product"});
    w.values({rep.v_group[0], rep.v_group[1], rep.v_group[2], norm3(rep.v_group), rep.v_phase,
              rep.product});
    std::printf("v_gp = (%.6f, %.6f, %.6f), |v_gp| = %.6f\n", rep.v_group[0], rep.v_group[1],
                rep.v_group[2], norm3(rep.v_group));
    std::printf("v_ph = %.6f\n", rep.v_phase);
    std::printf("v_ph*v_gp = %.3f\n", rep.product);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_limits(const RunConfig& rc, const std::string& out_path) {
    const double p = norm3(rc.packet.p_center);
    const double rest = rc.params.m0 * C_LIGHT * C_LIGHT;
    Regime regime;
    std::string label;
    if (C_LIGHT * p < 0.2 * rest) {
        regime = Regime::nonrelativistic;
        label = "nonrelativistic";
    } else if (C_LIGHT * p > 5.0 * rest) {
        regime = Regime::ultrarelativistic;
        label = "ultrarelativistic";
    } else {
        throw validation_error(
            "momentum is in neither expansion regime (want cp < 0.2 m0 c^2 or cp > 5 m0 c^2)");
    }
    const RegimePrediction pred = regime_expansion(rc.params, p, regime);
    CsvWriter w(out_path);
    w.row({"regime", "momentum", "slope", "offset"});
    w.row({label, fmt_num(p), fmt_num(pred.slope), fmt_num(pred.offset)});
    std::printf("regime = %s\n", label.c_str());
    std::printf("slope  = %.14e\n", pred.slope);
    std::printf("offset = %.14e\n", pred.offset);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_shift(const RunConfig& rc, const std::string& out_path) {
    const MomentumGrid grid = grid_from(rc);
    const SpinorField f = packet_from(rc, grid);
    const DiracBasis& dirac = dirac_basis();
    Vec3 p_before{}, p_after{}, alpha_mean{};
    for (int a = 0; a < 3; ++a) {
        p_before[static_cast<size_t>(a)] = expect_observable(f, momentum_component(a));
        alpha_mean[static_cast<size_t>(a)] =
            expect_observable(f, constant_observable(dirac.alpha[static_cast<size_t>(a)]));
    }
    const double purity_before = branch_purity(f, rc.params);
    const SpinorField shifted = momentum_shift(f, rc.shift_epsilon, rc.params);
    for (int a = 0; a < 3; ++a)
        p_after[static_cast<size_t>(a)] = expect_observable(shifted, momentum_component(a));
    const double purity_after = branch_purity(shifted, rc.params);

    CsvWriter w(out_path);
    w.row({"epsilon", "px_before", "py_before", "pz_before", "px_after", "py_after", "pz_after",
           "px_pred", "py_pred", "pz_pred", "plus_before", "plus_after"});
    w.values({rc.shift_epsilon, p_before[0], p_before[1], p_before[2], p_after[0], p_after[1],
              p_after[2], p_before[0] + rc.shift_epsilon * alpha_mean[0] / C_LIGHT,
              p_before[1] + rc.shift_epsilon * alpha_mean[1] / C_LIGHT,
              p_before[2] + rc.shift_epsilon * alpha_mean[2] / C_LIGHT, purity_before,
              purity_after});
    std::printf("d<p_z> = %.14e (first-order prediction %.14e)\n", p_after[2] - p_before[2],
                rc.shift_epsilon * alpha_mean[2] / C_LIGHT);
    std::printf("plus fraction: %.14e -> %.14e\n", purity_before, purity_after);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_zbw(const RunConfig& rc, const std::string& out_path) {
    const ObservableSeries s = series_from(rc);
    const ZbwReport zr = zbw_spectrum(s);
    const double omega_pred =
        2.0 * energy_at(rc.packet.p_center, rc.params) / HBAR;
    CsvWriter w(out_path);
    w.row({"omega", "amplitude", "omega_expected"});
    w.values({zr.omega, zr.amplitude, omega_pred});
    std::printf("omega = %.14e (2E/hbar at the packet center = %.14e)\n", zr.omega, omega_pred);
    std::printf("amplitude = %.14e\n", zr.amplitude);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_emrate(const RunConfig& rc, const std::string& out_path) {
    const MomentumGrid grid = grid_from(rc);
    const SpinorField f = packet_from(rc, grid);
    const EmRateReport rep = em_time_rate(f, em_from(rc), rc.params);
    CsvWriter w(out_path);
    w.row({"rate", "base_term", "magnetic_term", "coupling_term"});
    w.values({rep.rate, rep.base_term, rep.magnetic_term, rep.gamma_term});
    std::printf("d<T>/dt = %.14e\n", rep.rate);
    std::printf("  base %.14e, magnetic %.14e, coupling %.14e\n", rep.base_term, rep.magnetic_term,
                rep.gamma_term);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

// ------------------------------------------------------------- check battery

struct CheckItem {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

void add_item(std::vector<CheckItem>& items, const std::string& name, double value, double bound) {
    items.push_back({name, value, bound, value <= bound});
}

double max_node_difference(const SpinorField& a, const SpinorField& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.amp.size(); ++i) worst = std::max(worst, std::abs(a.amp[i] - b.amp[i]));
    return worst;
}

std::vector<CheckItem> run_check_battery(std::uint64_t seed) {
    std::vector<CheckItem> items;
    Rng rng(seed);
    const ModelParams params{1.0, 0.5, 0.0};
    const DiracBasis& dirac = dirac_basis();

    {  // 1: Clifford closure of (alpha_x, alpha_y, alpha_z, beta)
        const std::array<Matrix4, 4> gens = {dirac.alpha[0], dirac.alpha[1], dirac.alpha[2],
                                             dirac.beta};
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            worst = std::max(worst, max_abs(gens[static_cast<size_t>(i)] -
                                            adjoint(gens[static_cast<size_t>(i)])));
            for (int j = 0; j < 4; ++j) {
                Matrix4 want = Matrix4::zero();
                if (i == j) want = 2.0 * Matrix4::identity();
                const Matrix4 anti = bracket(gens[static_cast<size_t>(i)],
                                             gens[static_cast<size_t>(j)],
                                             BracketKind::anticommutator);
                worst = std::max(worst, max_abs(anti - want));
            }
        }
        add_item(items, "clifford-closure", worst, 1e-13);
    }

    {  // 2: spectral reconstruction of a random Hermitian matrix
        Matrix4 m = Matrix4::zero();
        for (int r = 0; r < 4; ++r) {
            m(r, r) = rng.normal();
            for (int c = r + 1; c < 4; ++c) {
                const Complex v(rng.normal(), rng.normal());
                m(r, c) = v;
                m(c, r) = std::conj(v);
            }
        }
        const Eigensystem4 es = hermitian_eigensystem(m);
        Matrix4 rec = Matrix4::zero();
        for (int k = 0; k < 4; ++k)
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    rec(r, c) += es.values[static_cast<size_t>(k)] * es.vectors(r, k) *
                                 std::conj(es.vectors(c, k));
        add_item(items, "eigen-reconstruction", max_abs(rec - m) / std::max(1.0, max_abs(m)),
                 1e-12);
    }

    {  // 3: analytic time-operator eigenspinors against the matrix
        ModelParams tp{1.0, rng.uniform(0.0, 3.0), 0.0};
        const double r = rng.uniform(0.1, 5.0);
        const TimeEigensystem es = time_eigensystem(r, tp);
        const Matrix4 T = time_operator_at({0.0, 0.0, r}, tp);
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
            const Spinor4& s = es.spinors[static_cast<size_t>(k)];
            const Spinor4 ts = T * s;
            double resid = 0.0;
            for (int i = 0; i < 4; ++i)
                resid += std::norm(ts[static_cast<size_t>(i)] -
                                   es.values[static_cast<size_t>(k)] * s[static_cast<size_t>(i)]);
            worst = std::max(worst, std::sqrt(resid));
            for (int j = 0; j < 4; ++j) {
                const Complex ov = sdot(es.spinors[static_cast<size_t>(j)], s);
                worst = std::max(worst, std::abs(ov - (j == k ? 1.0 : 0.0)));
            }
        }
        add_item(items, "time-eigenstate-residual", worst, 1e-12);
    }

    const MomentumGrid grid1 = make_grid_1d(512, 2.0);
    PacketSpec base_spec;
    base_spec.p_center = {0.0, 0.0, rng.uniform(-0.4, 0.4)};
    base_spec.sigma_p = {0.1, 0.1, 0.1};
    const SpinorField f1 = build_gaussian(grid1, base_spec, params);

    {  // 4: momentum -> position -> momentum roundtrip, 1D
        const SpinorField pos = switch_representation(f1, Representation::position);
        const SpinorField back = switch_representation(pos, Representation::momentum);
        add_item(items, "transform-roundtrip-1d", max_node_difference(f1, back), 1e-12);
    }

    {  // 5: same roundtrip through the 3D transform path
        const MomentumGrid grid3 = make_grid(16, 1.5);
        PacketSpec ps;
        ps.p_center = {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
        ps.sigma_p = {0.15, 0.15, 0.15};
        const SpinorField f3 = build_gaussian(grid3, ps, params);
        const SpinorField pos = switch_representation(f3, Representation::position);
        const SpinorField back = switch_representation(pos, Representation::momentum);
        double value = max_node_difference(f3, back);
        value = std::max(value, std::abs(field_norm(pos) - 1.0));
        add_item(items, "transform-roundtrip-3d", value, 1e-12);
    }

    {  // 6: Parseval: the norm is representation independent
        const SpinorField pos = switch_representation(f1, Representation::position);
        add_item(items, "parseval-norm", std::abs(field_norm(pos) - field_norm(f1)), 1e-12);
    }

    {  // 7: <[z, p_z]> = i hbar on a localized packet
        SpinorField pf = f1;
        apply_matrix_field(pf, momentum_component(2));
        const SpinorField zpf = apply_position_component(pf, 2);
        SpinorField zf = apply_position_component(f1, 2);
        apply_matrix_field(zf, momentum_component(2));
        const Complex comm = inner_product(f1, zpf) - inner_product(f1, zf);
        add_item(items, "canonical-commutator", std::abs(comm / (I_UNIT * HBAR) - 1.0), 1e-6);
    }

    add_item(items, "packet-norm", std::abs(field_norm(f1) - 1.0), 1e-12);
    add_item(items, "packet-localization", is_localized(f1) ? 0.0 : 1.0, 0.5);

    {  // 10: mixed-branch weight is reproduced exactly
        PacketSpec ps = base_spec;
        ps.p_center = {0.0, 0.0, 0.5};
        ps.branch = PacketBranch::mixed;
        ps.mix_weight = 0.25;
        const SpinorField f = build_gaussian(grid1, ps, params);
        add_item(items, "branch-purity-mix", std::abs(branch_purity(f, params) - 0.75), 1e-12);
    }

    PacketSpec drift_spec;
    drift_spec.p_center = {0.0, 0.0, 0.5};
    drift_spec.sigma_p = {0.1, 0.1, 0.1};
    const SpinorField fd = build_gaussian(grid1, drift_spec, params);

    {  // 11: free evolution conserves the norm and <H>
        const double e0 = expect_observable(fd, hamiltonian_field(params));
        const SpinorField ft = evolve_free(fd, 1.7, params);
        const double value =
            std::abs(expect_observable(ft, hamiltonian_field(params)) - e0) +
            std::abs(field_norm(ft) - 1.0);
        add_item(items, "free-conservation", value, 1e-10);
    }

    {  // 12: dT*dH sits above the discrete commutator bound
        const UncertaintyReport ur = uncertainty_product(fd, params);
        add_item(items, "uncertainty-floor", std::max(0.0, ur.robertson_bound - ur.product), 1e-9);
    }

    {  // 13: <beta alpha.p> and <beta alpha.r> vanish for rest structure
        PacketSpec ps = drift_spec;
        ps.structure = SpinStructure::rest;
        const SpinorField f = build_gaussian(grid1, ps, params);
        const auto pr = beta_alpha_expectations(f);
        add_item(items, "rest-coupling-vanishes", std::abs(pr.first) + std::abs(pr.second), 1e-10);
    }

    {  // 14: the momentum displacement generator composes additively
        const double e1 = rng.uniform(0.02, 0.12);
        const double e2 = rng.uniform(0.02, 0.12);
        const SpinorField two = momentum_shift(momentum_shift(f1, e1, params), e2, params);
        const SpinorField one = momentum_shift(f1, e1 + e2, params);
        add_item(items, "shift-group-law", max_node_difference(two, one), 1e-10);
    }

    {  // 15: the <z>(t) oscillation lands in the 2E/hbar frequency bin
        PacketSpec ps;
        ps.p_center = {0.0, 0.0, 0.0};
        ps.sigma_p = {0.05, 0.05, 0.05};
        ps.structure = SpinStructure::rest;
        ps.branch = PacketBranch::mixed;
        ps.mix_weight = 0.5;
        const SpinorField f = build_gaussian(grid1, ps, params);
        const std::vector<double> times = linspace(0.0, 127.0 * M_PI / 32.0, 128);
        const ObservableSeries s = record_series(f, times, params);
        const ZbwReport zr = zbw_spectrum(s);
        add_item(items, "zbw-frequency-bin",
                 std::abs(zr.omega - 2.0 * energy_at({0.0, 0.0, 0.0}, params) / HBAR), 0.26);
    }

    {  // 16: Heisenberg-picture <T>(t) matches the evolved state
        const SpinorField ft = evolve_free(fd, 0.9, params);
        const SpinorField pos = switch_representation(ft, Representation::position);
        const double direct = expect_observable(pos, time_operator_field(params));
        const double heis = heisenberg_time_expectation(fd, 0.9, params);
        add_item(items, "heisenberg-schroedinger-match", std::abs(direct - heis), 1e-8);
    }

    {  // 17: the term-by-term rate equals (2/hbar) Im <T psi | H psi>
        EMFieldSpec em;
        const EmRateReport rep = em_time_rate(fd, em, params);
        const double direct = time_expectation_rate(fd, params);
        add_item(items, "free-rate-identity", std::abs(rep.rate - direct), 1e-10);
    }

    {  // 18: v_phase * v_group = c^2 for a narrow packet
        const MomentumGrid grid2 = make_grid_1d(2048, 2.0);
        PacketSpec ps;
        ps.p_center = {0.0, 0.0, 0.75};
        ps.sigma_p = {0.01, 0.01, 0.01};
        const SpinorField f = build_gaussian(grid2, ps, params);
        const ObservableSeries s = record_series(f, linspace(0.0, 2.0, 9), params);
        const VelocityReport rep = velocity_extraction(s);
        add_item(items, "velocity-product", std::abs(rep.product - 1.0), 5e-4);
    }

    return items;
}

int cmd_check(const RunConfig& rc, const std::string& out_path) {
    const std::vector<CheckItem> items = run_check_battery(rc.seed);
    CsvWriter w(out_path);
    w.row({"name", "value", "bound", "pass"});
    int passed = 0;
    for (const CheckItem& item : items) {
        w.row({item.name, fmt_num(item.value), fmt_num(item.bound), item.pass ? "1" : "0"});
        std::printf("%s %-32s value=%.3e bound=%.3e\n", item.pass ? "PASS" : "FAIL",
                    item.name.c_str(), item.value, item.bound);
        if (item.pass) ++passed;
    }
    std::printf("%d/%zu checks passed\n", passed, items.size());
    std::printf("wrote %s\n", out_path.c_str());
    return passed == static_cast<int>(items.size()) ? 0 : 1;
}

int dispatch(int argc, char** argv) {
    const CliArgs args = parse_args(argc, argv);
    if (args.command == "help") {
        std::printf("%s", kUsage);
        return 0;
    }

    RunConfig rc = default_config();
    auto cfg_it = args.flags.find("--config");
    if (cfg_it != args.flags.end()) rc = config_from(load_config(cfg_it->second));

    for (const auto& [flag, value] : args.flags) {
        if (flag == "--m0") rc.params.m0 = flag_double(flag, value);
        else if (flag == "--tau0") rc.params.tau0 = flag_double(flag, value);
        else if (flag == "--q") rc.params.q = flag_double(flag, value);
        else if (flag == "--r") rc.eigen_r = flag_double(flag, value);
        else if (flag == "--epsilon") rc.shift_epsilon = flag_double(flag, value);
        else if (flag == "--seed") rc.seed = flag_u64(flag, value);
    }

    std::string out_path = args.command + ".csv";
    auto out_it = args.flags.find("--out");
    if (out_it != args.flags.end()) out_path = out_it->second;

    if (args.command == "eigen") return cmd_eigen(rc, out_path);
    if (args.command == "evolve") return cmd_evolve(rc, out_path);
    if (args.command == "uncertainty") return cmd_uncertainty(rc, out_path);
    if (args.command == "velocities") return cmd_velocities(rc, out_path);
    if (args.command == "limits") return cmd_limits(rc, out_path);
    if (args.command == "shift") return cmd_shift(rc, out_path);
    if (args.command == "zbw") return cmd_zbw(rc, out_path);
    if (args.command == "emrate") return cmd_emrate(rc, out_path);
    if (args.command == "check") return cmd_check(rc, out_path);
    throw validation_error("unknown command '" + args.command + "'\n" + kUsage);
}

}  // namespace

int run_command(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tempo
