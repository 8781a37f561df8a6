// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "adjpair/error.hpp"
#include "adjpair/extensions.hpp"
#include "adjpair/onedim.hpp"
#include "adjpair/polar.hpp"
#include "adjpair/random.hpp"
#include "fixtures.hpp"

using namespace adjpair;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

CMatrix column(cplx u, cplx v) {
    CMatrix c(2, 1);
    c << u, v;
    return c;
}

CVector scalar(cplx c) {
    CVector v(1);
    v << c;
    return v;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome green_identity() {
    const auto m = fixtures::k_plus_i();
    Rng rng(42);
    const auto start = std::chrono::steady_clock::now();
    double max_res = 0.0, max_bound = 0.0, max_ratio = 0.0;
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
        const ElementPair p1{random_astar(m, rng), random_bstar(m, rng)};
        const ElementPair p2{random_astar(m, rng), random_bstar(m, rng)};
        const GreenResult g = green_residual(m, p1, p2);
        ok = ok && g.residual <= 10.0 * g.bound && g.bound <= 1e-8;
        max_res = std::max(max_res, g.residual);
        max_bound = std::max(max_bound, g.bound);
        max_ratio = std::max(max_ratio, g.residual / g.bound);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {ok && secs < 10.0,
            fmt("200 pairs, max residual %.3g, max bound %.3g, %.2f s", max_res, max_bound, secs) +
                fmt(", max residual/bound %.3g", max_ratio)};
}

Outcome boundary_surjectivity() {
    const auto m = fixtures::k_plus_i();
    Rng rng(7);
    double max_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const BoundaryValue g0{random_coefficients(1, rng), random_coefficients(1, rng)};
        const BoundaryValue g1{random_coefficients(1, rng), random_coefficients(1, rng)};
        const ElementPair p = lift_boundary(m, g0, g1);
        auto [h0, h1] = boundary_maps(p.first, p.second);
        max_err = std::max({max_err, (h0.u - g0.u).norm(), (h0.v - g0.v).norm(), (h1.u - g1.u).norm(),
                            (h1.v - g1.v).norm()});
    }
    return {max_err == 0.0, fmt("50 targets, max coefficient error %.3g", max_err)};
}

Outcome rstar_extension() {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const ExtensionSubspace c(f, column(0.0, 1.0));
    const NormalityVerdict v = check_normal(f, c);
    Rng rng(11);
    double max_diff = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto e = make_astar(m, random_domain(m, rng), random_coefficients(1, rng), scalar(0.0));
        const ModelVector rstar = apply_symbol(m, DiscreteModel::R_star(), recompose(m, e));
        max_diff = std::max(max_diff, fixtures::distance(m, t_c_apply(m, f, c, e), rstar));
    }
    return {v.normal && max_diff <= 1e-10,
            std::string(v.normal ? "Normal" : "not normal") + fmt(", max |T_C z - R* z| %.3g on 50 samples", max_diff)};
}

Outcome horizontal_line() {
    const auto m = fixtures::k_plus_i();
    const Classification c = classify(m);
    bool ok = c.kind == Classification::Kind::LineFamily && c.line->t.is_infinite() && c.line->s == -1.0;
    const KernelFrame f(m);
    int accepted = 0, rejected = 0, agree = 0;
    for (cplx alpha : {cplx(-2, -1), cplx(0, -1), cplx(3, -1)}) {
        const ExtensionSubspace sub(f, column(1.0, alpha));
        const bool normal = check_normal(f, sub).normal;
        accepted += normal;
        agree += boundary_isometry(f, GraphOperator{CMatrix::Constant(1, 1, 1.0 / alpha)}).has_value() == normal;
    }
    for (cplx alpha : {cplx(1, 0), cplx(0, 1), cplx(2, 1)}) {
        const ExtensionSubspace sub(f, column(1.0, alpha));
        const bool normal = check_normal(f, sub).normal;
        rejected += !normal;
        agree += boundary_isometry(f, GraphOperator{CMatrix::Constant(1, 1, 1.0 / alpha)}).has_value() == normal;
    }
    ok = ok && accepted == 3 && rejected == 3 && agree == 6;
    return {ok, "classify (t, s) = (" + (c.line ? c.line->t.to_string() + ", " + std::to_string(c.line->s) : "none") +
                    ")" + fmt(", accepted %g/3, rejected %g/3, boundary_isometry agrees %g/6", accepted, rejected, agree)};
}

Outcome line_model() {
    const auto m = fixtures::line_t2_s3();
    const Classification c = classify(m);
    const ExtendedReal t = ExtendedReal::finite(2.0);
    const bool exact = c.kind == Classification::Kind::LineFamily && c.line->t == t && c.line->s == 3.0 &&
                       c.certification == Certification::Exact;
    const CircleParam gamma = gamma_from_t(t);
    const OracleResidual r = oracle_residual(m, gamma, alpha_family(t, 3.0, 1.0), 20000);
    const OracleScan scan = oracle_scan(m, 10000, 20000, 0.05);
    const double center_offset = std::abs(scan.refined.gamma.angle() - gamma.angle());
    const double elsewhere = scan.min_elsewhere - scan.min_elsewhere_bound;
    return {exact && r.upper <= 1e-6 && elsewhere > 1e-2 && center_offset < 1e-6,
            std::string(exact ? "(2, 3) exact" : "classification differs") +
                fmt(", oracle residual <= %.3g, grid min elsewhere >= %.4g, scan center offset %.2g", r.upper,
                    elsewhere, center_offset)};
}

Outcome parabola() {
    const auto m = fixtures::parabola();
    const Classification c = classify(m);
    const OracleScan scan = oracle_scan(m, 10000, 20000, 0.05);
    const double lower = scan.grid_min.residual - scan.grid_min.bound;
    const bool canonical = c.kind == Classification::Kind::CanonicalOnly;
    return {canonical && lower > 1e-3,
            std::string(canonical ? "CanonicalOnly" : "LineFamily") + fmt(", grid minimum >= %.4g", lower)};
}

Outcome moebius() {
    using lcplx = std::complex<long double>;
    Rng rng(1000);
    double round_trip = 0.0, t_imag = 0.0, s_imag = 0.0, t_agree = 0.0, s_agree = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CircleParam g = CircleParam::from_angle(rng.uniform(0.0, 2.0 * std::numbers::pi));
        const ExtendedReal t = t_from_gamma(g);
        round_trip = std::max(round_trip, std::abs(gamma_from_t(t).value() - g.value()));
        const cplx alpha = rng.complex_normal();
        const double s = s_from(g, alpha);
        // defining complex formulas in extended precision, with γ placed on the
        // circle there (a double pair (c, s) is unimodular only to rounding)
        const lcplx gl = lcplx(g.c(), g.s()) / std::abs(lcplx(g.c(), g.s()));
        const lcplx al(alpha.real(), alpha.imag());
        const lcplx td = lcplx(0, 1) * (gl + 1.0L) / (gl - 1.0L);
        const lcplx sd = (al - std::conj(al) * gl) / (gl - 1.0L);
        const double tscale = std::max(1.0, std::abs(t.value()));
        const double sscale = std::max(1.0, std::abs(s));
        t_imag = std::max(t_imag, static_cast<double>(std::abs(td.imag())) / tscale);
        s_imag = std::max(s_imag, static_cast<double>(std::abs(sd.imag())) / sscale);
        t_agree = std::max(t_agree, static_cast<double>(std::abs(td.real() - t.value())) / tscale);
        s_agree = std::max(s_agree, static_cast<double>(std::abs(sd.real() - s)) / sscale);
    }
    const bool ok = round_trip <= 1e-14 && t_imag <= 1e-14 && s_imag <= 1e-14 && t_agree <= 1e-12 && s_agree <= 1e-12;
    return {ok, fmt("round trip %.3g, relative imaginary parts t %.3g, s %.3g", round_trip, t_imag, s_imag) +
                    fmt(", agreement with direct formulas %.3g / %.3g", t_agree, s_agree)};
}

Outcome norm_identities() {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const double gb = f.gram_b()(0, 0).real();
    Rng rng(808);
    double id_err = 0.0, adj_err = 0.0;
    int normal_count = 0;
    for (const CMatrix& basis : {column(0.0, 1.0), column(1.0, cplx(-2, -1)), column(1.0, cplx(0, -1)),
                                 column(1.0, cplx(3, -1))}) {
        const ExtensionSubspace c(f, basis);
        if (!check_normal(f, c).normal) continue;
        ++normal_count;
        for (int i = 0; i < 50; ++i) {
            const cplx s = rng.complex_normal();
            const auto e = make_astar(m, random_domain(m, rng), scalar(s * basis(1, 0)), scalar(s * basis(0, 0)));
            const double tz = norm(m, t_c_apply(m, f, c, e)).value;
            const double bx0 = norm(m, apply_b(m, e.x0)).value;
            const double v1 = std::norm(e.v1(0)) * gb;
            id_err = std::max(id_err, std::abs(tz * tz - bx0 * bx0 - v1));
            const double tsz = norm(m, s_cprime_apply(m, f, c, adjoint_presentation(m, f, c, e))).value;
            adj_err = std::max(adj_err, std::abs(tz - tsz));
        }
    }
    return {normal_count == 4 && id_err <= 1e-9 && adj_err <= 1e-9,
            fmt("%g normal subspaces x 50 samples, norm identity %.3g, |T_C z| vs |T_C* z| %.3g", normal_count, id_err,
                adj_err)};
}

Outcome polar_algebra() {
    const bool w_is_u2 = DiscreteModel::W() == DiscreteModel::U() * DiscreteModel::U();
    double wr = 0.0, kern = 0.0;
    bool symbols = true;
    for (const auto& m : {fixtures::k_plus_i(), fixtures::parabola(), fixtures::rotated(2.0), fixtures::line_t2_s3()}) {
        const WIdentities w = w_identities(m, 16, 5);
        symbols = symbols && w.w_rstar_is_r && w.is_phase_squared;
        wr = std::max(wr, w.w_rstar_minus_r.value);
        const KernelRelations k = kernel_relations(m);
        symbols = symbols && k.symbol_level;
        kern = std::max({kern, k.a_star_from_t, k.b_star_from_t, k.w_maps_kernels, k.subspace_residual});
    }
    return {w_is_u2 && symbols && wr <= 1e-10 && kern <= 1e-8,
            fmt("W = U^2 symbolically, max |WR*v - Rv| %.3g, max kernel residual %.3g", wr, kern)};
}

// C′ by an independent dense solve: null space of [-conj(u) g_a, conj(v) g_b].
Eigen::Index dense_rank(const CMatrix& m) {
    if (m.cols() == 0) return 0;
    Eigen::FullPivLU<CMatrix> lu(m);
    lu.setThreshold(1e-9);
    return lu.rank();
}

Outcome duality() {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const double ga = f.gram_a()(0, 0).real(), gb = f.gram_b()(0, 0).real();
    Rng rng(100);
    int ok = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = rng.integer(0, 2);
        CMatrix basis(2, dim);
        for (Eigen::Index j = 0; j < dim; ++j) basis.col(j) << rng.complex_normal(), rng.complex_normal();
        const ExtensionSubspace c = dim == 0 ? ExtensionSubspace::zero(f) : ExtensionSubspace(f, basis);
        const ExtensionSubspace cp = cprime(f, c);
        const double d = subspace_distance(f, cprime(f, cp), c);
        worst = std::max(worst, d);

        CMatrix dense;
        if (dim == 0) {
            dense = CMatrix::Identity(2, 2);
        } else {
            CMatrix rows(dim, 2);
            for (Eigen::Index j = 0; j < dim; ++j) {
                rows(j, 0) = -std::conj(basis(0, j)) * ga;
                rows(j, 1) = std::conj(basis(1, j)) * gb;
            }
            Eigen::FullPivLU<CMatrix> lu(rows);
            lu.setThreshold(1e-10);
            dense = lu.rank() == 2 ? CMatrix(2, 0) : CMatrix(lu.kernel());
        }
        bool same = dense_rank(dense) == cp.dim();
        if (same && cp.dim() > 0) {
            CMatrix both(2, cp.dim() + dense.cols());
            both << cp.basis(), dense;
            same = dense_rank(both) == cp.dim();
        }
        ok += c.dim() + cp.dim() == 2 && d < 1e-10 && same;
    }
    return {ok == 100, fmt("%g/100 subspaces, max distance of C'' from C %.3g", ok, worst)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Green identity", green_identity},
        {"Boundary surjectivity", boundary_surjectivity},
        {"T_C = R* for C = span{(0, W*xi)}", rstar_extension},
        {"Atoms on y = 1", horizontal_line},
        {"Line model (t = 2, s = 3)", line_model},
        {"CanonicalOnly parabola", parabola},
        {"Moebius round trips", moebius},
        {"Norm identities", norm_identities},
        {"Polar/W algebra", polar_algebra},
        {"Duality brute force", duality},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const Error& e) {
            o = {false, std::string("error ") + std::string(to_string(e.kind())) + " in " + e.module() + ": " + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
