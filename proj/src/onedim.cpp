#include "adjpair/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "adjpair/error.hpp"
#include "adjpair/format.hpp"
#include "adjpair/summation.hpp"

namespace adjpair {

namespace {

void require_nonzero(cplx alpha) {
    if (alpha == cplx{}) throw Error(ErrorKind::AlphaZero, "onedim", "alpha must be nonzero");
}

double angular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
    return std::min(d, 2.0 * std::numbers::pi - d);
}

// Relative defect of x - t y = s at z.
double line_defect(const LineParams& line, cplx z) {
    if (line.t.is_infinite()) {
        const double scale = std::abs(z.imag()) + std::abs(line.s);
        const double d = std::abs(z.imag() + line.s);
        return scale > 0.0 ? d / scale : d;
    }
    const double t = line.t.value();
    const double scale = std::abs(z.real()) + std::abs(t * z.imag()) + std::abs(line.s);
    const double d = std::abs(z.real() - t * z.imag() - line.s);
    return scale > 0.0 ? d / scale : d;
}

LineParams line_through(cplx p1, cplx p2) {
    const cplx d = p2 - p1;
    if (d.imag() == 0.0) return {ExtendedReal::infinity(), -p1.imag()};
    const double t = d.real() / d.imag();
    return {ExtendedReal::finite(t), p1.real() - t * p1.imag()};
}

Classification line_family(const LineParams& line, Certification cert) {
    Classification c;
    c.kind = Classification::Kind::LineFamily;
    c.line = line;
    c.gamma = gamma_from_t(line.t);
    c.family = describe_family(line.t, line.s);
    c.certification = cert;
    return c;
}

// Partial Gram of {Zξ, W*ξ, ξ}.
struct OracleBasis {
    ModelVector z_xi;
    ModelVector w_star_xi;
    Eigen::Matrix3cd gram;
};

OracleBasis oracle_basis(const DiscreteModel& model, std::size_t n) {
    OracleBasis b;
    b.z_xi = apply_symbol(model, DiscreteModel::Z(), model.xi());
    b.w_star_xi = model.kernel_b_star().front();
    const std::vector<ModelVector> vs{b.z_xi, b.w_star_xi, model.xi()};
    const auto g = partial_gram(model.generator(), vs, n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b.gram(i, j) = g[static_cast<std::size_t>(3 * i + j)];
    return b;
}

cplx gram_inner(const Eigen::Matrix3cd& g, const Eigen::Vector3cd& x, const Eigen::Vector3cd& y) {
    return (x.transpose() * g * y.conjugate())(0, 0);
}

// α - ᾱγ = c(1-γ) with c = a - tb for γ ≠ 1, and = 2ib for γ = 1, so the
// residual depends on α through one real number only.
GammaFit fit_gamma(const Eigen::Matrix3cd& g, const CircleParam& gamma) {
    const cplx gm = gamma.value();
    const Eigen::Vector3cd f(0.0, gm, -1.0);
    const Eigen::Vector3cd p = gamma.is_one() ? Eigen::Vector3cd(cplx{0.0, 2.0}, 0.0, 0.0)
                                              : Eigen::Vector3cd(1.0 - gm, 0.0, 0.0);
    const double pp = gram_inner(g, p, p).real();
    const double fp = gram_inner(g, f, p).real();
    const double ff = gram_inner(g, f, f).real();
    const double c = pp > 0.0 ? fp / pp : 0.0;
    GammaFit fit{gamma, {}, std::sqrt(std::max(ff - c * fp, 0.0))};
    // Rounding in ff - c·fp, bounded through Cauchy–Schwarz on the Gram.
    double scale = 0.0;
    const Eigen::Vector3cd x = c * p - f;
    for (int i = 0; i < 3; ++i) scale += std::abs(x(i)) * std::sqrt(std::abs(g(i, i)));
    const double err2 = 64.0 * std::numeric_limits<double>::epsilon() * scale * scale;
    fit.bound = err2 / std::max(fit.residual, std::sqrt(err2));
    if (gamma.is_one()) {
        fit.alpha = c != 0.0 ? cplx{0.0, c} : cplx{1.0, 0.0};
    } else {
        const double t = t_from_gamma(gamma).value();
        fit.alpha = c != 0.0 ? cplx{c, -t * c} / (1.0 + t * t) : cplx{t, 1.0};
    }
    return fit;
}

}  // namespace

CircleParam CircleParam::from_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double th = std::fmod(theta, two_pi);
    if (th < 0.0) th += two_pi;
    if (th == 0.0) return {1.0, 0.0};
    return {std::cos(th), std::sin(th)};
}

CircleParam CircleParam::from_point(cplx gamma) {
    const double r = std::abs(gamma);
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorKind::InvalidArgument, "onedim", "gamma must be a finite nonzero complex number");
    if (gamma.imag() == 0.0) return {gamma.real() > 0.0 ? 1.0 : -1.0, 0.0};
    if (gamma.real() == 0.0) return {0.0, gamma.imag() > 0.0 ? 1.0 : -1.0};
    return {gamma.real() / r, gamma.imag() / r};
}

double CircleParam::angle() const {
    const double a = std::atan2(s_, c_);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

ExtendedReal t_from_gamma(const CircleParam& gamma) {
    if (gamma.is_one()) return ExtendedReal::infinity();
    // cot(θ/2) in the form that avoids cancellation
    if (gamma.c() > 0.0) return ExtendedReal::finite((1.0 + gamma.c()) / gamma.s());
    return ExtendedReal::finite(gamma.s() / (1.0 - gamma.c()));
}

CircleParam gamma_from_t(const ExtendedReal& t) {
    if (t.is_infinite()) return CircleParam::from_point({1.0, 0.0});
    const double x = t.value();
    if (std::abs(x) <= 1.0) {
        const double d = x * x + 1.0;
        return CircleParam::from_point({(x * x - 1.0) / d, 2.0 * x / d});
    }
    const double u = 1.0 / x;
    const double d = 1.0 + u * u;
    return CircleParam::from_point({(1.0 - u * u) / d, 2.0 * u / d});
}

double s_from(const CircleParam& gamma, cplx alpha) {
    require_nonzero(alpha);
    if (gamma.is_one()) return alpha.imag();
    // (α - ᾱγ)/(γ - 1) = b t - a for α = a + ib, γ = (t+i)/(t-i)
    return alpha.imag() * t_from_gamma(gamma).value() - alpha.real();
}

cplx alpha_family(const ExtendedReal& t, double s, double parameter) {
    const cplx alpha = t.is_infinite() ? cplx{parameter, s} : cplx{parameter * t.value() - s, parameter};
    require_nonzero(alpha);
    return alpha;
}

std::string describe_family(const ExtendedReal& t, double s) {
    auto signed_term = [](double c, const std::string& unit) {
        std::string mag = std::abs(c) == 1.0 && !unit.empty() ? "" : format_real(std::abs(c));
        return std::string(c < 0 ? " - " : " + ") + mag + unit;
    };
    std::string out;
    if (t.is_infinite()) {
        out = "a";
        if (s != 0.0) out += signed_term(s, "i");
        return out;
    }
    const double tv = t.value();
    if (tv == 0.0) out = "";
    else if (tv == 1.0) out = "b";
    else if (tv == -1.0) out = "-b";
    else out = format_real(tv) + "b";
    if (s != 0.0) out += out.empty() ? format_real(-s) : signed_term(-s, "");
    out += out.empty() ? "bi" : " + bi";
    return out;
}

Classification classify(const DiscreteModel& model, std::size_t verify_to) {
    const auto& gen = model.generator();
    if (const auto* line = std::get_if<LineRule>(&gen.rule()))
        return line_family({line->t, line->s}, Certification::Exact);
    if (const auto* shifted = std::get_if<ShiftedRealRule>(&gen.rule()))
        return line_family({ExtendedReal::infinity(), -shifted->shift.imag()}, Certification::Exact);

    const double tol = model.tolerance().residual;
    std::optional<cplx> first;
    std::optional<LineParams> fitted;
    double worst = 0.0;
    for (std::size_t k = 1; k <= verify_to; ++k) {
        const cplx z = gen.atom(k);
        if (model.xi().entry(k, z) == cplx{}) continue;
        if (!first) {
            first = z;
            continue;
        }
        if (!fitted) {
            if (z == *first) continue;
            fitted = line_through(*first, z);
            continue;
        }
        const double d = line_defect(*fitted, z);
        worst = std::max(worst, d);
        if (d > tol) {
            Classification c;
            c.kind = Classification::Kind::CanonicalOnly;
            c.certification = Certification::Exact;
            c.verified_to = k;
            c.max_line_defect = d;
            c.counterexample = k;
            return c;
        }
    }
    if (!fitted)
        throw Error(ErrorKind::AmbiguousSupport, "onedim",
                    "fewer than two distinct support atoms up to index " + std::to_string(verify_to));
    Classification c = line_family(*fitted, Certification::VerifiedToIndex);
    c.verified_to = verify_to;
    c.max_line_defect = worst;
    return c;
}

OracleResidual oracle_residual(const DiscreteModel& model, const CircleParam& gamma, cplx alpha, std::size_t n) {
    require_nonzero(alpha);
    const cplx gm = gamma.value();
    const ModelVector z_xi = apply_symbol(model, DiscreteModel::Z(), model.xi());
    const ModelVector r = (alpha - std::conj(alpha) * gm) * z_xi - gm * model.kernel_b_star().front() + model.xi();
    const auto sq = truncated_inner_product(model.generator(), r, r, n);
    const double center = std::max(sq.value.real(), 0.0);
    return {std::sqrt(center), std::sqrt(center + sq.bound), sq.terms};
}

OracleScan oracle_scan(const DiscreteModel& model, std::size_t grid_points, std::size_t n, double exclusion) {
    if (grid_points == 0 || n == 0)
        throw Error(ErrorKind::InvalidArgument, "onedim", "grid size and truncation must be positive");
    const OracleBasis basis = oracle_basis(model, n);
    OracleScan scan;
    scan.grid_points = grid_points;
    scan.truncation = n;
    scan.exclusion = exclusion;
    scan.residuals.resize(grid_points);
    for (std::size_t j = 0; j < grid_points; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_points);
        const GammaFit fit = fit_gamma(basis.gram, CircleParam::from_angle(theta));
        scan.residuals[j] = fit.residual;
        if (j == 0 || fit.residual < scan.grid_min.residual) scan.grid_min = fit;
    }

    // Unconstrained solve of μZξ - γW*ξ = -ξ on the explicit prefix; when a
    // normal extension exists the solution has |γ| = 1 exactly.
    Eigen::MatrixX2cd a(static_cast<Eigen::Index>(n), 2);
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
    const auto& gen = model.generator();
    for (std::size_t k = 1; k <= n; ++k) {
        const cplx z = gen.atom(k);
        const auto row = static_cast<Eigen::Index>(k - 1);
        a(row, 0) = basis.z_xi.entry(k, z);
        a(row, 1) = -basis.w_star_xi.entry(k, z);
        rhs(row) = -model.xi().entry(k, z);
    }
    const Eigen::Vector2cd sol = a.colPivHouseholderQr().solve(rhs);
    scan.refined = scan.grid_min;
    if (std::isfinite(std::abs(sol(1))) && std::abs(sol(1)) > 0.0) {
        CircleParam g = CircleParam::from_point(sol(1));
        // γ = 1 is where t blows up; a sine at rounding level means γ = 1.
        if (g.c() > 0.0 && std::abs(g.s()) <= 16.0 * std::numeric_limits<double>::epsilon())
            g = CircleParam::from_angle(0.0);
        const GammaFit candidate = fit_gamma(basis.gram, g);
        if (candidate.residual <= scan.grid_min.residual) scan.refined = candidate;
    }
    scan.refined_residual = oracle_residual(model, scan.refined.gamma, scan.refined.alpha, n);

    const double center = scan.refined.gamma.angle();
    scan.min_elsewhere = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid_points; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_points);
        if (angular_distance(theta, center) > exclusion && scan.residuals[j] < scan.min_elsewhere) {
            scan.min_elsewhere = scan.residuals[j];
            scan.min_elsewhere_bound = fit_gamma(basis.gram, CircleParam::from_angle(theta)).bound;
        }
    }
    return scan;
}

double eigen_residual(const DiscreteModel& model, const LineParams& line, std::size_t n) {
    const auto& gen = model.generator();
    CompensatedSum sum;
    for (std::size_t k = 1; k <= n; ++k) {
        const cplx z = gen.atom(k);
        const cplx x = model.xi().entry(k, z);
        if (x == cplx{}) continue;
        const double lhs = line.t.is_infinite() ? -z.imag() : z.real() - line.t.value() * z.imag();
        sum.add(std::norm((lhs - line.s) * x));
    }
    return std::sqrt(std::max(sum.value(), 0.0));
}

}  // namespace adjpair
