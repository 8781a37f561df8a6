#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adjpair/extended_real.hpp"
#include "adjpair/model.hpp"

namespace adjpair {

/// Point γ of the unit circle, stored as (cos θ, sin θ) so that the special
/// points ±1, ±i are represented exactly.
class CircleParam {
public:
    static CircleParam from_angle(double theta);
    /// Normalizes (re, im); throws InvalidArgument for the origin.
    static CircleParam from_point(cplx gamma);

    double c() const { return c_; }
    double s() const { return s_; }
    cplx value() const { return {c_, s_}; }
    double angle() const;
    bool is_one() const { return s_ == 0.0 && c_ > 0.0; }

private:
    CircleParam(double c, double s) : c_(c), s_(s) {}
    double c_;
    double s_;
};

/// t_γ = i(γ+1)/(γ-1), real for |γ| = 1; t_1 = ∞.
ExtendedReal t_from_gamma(const CircleParam& gamma);
/// γ = (t+i)/(t-i); t = ∞ gives 1.
CircleParam gamma_from_t(const ExtendedReal& t);
/// s_{γ,α} = (α - ᾱγ)/(γ-1), and Im α at γ = 1. Throws AlphaZero.
double s_from(const CircleParam& gamma, cplx alpha);

/// α = b t - s + ib (finite t, parameter b) or α = a + is (t = ∞,
/// parameter a). Throws AlphaZero if the choice gives α = 0.
cplx alpha_family(const ExtendedReal& t, double s, double parameter);

/// Human-readable form of the α-family, e.g. "a - 1i" or "2b - 3 + bi".
std::string describe_family(const ExtendedReal& t, double s);

struct LineParams {
    ExtendedReal t;
    double s = 0.0;
};

enum class Certification { Exact, VerifiedToIndex };

struct Classification {
    enum class Kind { LineFamily, CanonicalOnly };
    Kind kind = Kind::CanonicalOnly;
    std::optional<LineParams> line;
    std::optional<CircleParam> gamma;
    std::string family;
    Certification certification = Certification::Exact;
    /// Largest atom index checked (VerifiedToIndex), 0 for structural verdicts.
    std::size_t verified_to = 0;
    /// Largest relative line-equation defect seen on checked support atoms.
    double max_line_defect = 0.0;
    /// Support atom off the fitted line (CanonicalOnly witness).
    std::optional<std::size_t> counterexample;
};

/// Decides whether the support of ξ lies on a line x - t y = s. Line and
/// shifted-real generators are decided from their parameters; other rules
/// are fitted through the first two support atoms and checked up to
/// `verify_to`. Throws AmbiguousSupport if fewer than two distinct support
/// atoms are found.
Classification classify(const DiscreteModel& model, std::size_t verify_to = 100000);

struct OracleResidual {
    double value = 0.0;  ///< ‖(α - ᾱγ)Zξ - (γW* - I)ξ‖ (center estimate)
    double upper = 0.0;  ///< certified upper bound
    std::size_t terms = 0;
};

/// Brute-force check of the normality equation for C = ℂ(ξ, αW*ξ).
OracleResidual oracle_residual(const DiscreteModel& model, const CircleParam& gamma, cplx alpha, std::size_t n);

/// Least-squares α for fixed γ (minimal |α| within the family, never 0)
/// and the residual, from the partial Gram of {Zξ, W*ξ, ξ}.
struct GammaFit {
    CircleParam gamma = CircleParam::from_angle(0.0);
    cplx alpha;
    double residual = 0.0;
    double bound = 0.0;  ///< rounding error of residual
};

struct OracleScan {
    std::size_t grid_points = 0;
    std::size_t truncation = 0;
    std::vector<double> residuals;  ///< per grid point, angle 2πj/grid_points
    GammaFit grid_min;              ///< smallest residual, ties to smallest angle
    GammaFit refined;               ///< after the local solve, re-evaluated directly
    OracleResidual refined_residual;
    /// Smallest grid residual at angular distance > exclusion from refined.gamma.
    /// Grid residuals are norms over k ≤ truncation, so they bound the full
    /// residual of every α from below.
    double min_elsewhere = 0.0;
    double min_elsewhere_bound = 0.0;
    double exclusion = 0.0;
};

OracleScan oracle_scan(const DiscreteModel& model, std::size_t grid_points = 10000, std::size_t n = 20000,
                       double exclusion = 0.05);

/// Partial ‖(X - tY)ξ - sξ‖ (‖-Yξ - sξ‖ for t = ∞) over k ≤ n.
double eigen_residual(const DiscreteModel& model, const LineParams& line, std::size_t n);

}  // namespace adjpair
