#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adjpair/extended_real.hpp"
#include "adjpair/symbol.hpp"

namespace adjpair {

/// offset + scale * k^power, power ≥ 0.
struct PowerRule {
    double offset = 0.0;
    double scale = 1.0;
    double power = 1.0;

    double at(std::size_t k) const;
};

/// Atoms on the line x - t*y = s. For finite t the free rule gives the
/// ordinate y_k and x_k = s + t*y_k; for t = ∞ the line is y = -s and the
/// free rule gives the abscissa.
struct LineRule {
    ExtendedReal t = ExtendedReal::finite(0.0);
    double s = 0.0;
    PowerRule free;
};

/// z_k = x_k + shift with real x_k.
struct ShiftedRealRule {
    cplx shift{0.0, 1.0};
    PowerRule abscissa;
};

/// z_k = e^{i*rotation} (re(k) + i*im(k)).
struct GenericRule {
    PowerRule re;
    PowerRule im{0.0, 0.0, 1.0};
    double rotation = 0.0;
};

enum class GeneratorKind { Line, ShiftedReal, Generic };

/// Large-k behaviour z_k = leading * k^growth * (1 + η_k) where
/// η_k = Σ_j corrections[j].coeff * k^(-corrections[j].rate) exactly.
/// Consequently |η_k| ≤ deviation_scale * k^(-deviation_rate) for all k ≥ 1,
/// and |η_k| ≤ 1/2 once k ≥ settle_index.
struct AtomAsymptotics {
    struct Correction {
        cplx coeff;
        double rate;
    };
    cplx leading;
    double growth = 1.0;
    std::vector<Correction> corrections;
    double deviation_scale = 0.0;
    double deviation_rate = 1.0;
    std::size_t settle_index = 1;

    double deviation_at(std::size_t k) const;
};

/// c1 k^β ≤ |z_k| ≤ c2 k^β for every k ≥ 1.
struct Envelope {
    double lower;
    double upper;
};

/// Closed-form rule k ↦ z_k (k ≥ 1) for the atoms of a discrete measure on ℂ
/// with unit weights.
class AtomGenerator {
public:
    using Rule = std::variant<LineRule, ShiftedRealRule, GenericRule>;

    AtomGenerator(Rule rule, double eps, std::optional<double> declared_growth = std::nullopt);

    static AtomGenerator line(ExtendedReal t, double s, PowerRule free, double eps);
    static AtomGenerator shifted_real(cplx shift, PowerRule abscissa, double eps);
    static AtomGenerator generic(PowerRule re, PowerRule im, double rotation, double eps);

    GeneratorKind kind() const;
    const Rule& rule() const { return rule_; }
    double eps() const { return eps_; }
    std::optional<double> declared_growth() const { return declared_growth_; }
    double growth() const { return asymptotics_.growth; }
    const AtomAsymptotics& asymptotics() const { return asymptotics_; }

    cplx atom(std::size_t k) const;
    Envelope envelope() const;

    /// Checks the modulus floor |z_k| ≥ eps for all k (certified through the
    /// asymptotic bound beyond a finite prefix) and the declared growth.
    /// Throws EpsGapViolated or InvalidArgument.
    void validate() const;

    std::string describe() const;

private:
    Rule rule_;
    double eps_;
    std::optional<double> declared_growth_;
    AtomAsymptotics asymptotics_;
};

}  // namespace adjpair
