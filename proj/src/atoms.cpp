#include "adjpair/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

namespace {

constexpr std::size_t kMaxSettleIndex = 100'000'000;

double k_pow(std::size_t k, double p) {
    const auto x = static_cast<double>(k);
    if (p == 0.0) return 1.0;
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::pow(x, p);
}

struct Lowered {
    PowerRule re;
    PowerRule im;
    double rotation;
};

Lowered lower(const AtomGenerator::Rule& rule) {
    return std::visit(
        [](const auto& r) -> Lowered {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LineRule>) {
                if (r.t.is_infinite()) return {r.free, PowerRule{-r.s, 0.0, 1.0}, 0.0};
                const double t = r.t.value();
                return {PowerRule{r.s + t * r.free.offset, t * r.free.scale, r.free.power}, r.free, 0.0};
            } else if constexpr (std::is_same_v<T, ShiftedRealRule>) {
                return {PowerRule{r.abscissa.offset + r.shift.real(), r.abscissa.scale, r.abscissa.power},
                        PowerRule{r.shift.imag(), 0.0, 1.0}, 0.0};
            } else {
                return {r.re, r.im, r.rotation};
            }
        },
        rule);
}

void check_rule(const PowerRule& p, const char* what) {
    if (!std::isfinite(p.offset) || !std::isfinite(p.scale) || !std::isfinite(p.power) || p.power < 0.0)
        throw Error(ErrorKind::InvalidArgument, "model",
                    std::string("rule '") + what + "' needs finite coefficients and power >= 0");
}

AtomAsymptotics derive_asymptotics(const Lowered& low) {
    struct Term {
        cplx coeff;
        double power;
    };
    std::vector<Term> terms;
    auto add = [&](cplx c, double p) {
        if (c == cplx{}) return;
        for (auto& t : terms)
            if (t.power == p) {
                t.coeff += c;
                return;
            }
        terms.push_back({c, p});
    };
    const cplx i{0.0, 1.0};
    add(low.re.offset, 0.0);
    add(low.re.scale, low.re.power);
    add(i * low.im.offset, 0.0);
    add(i * low.im.scale, low.im.power);
    std::erase_if(terms, [](const Term& t) { return t.coeff == cplx{}; });

    double top = 0.0;
    for (const auto& t : terms) top = std::max(top, t.power);
    if (top <= 0.0)
        throw Error(ErrorKind::InvalidArgument, "model", "atoms are bounded; the multiplication operator must be unbounded");

    AtomAsymptotics a;
    a.growth = top;
    cplx lead;
    for (const auto& t : terms)
        if (t.power == top) lead = t.coeff;
    a.leading = std::polar(1.0, low.rotation) * lead;
    double rate = top;
    for (const auto& t : terms) {
        if (t.power == top) continue;
        a.corrections.push_back({t.coeff / lead, top - t.power});
        a.deviation_scale += std::abs(t.coeff / lead);
        rate = std::min(rate, top - t.power);
    }
    a.deviation_rate = rate;
    if (a.deviation_scale > 0.0) {
        const double k0 = std::ceil(std::pow(2.0 * a.deviation_scale, 1.0 / rate));
        if (!(k0 < static_cast<double>(kMaxSettleIndex)))
            throw Error(ErrorKind::InvalidArgument, "model", "atom rule settles too late for certified summation");
        a.settle_index = std::max<std::size_t>(1, static_cast<std::size_t>(k0));
        while (a.deviation_at(a.settle_index) > 0.5) ++a.settle_index;
    }
    return a;
}

}  // namespace

double PowerRule::at(std::size_t k) const { return offset + scale * k_pow(k, power); }

double AtomAsymptotics::deviation_at(std::size_t k) const {
    if (deviation_scale == 0.0) return 0.0;
    return deviation_scale * std::pow(static_cast<double>(k), -deviation_rate);
}

AtomGenerator::AtomGenerator(Rule rule, double eps, std::optional<double> declared_growth)
    : rule_(std::move(rule)), eps_(eps), declared_growth_(declared_growth) {
    if (!(eps_ > 0.0) || !std::isfinite(eps_))
        throw Error(ErrorKind::InvalidArgument, "model", "eps must be a positive real");
    std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LineRule>) {
                check_rule(r.free, "free");
                if (!std::isfinite(r.s) || (r.t.is_finite() && !std::isfinite(r.t.value())))
                    throw Error(ErrorKind::InvalidArgument, "model", "line parameters must be finite reals or t = inf");
            } else if constexpr (std::is_same_v<T, ShiftedRealRule>) {
                check_rule(r.abscissa, "abscissa");
            } else {
                check_rule(r.re, "re");
                check_rule(r.im, "im");
            }
        },
        rule_);
    asymptotics_ = derive_asymptotics(lower(rule_));
}

AtomGenerator AtomGenerator::line(ExtendedReal t, double s, PowerRule free, double eps) {
    return AtomGenerator(LineRule{t, s, free}, eps);
}

AtomGenerator AtomGenerator::shifted_real(cplx shift, PowerRule abscissa, double eps) {
    return AtomGenerator(ShiftedRealRule{shift, abscissa}, eps);
}

AtomGenerator AtomGenerator::generic(PowerRule re, PowerRule im, double rotation, double eps) {
    return AtomGenerator(GenericRule{re, im, rotation}, eps);
}

GeneratorKind AtomGenerator::kind() const {
    switch (rule_.index()) {
        case 0: return GeneratorKind::Line;
        case 1: return GeneratorKind::ShiftedReal;
        default: return GeneratorKind::Generic;
    }
}

cplx AtomGenerator::atom(std::size_t k) const {
    return std::visit(
        [k](const auto& r) -> cplx {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LineRule>) {
                const double f = r.free.at(k);
                if (r.t.is_infinite()) return {f, -r.s};
                return {r.s + r.t.value() * f, f};
            } else if constexpr (std::is_same_v<T, ShiftedRealRule>) {
                return cplx{r.abscissa.at(k), 0.0} + r.shift;
            } else {
                const cplx w{r.re.at(k), r.im.at(k)};
                return r.rotation == 0.0 ? w : std::polar(1.0, r.rotation) * w;
            }
        },
        rule_);
}

Envelope AtomGenerator::envelope() const {
    const auto& a = asymptotics_;
    const double lead = std::abs(a.leading);
    const double dev = a.deviation_at(a.settle_index);
    Envelope env{lead * (1.0 - dev), lead * (1.0 + dev)};
    for (std::size_t k = 1; k < a.settle_index; ++k) {
        const double ratio = std::abs(atom(k)) / std::pow(static_cast<double>(k), a.growth);
        env.lower = std::min(env.lower, ratio);
        env.upper = std::max(env.upper, ratio);
    }
    return env;
}

void AtomGenerator::validate() const {
    const auto& a = asymptotics_;
    if (declared_growth_ && std::abs(*declared_growth_ - a.growth) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "model",
                    "declared growth exponent does not match the atom rule (rule gives " +
                        std::to_string(a.growth) + ")");
    // Beyond settle_index the lower envelope |λ| k^β (1 - E k^-r) is increasing,
    // so it suffices to find a cutoff where it clears eps and test the prefix.
    const double lead = std::abs(a.leading);
    auto lower_at = [&](std::size_t k) {
        return lead * std::pow(static_cast<double>(k), a.growth) * (1.0 - a.deviation_at(k));
    };
    std::size_t cutoff = a.settle_index;
    while (lower_at(cutoff) < eps_) {
        cutoff *= 2;
        if (cutoff > kMaxSettleIndex)
            throw Error(ErrorKind::InvalidArgument, "model", "eps cannot be certified within the index cap");
    }
    for (std::size_t k = 1; k < cutoff; ++k) {
        const double m = std::abs(atom(k));
        if (!(m >= eps_)) {
            std::ostringstream os;
            os << "|z_" << k << "| = " << m << " is below eps = " << eps_;
            throw Error(ErrorKind::EpsGapViolated, "model", os.str());
        }
    }
}

std::string AtomGenerator::describe() const {
    std::ostringstream os;
    os.precision(17);
    auto rule_str = [&](const PowerRule& p) {
        std::ostringstream r;
        r.precision(17);
        r << p.offset << "+" << p.scale << "*k^" << p.power;
        return r.str();
    };
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LineRule>) {
                os << "line(t=" << r.t.to_string() << ",s=" << r.s << ",free=" << rule_str(r.free) << ")";
            } else if constexpr (std::is_same_v<T, ShiftedRealRule>) {
                os << "shifted_real(shift=" << r.shift.real() << "," << r.shift.imag()
                   << ",abscissa=" << rule_str(r.abscissa) << ")";
            } else {
                os << "generic(re=" << rule_str(r.re) << ",im=" << rule_str(r.im) << ",rot=" << r.rotation << ")";
            }
        },
        rule_);
    os << ",eps=" << eps_;
    return os.str();
}

}  // namespace adjpair
