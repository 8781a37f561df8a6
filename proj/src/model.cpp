#include "adjpair/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void Tolerance::validate() const {
    if (!(inner_product > 0.0) || !(residual > 0.0) || !(subspace > 0.0) || n_max == 0)
        throw Error(ErrorKind::InvalidArgument, "model", "tolerances and the truncation cap must be positive");
    if (inner_product > residual)
        throw Error(ErrorKind::InvalidArgument, "model", "inner_product tolerance must not exceed residual tolerance");
}

std::string describe(const ModelVector& v) {
    std::string out = "{";
    for (const auto& [k, c] : v.finite()) out += std::to_string(k) + ":" + fmt(c.real()) + "," + fmt(c.imag()) + ";";
    out += "|";
    for (const auto& t : v.tails())
        out += fmt(t.coeff.real()) + "," + fmt(t.coeff.imag()) + "," + std::to_string(t.degree) + "," +
               std::to_string(t.winding) + "," + fmt(t.decay) + "," + std::to_string(t.start) + ";";
    return out + "}";
}

DiscreteModel::DiscreteModel(AtomGenerator g, ModelVector xi, Tolerance tol)
    : generator_(std::move(g)), xi_(std::move(xi)), tolerance_(tol) {
    const std::string canon = generator_.describe() + "|xi=" + describe(xi_) + "|tol=" + fmt(tolerance_.inner_product) +
                              "," + fmt(tolerance_.residual) + "," + fmt(tolerance_.subspace) + "," +
                              std::to_string(tolerance_.n_max);
    digest_ = fnv1a(canon);
}

std::string DiscreteModel::digest_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest_));
    return buf;
}

DiscreteModel build_model(AtomGenerator generator, ModelVector xi, Tolerance tolerance) {
    tolerance.validate();
    generator.validate();
    xi.normalize();
    const double beta = generator.growth();
    for (const auto& t : xi.tails())
        if (!(t.l2_margin(beta) > 0.0))
            throw Error(ErrorKind::XiNotL2, "model",
                        "xi is not square summable: tail decay " + fmt(t.decay) + " at growth " + fmt(beta));
    bool outside_domain = false;
    for (const auto& t : xi.tails())
        if (!(t.l2_margin(beta, 1) > 0.0)) outside_domain = true;
    if (!outside_domain)
        throw Error(ErrorKind::XiInDomainOfR, "model", "xi lies in the domain of R, so U ∩ D(R) ≠ {0}");

    DiscreteModel m(std::move(generator), std::move(xi), tolerance);
    m.kernel_a_ = {m.xi_};
    m.kernel_b_ = {apply_symbol(m, DiscreteModel::W_star(), m.xi_)};
    m.xi_norm2_ = certified_inner_product(m.generator_, m.xi_, m.xi_, tolerance.inner_product, tolerance.n_max);
    return m;
}

bool in_domain(const DiscreteModel& model, const ModelVector& v, const DiagonalSymbol& symbol) {
    for (const auto& t : v.tails())
        if (!(t.l2_margin(model.growth(), symbol.degree()) > 0.0)) return false;
    return true;
}

ModelVector apply_symbol(const DiscreteModel& model, const DiagonalSymbol& symbol, const ModelVector& v) {
    if (!in_domain(model, v, symbol))
        throw Error(ErrorKind::DomainViolation, "model",
                    "vector is not in the domain of the multiplication by " + symbol.to_string());
    ModelVector out = v.with_tail_symbol(symbol);
    const auto& gen = model.generator();
    for (const auto& [k, c] : v.finite()) out.set_finite(k, c * symbol.evaluate(gen.atom(k)));
    return out.normalize();
}

CertifiedComplex inner_product(const DiscreteModel& model, const ModelVector& v, const ModelVector& w,
                               std::optional<double> tol) {
    return certified_inner_product(model.generator(), v, w, tol.value_or(model.tolerance().inner_product),
                                   model.tolerance().n_max);
}

CertifiedReal norm(const DiscreteModel& model, const ModelVector& v, std::optional<double> tol) {
    const auto sq = inner_product(model, v, v, tol);
    const double s = std::max(sq.value.real(), 0.0);
    const double value = std::sqrt(s);
    // |√a - √b| ≤ min(√δ, δ/√a) for |a-b| ≤ δ
    const double bound = value > 0.0 ? std::min(std::sqrt(sq.bound), sq.bound / value) : std::sqrt(sq.bound);
    return {value, bound, sq.terms};
}

}  // namespace adjpair
