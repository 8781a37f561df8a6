#include "adjpair/summation.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

struct PairTerm {
    cplx coeff;
    int degree;
    int winding;
    double decay;
};

void require_l2(const ModelVector& v, double growth) {
    for (const auto& t : v.tails())
        if (!(t.l2_margin(growth) > 0.0)) {
            std::ostringstream os;
            os << "vector is not square summable: tail with degree " << t.degree << " and decay " << t.decay
               << " at growth " << growth;
            throw Error(ErrorKind::DomainViolation, "model", os.str());
        }
}

std::vector<PairTerm> pair_terms(const ModelVector& v, const ModelVector& w) {
    std::vector<PairTerm> out;
    for (const auto& a : v.tails())
        for (const auto& b : w.tails()) {
            PairTerm p{a.coeff * std::conj(b.coeff), a.degree + b.degree, a.winding - b.winding, a.decay + b.decay};
            auto it = std::find_if(out.begin(), out.end(), [&](const PairTerm& q) {
                return q.degree == p.degree && q.winding == p.winding && q.decay == p.decay;
            });
            if (it == out.end()) out.push_back(p);
            else it->coeff += p.coeff;
        }
    return out;
}

// max of |1+y|^x over |y| ≤ eps
double disk_max(double eps, double x) { return std::max(std::pow(1.0 - eps, x), std::pow(1.0 + eps, x)); }

// |(1+η)^a (1+η̄)^b - 1 - aη - bη̄| ≤ K |η|² on |η| ≤ eps
double second_order_constant(double eps, double a, double b) {
    return std::abs(a * (a - 1.0)) / 2.0 * disk_max(eps, a - 2.0) * disk_max(eps, b) +
           std::abs(b * (b - 1.0)) / 2.0 * disk_max(eps, b - 2.0) + std::abs(a) * std::abs(b) * disk_max(eps, b - 1.0);
}

// Σ_{k>n} coeff |z_k|^d (z_k/|z_k|)^p k^-decay, n ≥ settle_index.
// With z_k = λ k^β (1+η_k) the summand is coeff Λ k^-e (1+η)^a (1+η̄)^b,
// a = (d+p)/2, b = (d-p)/2. The constant and the first-order terms in η are
// Hurwitz tails because η_k is a finite sum of powers of k.
CertifiedComplex pair_tail(const AtomAsymptotics& as, const PairTerm& t, std::size_t n) {
    const double lead_mod = std::abs(as.leading);
    const cplx lead_phase = as.leading / lead_mod;
    const cplx big_lambda = monomial_value(lead_mod, lead_phase, t.degree, t.winding);
    const double e = t.decay - as.growth * t.degree;
    const double a = 0.5 * (t.degree + t.winding);
    const double b = 0.5 * (t.degree - t.winding);

    const CertifiedReal zeroth = power_tail_sum(e, n);
    cplx sum = zeroth.value;
    double err = zeroth.bound;
    if (as.deviation_scale > 0.0) {
        for (const auto& c : as.corrections) {
            const cplx weight = a * c.coeff + b * std::conj(c.coeff);
            if (weight == cplx{}) continue;
            const CertifiedReal first = power_tail_sum(e + c.rate, n);
            sum += weight * first.value;
            err += std::abs(weight) * first.bound;
        }
        const double eps_n = as.deviation_at(n);
        const double r = as.deviation_rate;
        const double big_e = as.deviation_scale;
        const double expo = e + 2.0 * r;
        err += second_order_constant(eps_n, a, b) * big_e * big_e * std::pow(static_cast<double>(n), 1.0 - expo) /
               (expo - 1.0);
    }
    const cplx scale = t.coeff * big_lambda;
    const cplx value = scale * sum;
    return {value, std::abs(scale) * err + 8.0 * kUnitRoundoff * std::abs(value), 0};
}

CertifiedComplex tail_estimate(const AtomAsymptotics& as, const std::vector<PairTerm>& pairs, std::size_t n) {
    CertifiedComplex total;
    for (const auto& p : pairs) {
        const auto t = pair_tail(as, p, n);
        total.value += t.value;
        total.bound += t.bound;
    }
    return total;
}

}  // namespace

CertifiedReal power_tail_sum(double exponent, std::size_t n) {
    if (!(exponent > 1.0))
        throw Error(ErrorKind::DomainViolation, "model", "power tail with exponent <= 1 diverges");
    // Euler–Maclaurin at M = n+1 with Bernoulli numbers B2, B4, B6; the error
    // is bounded by the B8 term because all derivatives of x^-e are monotone.
    const double m = static_cast<double>(n) + 1.0;
    const double e = exponent;
    const double base = std::pow(m, -e);
    double value = m * base / (e - 1.0) + 0.5 * base;
    const double bern[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
    double rising = e;        // (e)_{2j-1}
    double factorial = 2.0;   // (2j)!
    double mpow = base / m;   // m^{-e-2j+1}
    double next = 0.0;
    for (int j = 1; j <= 4; ++j) {
        const double term = bern[j - 1] / factorial * rising * mpow;
        if (j < 4) value += term;
        else next = std::abs(term);
        rising *= (e + 2.0 * j - 1.0) * (e + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        mpow /= m * m;
    }
    return {value, 2.0 * next + 4.0 * kUnitRoundoff * value, 0};
}

namespace {

struct Head {
    CompensatedComplexSum sum;
    double abs_sum = 0.0;
    std::size_t done = 0;

    void extend(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w, std::size_t n) {
        const bool same = &v == &w;
        for (std::size_t k = done + 1; k <= n; ++k) {
            const cplx z = gen.atom(k);
            const cplx vk = v.entry(k, z);
            const cplx wk = same ? vk : w.entry(k, z);
            sum.add(vk * std::conj(wk));
            abs_sum += std::abs(vk) * std::abs(wk);
        }
        done = std::max(done, n);
    }
};

CertifiedComplex finish(const AtomAsymptotics& as, const std::vector<PairTerm>& pairs, const Head& head,
                        const ModelVector& v, const ModelVector& w) {
    const double flops = 16.0 + 4.0 * static_cast<double>(v.tails().size() + w.tails().size());
    const cplx value = head.sum.value();
    const auto tail = pairs.empty() ? CertifiedComplex{} : tail_estimate(as, pairs, head.done);
    const double rounding = flops * kUnitRoundoff * head.abs_sum + 2.0 * kUnitRoundoff * std::abs(value);
    return {value + tail.value, tail.bound + rounding, head.done};
}

std::size_t minimal_cutoff(const AtomAsymptotics& as, const ModelVector& v, const ModelVector& w) {
    return std::max<std::size_t>({as.settle_index, v.extent(), w.extent()});
}

}  // namespace

CertifiedComplex certified_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w,
                                         double tol, std::size_t n_max) {
    const auto& as = gen.asymptotics();
    require_l2(v, as.growth);
    require_l2(w, as.growth);
    const auto pairs = pair_terms(v, w);

    std::size_t n = std::max<std::size_t>(256, minimal_cutoff(as, v, w));
    if (!pairs.empty()) {
        while (tail_estimate(as, pairs, n).bound > 0.5 * tol) {
            if (n > n_max / 2) {
                std::ostringstream os;
                os << "tail bound above " << tol << " at cutoff " << n_max;
                throw Error(ErrorKind::TailBoundFailure, "model", os.str());
            }
            n *= 2;
        }
    }
    Head head;
    for (;;) {
        head.extend(gen, v, w, n);
        const auto result = finish(as, pairs, head, v, w);
        if (result.bound <= tol) return result;
        if (n > n_max / 2) {
            std::ostringstream os;
            os << "certified bound " << result.bound << " above " << tol << " at cutoff " << n;
            throw Error(ErrorKind::TailBoundFailure, "model", os.str());
        }
        n *= 2;
    }
}

CertifiedComplex truncated_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w,
                                         std::size_t n) {
    const auto& as = gen.asymptotics();
    require_l2(v, as.growth);
    require_l2(w, as.growth);
    Head head;
    head.extend(gen, v, w, std::max(n, minimal_cutoff(as, v, w)));
    return finish(as, pair_terms(v, w), head, v, w);
}

cplx partial_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w, std::size_t n) {
    CompensatedComplexSum sum;
    for (std::size_t k = 1; k <= n; ++k) {
        const cplx z = gen.atom(k);
        sum.add(v.entry(k, z) * std::conj(w.entry(k, z)));
    }
    return sum.value();
}

std::vector<cplx> partial_gram(const AtomGenerator& gen, std::span<const ModelVector> vs, std::size_t n) {
    const std::size_t m = vs.size();
    std::vector<CompensatedComplexSum> acc(m * m);
    std::vector<cplx> entries(m);
    for (std::size_t k = 1; k <= n; ++k) {
        const cplx z = gen.atom(k);
        for (std::size_t i = 0; i < m; ++i) entries[i] = vs[i].entry(k, z);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) acc[i * m + j].add(entries[i] * std::conj(entries[j]));
    }
    std::vector<cplx> g(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            g[i * m + j] = acc[i * m + j].value();
            g[j * m + i] = std::conj(g[i * m + j]);
        }
    return g;
}

double tail_norm_squared_bound(const AtomGenerator& gen, const ModelVector& v, std::size_t n) {
    const double beta = gen.growth();
    require_l2(v, beta);
    const Envelope env = gen.envelope();
    double amplitude = 0.0;
    double e_min = std::numeric_limits<double>::infinity();
    for (const auto& t : v.tails()) {
        const double c = t.degree >= 0 ? env.upper : env.lower;
        amplitude += std::abs(t.coeff) * std::pow(c, t.degree);
        e_min = std::min(e_min, t.decay - beta * t.degree);
    }
    double finite_part = 0.0;
    for (auto it = v.finite().upper_bound(n); it != v.finite().end(); ++it) finite_part += std::norm(it->second);
    if (!v.has_tail()) return finite_part;
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    const double tail = amplitude * amplitude * std::pow(nn, 1.0 - 2.0 * e_min) / (2.0 * e_min - 1.0);
    return finite_part > 0.0 ? 2.0 * finite_part + 2.0 * tail : tail;
}

}  // namespace adjpair
