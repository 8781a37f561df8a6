#include "adjpair/vector.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace adjpair {

double inv_kpow(std::size_t k, double decay) {
    const auto x = static_cast<double>(k);
    if (decay == 1.0) return 1.0 / x;
    if (decay == 2.0) return 1.0 / (x * x);
    if (decay == 3.0) return 1.0 / (x * x * x);
    if (decay == 0.0) return 1.0;
    if (decay == 1.5) return 1.0 / (x * std::sqrt(x));
    if (decay == 2.5) return 1.0 / (x * x * std::sqrt(x));
    if (decay == 0.5) return 1.0 / std::sqrt(x);
    return std::pow(x, -decay);
}

ModelVector ModelVector::unit(std::size_t k, cplx value) {
    ModelVector v;
    v.set_finite(k, value);
    return v;
}

ModelVector ModelVector::power_tail(cplx coeff, double decay, std::size_t start, const DiagonalSymbol& symbol) {
    ModelVector v;
    v.add_tail(TailTerm{coeff * symbol.scale(), symbol.degree(), symbol.winding(), decay, std::max<std::size_t>(start, 1)});
    return v;
}

void ModelVector::set_finite(std::size_t k, cplx value) {
    if (value == cplx{}) finite_.erase(k);
    else finite_[k] = value;
}

void ModelVector::add_tail(const TailTerm& term) {
    if (term.coeff == cplx{}) return;
    tails_.push_back(term);
    tails_.back().start = std::max<std::size_t>(term.start, 1);
}

std::size_t ModelVector::extent() const {
    std::size_t e = finite_.empty() ? 0 : finite_.rbegin()->first;
    for (const auto& t : tails_) e = std::max(e, t.start);
    return e;
}

ModelVector& ModelVector::normalize() {
    std::vector<TailTerm> merged;
    for (const auto& t : tails_) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const TailTerm& m) { return m.same_shape(t); });
        if (it == merged.end()) merged.push_back(t);
        else it->coeff += t.coeff;
    }
    std::erase_if(merged, [](const TailTerm& t) { return t.coeff == cplx{}; });
    std::sort(merged.begin(), merged.end(), [](const TailTerm& a, const TailTerm& b) {
        return std::tie(a.degree, a.winding, a.decay, a.start) < std::tie(b.degree, b.winding, b.decay, b.start);
    });
    tails_ = std::move(merged);
    std::erase_if(finite_, [](const auto& kv) { return kv.second == cplx{}; });
    return *this;
}

cplx ModelVector::entry(std::size_t k, cplx atom) const {
    cplx v{};
    if (auto it = finite_.find(k); it != finite_.end()) v = it->second;
    if (tails_.empty()) return v;
    const double r = std::abs(atom);
    const cplx phase = atom / r;
    for (const auto& t : tails_)
        if (k >= t.start) v += t.coeff * monomial_value(r, phase, t.degree, t.winding) * inv_kpow(k, t.decay);
    return v;
}

ModelVector ModelVector::with_tail_symbol(const DiagonalSymbol& s) const {
    ModelVector out;
    for (const auto& t : tails_)
        out.add_tail(TailTerm{t.coeff * s.scale(), t.degree + s.degree(), t.winding + s.winding(), t.decay, t.start});
    return out;
}

ModelVector& ModelVector::operator+=(const ModelVector& o) {
    for (const auto& [k, val] : o.finite_) set_finite(k, finite_.count(k) ? finite_[k] + val : val);
    for (const auto& t : o.tails_) add_tail(t);
    return normalize();
}

ModelVector& ModelVector::operator-=(const ModelVector& o) { return *this += cplx{-1.0, 0.0} * o; }

ModelVector& ModelVector::operator*=(cplx c) {
    if (c == cplx{}) {
        finite_.clear();
        tails_.clear();
        return *this;
    }
    for (auto& [k, val] : finite_) val *= c;
    for (auto& t : tails_) t.coeff *= c;
    return *this;
}

bool ModelVector::operator==(const ModelVector& o) const {
    if (finite_ != o.finite_ || tails_.size() != o.tails_.size()) return false;
    for (std::size_t i = 0; i < tails_.size(); ++i)
        if (!tails_[i].same_shape(o.tails_[i]) || tails_[i].coeff != o.tails_[i].coeff) return false;
    return true;
}

}  // namespace adjpair
