#pragma once

#include <string>

namespace adjpair {

/// A real number or the point ∞ (used for line slopes t and the matching
/// Möbius parameter). Arithmetic on the infinite value is never performed
/// through IEEE infinities.
class ExtendedReal {
public:
    static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    /// Finite value; throws InvalidArgument on ∞.
    double value() const;

    bool operator==(const ExtendedReal& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }

    std::string to_string() const;

private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

}  // namespace adjpair
