#pragma once

#include <optional>

#include "adjpair/error.hpp"
#include "adjpair/model.hpp"

namespace fixtures {

using namespace adjpair;

/// z_k = k + i, ξ_k = 1/k.
inline DiscreteModel k_plus_i(Tolerance tol = {}) {
    return build_model(AtomGenerator::shifted_real({0.0, 1.0}, PowerRule{0, 1, 1}, 0.5),
                       ModelVector::power_tail(1.0, 1.0), tol);
}

/// Atoms on x - 2y = 3 with y_k = k, ξ_k = 1/k.
inline DiscreteModel line_t2_s3() {
    return build_model(AtomGenerator::line(ExtendedReal::finite(2.0), 3.0, PowerRule{0, 1, 1}, 0.5),
                       ModelVector::power_tail(1.0, 1.0));
}

/// z_k = k + ik², ξ_k = 1/k².
inline DiscreteModel parabola() {
    return build_model(AtomGenerator::generic(PowerRule{0, 1, 1}, PowerRule{0, 1, 2}, 0.0, 0.5),
                       ModelVector::power_tail(1.0, 2.0));
}

/// z_k = k, ξ_k = 1/k.
inline DiscreteModel real_k() {
    return build_model(AtomGenerator::shifted_real({0.0, 0.0}, PowerRule{0, 1, 1}, 0.5),
                       ModelVector::power_tail(1.0, 1.0));
}

/// z_k = e^{iθ}(k + i), ξ_k = 1/k.
inline DiscreteModel rotated(double theta) {
    return build_model(AtomGenerator::generic(PowerRule{0, 1, 1}, PowerRule{1, 0, 1}, theta, 0.5),
                       ModelVector::power_tail(1.0, 1.0));
}

inline double distance(const DiscreteModel& m, const ModelVector& a, const ModelVector& b) {
    return norm(m, a - b).value;
}

/// Kind of the Error thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace fixtures
