#include "adjpair/extended_real.hpp"

#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

double ExtendedReal::value() const {
    if (infinite_) throw Error(ErrorKind::InvalidArgument, "onedim", "value() called on infinite slope");
    return value_;
}

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

}  // namespace adjpair
