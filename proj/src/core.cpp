#include "qdisc/core.hpp"

#include <cmath>

namespace qdisc {

void QContext::validate() const {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("q must lie in (0,1)");
    if (radial_levels < 2) throw InvalidArgument("radial_levels must be >= 2");
    if (angular_cutoff < 0) throw InvalidArgument("angular_cutoff must be >= 0");
    if (!(series_tol > 0.0)) throw InvalidArgument("series_tol must be positive");
    if (precision != Precision::Double) throw InvalidArgument("only double precision is supported");
}

double QContext::y(int n) const { return std::pow(q, 2.0 * n); }

}  // namespace qdisc
