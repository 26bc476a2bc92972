#include "lorentz/path.hpp"

#include <algorithm>

#include "lorentz/errors.hpp"

namespace lorentz {

double PathFunction::operator()(double x) const {
    if (t.empty()) throw DomainError("empty path");
    if (x <= t.front()) return v.front();
    if (x >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    // grid-point evaluation is exact: upper_bound lands one past an exact hit
    if (t[i - 1] == x) return v[i - 1];
    if (interp == Interp::step) return v[i - 1];
    const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
}

}  // namespace lorentz
