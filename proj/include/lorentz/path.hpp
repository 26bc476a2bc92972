#pragma once

#include <vector>

namespace lorentz {

/// A function on [t.front(), t.back()] given by values on a grid, with
/// either piecewise-linear continuous interpolation or right-continuous
/// step interpolation (used for local-time paths).
struct PathFunction {
    enum class Interp { linear, step };

    std::vector<double> t;
    std::vector<double> v;
    Interp interp = Interp::linear;

    double operator()(double x) const;
    double front_time() const { return t.front(); }
    double back_time() const { return t.back(); }
};

}  // namespace lorentz
