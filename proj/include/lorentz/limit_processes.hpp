#pragma once

#include <cstdint>
#include <vector>

#include "lorentz/path.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

/// E[local time at 0 by time 1] of a standard Brownian motion, via the
/// occupation-density normalization: sqrt(2/pi). For parameter sigma the
/// mean is this value divided by sigma. Cross-checked in the tests against
/// a quadrature oracle of (1/2eps) int P(|B_s|<eps) ds.
inline constexpr double kExpectedLocalTimeStd = 0.7978845608028654;

/// Brownian path with its local time at 0, built on a +-1 lattice walk so
/// that path and local time are exact at the discrete level: path value at
/// k/N is sigma*W_k/sqrt(N), local time gains 1/(sigma*sqrt(N)) at every
/// zero visit of W.
struct BrownianPathWithLocalTime {
    PathFunction path;
    PathFunction local_time;
    double sigma = 1.0;
    int N = 0;
    std::vector<std::int32_t> zero_steps;  // k >= 1 with W_k == 0
};

enum class IntensityTag { c_dL, c_dL_over_sqrt_t };

/// Poisson point process on (t0, 1], carried by the zero set of the
/// companion path. Points are stored ascending, with multiplicity.
struct PointProcess {
    std::vector<double> points;
    IntensityTag tag = IntensityTag::c_dL;

    std::int64_t count_geq(double t) const;
    std::int64_t count_in(double lo, double hi) const;  // (lo, hi]
};

BrownianPathWithLocalTime sample_bm_with_local_time(Rng& rng, int N, double sigma);

/// Per grid cell, the point count is Poisson(c dL) (or c dL / sqrt(t) at
/// the cell time), placed at the cell's zero-visit time. Cell randomness is
/// derived counter-based from one draw of `rng`, so truncation changes
/// never perturb other cells.
PointProcess sample_point_process(Rng& rng, const BrownianPathWithLocalTime& bmlt,
                                  double c, IntensityTag tag, double t0);

/// Sign assembly: Q_t = (-1)^(eta + #points >= t) |B_t|, the backwards
/// alternation started from t=1. Empty process: the single global sign
/// (-1)^eta.
PathFunction assemble_qrbm(const BrownianPathWithLocalTime& bmlt,
                           const PointProcess& pp, int eta);

/// Assembled sample plus its building blocks, for harnesses that also need
/// the flip points or the local time.
struct QrbmSample {
    PathFunction q;
    BrownianPathWithLocalTime bmlt;
    PointProcess pp;
    int eta = 0;
};

QrbmSample sample_qrbm_detailed(Rng& rng, int N, double c, double sigma);
QrbmSample sample_QRBM_detailed(Rng& rng, int N, double c, double sigma, double t0);

PathFunction sample_qrbm(Rng& rng, int N, double c, double sigma);

/// QRBM with intensity c t^{-1/2} dL truncated at t0 (pass t0 > 0;
/// 1/sqrt(N) is the conventional default). Below the truncation the path
/// carries one fair sign, switched at the last zero at or before t0 so that
/// sign changes stay on the zero set.
PathFunction sample_QRBM(Rng& rng, int N, double c, double sigma, double t0);

/// Tail of the bridge local time at 0:
/// P(L > y) = exp(-((|a|+|b|+sigma^2 y)^2 - (b-a)^2) / (2 sigma^2 (t1-t0))).
double bridge_local_time_tail(double a, double b, double t0, double t1,
                              double sigma, double y);

/// Phi(x / (sigma sqrt(t))): the N(0, t sigma^2) cdf.
double gaussian_marginal_cdf(double t, double sigma, double x);

}  // namespace lorentz
