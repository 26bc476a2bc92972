#include "lorentz/limit_processes.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz {

std::int64_t PointProcess::count_geq(double t) const {
    return points.end() - std::lower_bound(points.begin(), points.end(), t);
}

std::int64_t PointProcess::count_in(double lo, double hi) const {
    return std::upper_bound(points.begin(), points.end(), hi) -
           std::upper_bound(points.begin(), points.end(), lo);
}

BrownianPathWithLocalTime sample_bm_with_local_time(Rng& rng, int N, double sigma) {
    if (N < 1000) throw DomainError("grid size must be >= 1000");
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    BrownianPathWithLocalTime out;
    out.sigma = sigma;
    out.N = N;
    const double sq = std::sqrt(static_cast<double>(N));
    const double dl = 1.0 / (sigma * sq);

    out.path.t.resize(N + 1);
    out.path.v.resize(N + 1);
    out.local_time.t.resize(N + 1);
    out.local_time.v.resize(N + 1);
    out.local_time.interp = PathFunction::Interp::step;

    std::int64_t w = 0;
    double lt = 0.0;
    out.path.t[0] = 0.0;
    out.path.v[0] = 0.0;
    out.local_time.t[0] = 0.0;
    out.local_time.v[0] = 0.0;
    for (int k = 1; k <= N; ++k) {
        w += rng.sign();
        if (w == 0) {
            lt += dl;
            out.zero_steps.push_back(k);
        }
        const double t = static_cast<double>(k) / N;
        out.path.t[k] = t;
        out.path.v[k] = sigma * static_cast<double>(w) / sq;
        out.local_time.t[k] = t;
        out.local_time.v[k] = lt;
    }
    return out;
}

PointProcess sample_point_process(Rng& rng, const BrownianPathWithLocalTime& bmlt,
                                  double c, IntensityTag tag, double t0) {
    if (c < 0.0) throw DomainError("intensity constant must be >= 0");
    if (tag == IntensityTag::c_dL_over_sqrt_t && !(t0 > 0.0))
        throw TruncationRequired(
            "the 1/sqrt(t) intensity needs a positive truncation time");
    PointProcess pp;
    pp.tag = tag;
    if (c == 0.0) return pp;

    const std::uint64_t base = rng.next_u64();  // one draw; cells are counter-based
    const double dl = 1.0 / (bmlt.sigma * std::sqrt(static_cast<double>(bmlt.N)));
    for (std::int32_t k : bmlt.zero_steps) {
        const double t = static_cast<double>(k) / bmlt.N;
        if (t <= t0) continue;
        const double mean =
            tag == IntensityTag::c_dL ? c * dl : c * dl / std::sqrt(t);
        Rng cell(substream_seed(base, static_cast<std::uint64_t>(k), 0x9d));
        const int m = cell.poisson(mean);
        for (int i = 0; i < m; ++i) pp.points.push_back(t);
    }
    return pp;
}

PathFunction assemble_qrbm(const BrownianPathWithLocalTime& bmlt,
                           const PointProcess& pp, int eta) {
    PathFunction q;
    q.t = bmlt.path.t;
    q.v.resize(bmlt.path.v.size());
    const std::int64_t total = static_cast<std::int64_t>(pp.points.size());
    std::size_t idx = 0;  // points consumed (points < current t)
    for (std::size_t k = 0; k < q.t.size(); ++k) {
        const double t = q.t[k];
        while (idx < pp.points.size() && pp.points[idx] < t) ++idx;
        const std::int64_t geq = total - static_cast<std::int64_t>(idx);
        const int sign = ((eta + geq) % 2 == 0) ? 1 : -1;
        q.v[k] = sign * std::abs(bmlt.path.v[k]);
    }
    q.v[0] = 0.0;
    return q;
}

QrbmSample sample_qrbm_detailed(Rng& rng, int N, double c, double sigma) {
    QrbmSample s;
    s.bmlt = sample_bm_with_local_time(rng, N, sigma);
    s.pp = sample_point_process(rng, s.bmlt, c, IntensityTag::c_dL, 0.0);
    s.eta = rng.bernoulli(0.5) ? 1 : 0;
    s.q = assemble_qrbm(s.bmlt, s.pp, s.eta);
    return s;
}

QrbmSample sample_QRBM_detailed(Rng& rng, int N, double c, double sigma, double t0) {
    QrbmSample s;
    s.bmlt = sample_bm_with_local_time(rng, N, sigma);
    s.pp = sample_point_process(rng, s.bmlt, c, IntensityTag::c_dL_over_sqrt_t, t0);
    s.eta = rng.bernoulli(0.5) ? 1 : 0;
    s.q = assemble_qrbm(s.bmlt, s.pp, s.eta);

    // Below the truncation the accumulated flips randomize the sign; carry
    // one fair sign there, switched at the last zero at or before t0 so the
    // path stays continuous.
    if (rng.bernoulli(0.5)) {
        std::int32_t z = 0;  // W_0 = 0 is always a zero
        for (std::int32_t k : s.bmlt.zero_steps) {
            if (static_cast<double>(k) / N <= t0)
                z = k;
            else
                break;
        }
        for (std::int32_t k = 0; k <= z; ++k) s.q.v[k] = -s.q.v[k];
        s.q.v[0] = 0.0;
    }
    return s;
}

PathFunction sample_qrbm(Rng& rng, int N, double c, double sigma) {
    return sample_qrbm_detailed(rng, N, c, sigma).q;
}

PathFunction sample_QRBM(Rng& rng, int N, double c, double sigma, double t0) {
    return sample_QRBM_detailed(rng, N, c, sigma, t0).q;
}

double bridge_local_time_tail(double a, double b, double t0, double t1,
                              double sigma, double y) {
    if (!(t1 > t0)) throw DomainError("bridge needs t1 > t0");
    if (y < 0.0) throw DomainError("local time level must be >= 0");
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    const double s = std::abs(a) + std::abs(b) + sigma * sigma * y;
    const double num = s * s - (b - a) * (b - a);
    const double val = std::exp(-num / (2.0 * sigma * sigma * (t1 - t0)));
    return std::min(1.0, std::max(0.0, val));
}

double gaussian_marginal_cdf(double t, double sigma, double x) {
    if (!(t > 0.0) || !(sigma > 0.0)) throw DomainError("need t > 0 and sigma > 0");
    const double z = x / (sigma * std::sqrt(t));
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

}  // namespace lorentz
