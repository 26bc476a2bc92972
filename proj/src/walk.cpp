#include "lorentz/walk.hpp"

#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz {

void WalkConfig::validate() const {
    if (n < 1) throw ConfigError("walk length must be >= 1");
    if (regime == Regime::no_wall) throw ConfigError("walk has no no_wall regime");
    for (std::int64_t k = 1; k <= n; ++k) {
        const double e = eps_at(k);
        if (e < 0.0 || e > 1.0)
            throw ConfigError("walk eps outside [0,1] at step " + std::to_string(k));
        if (regime == Regime::double_array) break;  // constant over the horizon
    }
}

TrajectoryRecord run_walk(Rng& rng, const WalkConfig& config) {
    const std::int64_t n = config.n;
    TrajectoryRecord rec;
    rec.kappa.reserve(n);
    rec.S.reserve(n);
    rec.position.reserve(n);
    rec.L.reserve(n);
    rec.crossed.reserve(n);

    double prev = 0.0;                                   // S_{k-1}
    double cur = rng.sign() > 0 ? 1.0 : -1.0;            // S_0 = +-1
    rec.x0 = cur;
    double S_run = 0.0;
    std::int32_t L_run = 0;

    for (std::int64_t k = 0; k < n; ++k) {
        double next;
        bool crossed = false;
        if (cur != 0.0) {
            next = cur + (rng.sign() > 0 ? 1.0 : -1.0);
        } else {
            // at the origin: continue across the wall with probability eps
            crossed = rng.bernoulli(config.eps_at(k));
            next = crossed ? -prev : prev;
        }
        prev = cur;
        cur = next;
        const double kappa = cur - prev;
        S_run += kappa;
        const bool zero_visit = cur == 0.0;
        L_run += zero_visit ? 1 : 0;
        rec.kappa.push_back(kappa);
        rec.S.push_back(S_run);
        rec.position.push_back(cur);
        rec.L.push_back(L_run);
        // the crossing decided at the zero visit materializes one step later;
        // attribute it to the zero-visit step, a subset of the L jumps
        rec.crossed.push_back(0);
        if (crossed) {
            rec.crossed[k - 1] = 1;  // the zero visit happened at step k (>=1)
            rec.crossing_steps.push_back(k);
        }
    }
    return rec;
}

double chain_plus_probability(const std::vector<double>& p) {
    double prod = 1.0;
    for (double pk : p) {
        if (pk < 0.0 || pk > 1.0) throw DomainError("flip probability outside [0,1]");
        prod *= 1.0 - 2.0 * pk;
    }
    return 0.5 * (1.0 + prod);
}

namespace {

double log_poisson_pmf(double lambda, std::int64_t k) {
    return static_cast<double>(k) * std::log(lambda) - lambda -
           std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

LeCamResult le_cam_bound(const std::vector<double>& p) {
    const std::size_t m = p.size();
    if (m > 10000) throw SizeExceeded("le_cam_bound: more than 1e4 probabilities");

    double lambda = 0.0, sumsq = 0.0;
    for (double pj : p) {
        if (pj < 0.0 || pj > 1.0) throw DomainError("probability outside [0,1]");
        lambda += pj;
        sumsq += pj * pj;
    }

    // Poisson-binomial pmf by convolution
    std::vector<double> pmf(m + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t hi = 0;
    for (double pj : p) {
        ++hi;
        for (std::size_t k = hi; k >= 1; --k)
            pmf[k] = pmf[k] * (1.0 - pj) + pmf[k - 1] * pj;
        pmf[0] *= 1.0 - pj;
    }

    double tv = 0.0, pois_cdf = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        const double pois =
            lambda == 0.0 ? (k == 0 ? 1.0 : 0.0)
                          : std::exp(log_poisson_pmf(lambda, static_cast<std::int64_t>(k)));
        tv += std::abs(pmf[k] - pois);
        pois_cdf += pois;
    }
    tv += std::max(0.0, 1.0 - pois_cdf);  // Poisson mass beyond m

    return {tv, 2.0 * sumsq};
}

PathFunction walk_scaled_path(const TrajectoryRecord& record, std::int64_t n) {
    if (record.steps() < n) throw DomainError("record shorter than n");
    const double sq = std::sqrt(static_cast<double>(n));
    PathFunction p;
    p.t.resize(n + 1);
    p.v.resize(n + 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        p.t[k] = static_cast<double>(k) / static_cast<double>(n);
        p.v[k] = record.position_at(k) / sq;
    }
    return p;
}

}  // namespace lorentz
