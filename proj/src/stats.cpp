#include "lorentz/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"
#include "lorentz/limit_processes.hpp"

namespace lorentz {

Ecdf::Ecdf(std::vector<double> data) : sorted_(std::move(data)) {
    if (sorted_.empty()) throw TooFewSamples("empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
}

double kolmogorov_q(double x) {
    if (x <= 0.05) return 1.0;
    double q = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
        q += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, q));
}

double ks_statistic_one_sample(std::vector<double> data,
                               const std::function<double(double)>& cdf) {
    const std::size_t m = data.size();
    if (m == 0) throw TooFewSamples("empty sample");
    std::sort(data.begin(), data.end());
    // sup |F_hat - F| for a right-continuous reference cdf. The left limit
    // of F at a data value is probed just below it, which keeps reference
    // laws with atoms at data values (lattice local times) measured
    // correctly instead of charging the whole atom as distance.
    double d = 0.0;
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j < m && data[j] == data[i]) ++j;  // tie block [i, j)
        const double x = data[i];
        const double f = cdf(x);
        const double f_left = cdf(x - 1e-9 * (1.0 + std::abs(x)));
        const double lo = static_cast<double>(i) / m;  // F_hat just below
        const double hi = static_cast<double>(j) / m;  // F_hat at the value
        d = std::max({d, std::abs(hi - f), std::abs(f_left - lo)});
        i = j;
    }
    return d;
}

TestReport ks_one_sample(const std::string& name, std::vector<double> data,
                         const std::function<double(double)>& cdf,
                         double threshold) {
    const std::size_t m = data.size();
    if (m < 50) throw TooFewSamples(name + ": need >= 50 samples");
    const double d = ks_statistic_one_sample(std::move(data), cdf);
    TestReport r;
    r.name = name;
    r.statistic = d;
    r.threshold = threshold;
    r.p_value = kolmogorov_q(std::sqrt(static_cast<double>(m)) * d);
    r.pass = d < threshold;
    return r;
}

TestReport ks_two_sample(const std::string& name, std::vector<double> a,
                         std::vector<double> b, double threshold) {
    if (a.size() < 50 || b.size() < 50)
        throw TooFewSamples(name + ": need >= 50 samples per side");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double ma = static_cast<double>(a.size());
    const double mb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const double x = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i]
                                                                           : b[j];
        while (i < a.size() && a[i] == x) ++i;  // consume ties on both sides
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / ma -
                                 static_cast<double>(j) / mb));
    }
    TestReport r;
    r.name = name;
    r.statistic = d;
    r.threshold = threshold;
    const double me = ma * mb / (ma + mb);
    r.p_value = kolmogorov_q(std::sqrt(me) * d);
    r.pass = d < threshold;
    return r;
}

double estimate_sigma(const std::vector<double>& S_n, std::int64_t n) {
    if (S_n.size() < 2) throw TooFewSamples("estimate_sigma needs >= 2 samples");
    const double sq = std::sqrt(static_cast<double>(n));
    std::vector<double> scaled(S_n.size());
    for (std::size_t i = 0; i < S_n.size(); ++i) scaled[i] = S_n[i] / sq;
    const double mean = pairwise_mean(scaled);
    double ss = 0.0;
    for (double s : scaled) ss += (s - mean) * (s - mean);
    return std::sqrt(ss / static_cast<double>(scaled.size() - 1));
}

double estimate_c0(const std::vector<double>& L_n, std::int64_t n, double sigma) {
    if (L_n.size() < 2) throw TooFewSamples("estimate_c0 needs >= 2 samples");
    std::vector<double> scaled(L_n.size());
    const double sq = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < L_n.size(); ++i) scaled[i] = L_n[i] / sq;
    const double expected_l1 = kExpectedLocalTimeStd / sigma;
    return pairwise_mean(scaled) / expected_l1;
}

int sign_change_stat(const PathFunction& path, double s, double t) {
    if (!(0.0 < s && s < t && t <= 1.0)) throw DomainError("need 0 < s < t <= 1");
    const double prod = path(s) * path(t);
    return prod > 0.0 ? 1 : (prod < 0.0 ? -1 : 0);
}

TestReport llt_check(const std::string& name, const std::vector<double>& S_n,
                     std::int64_t n, double b, double sigma, bool lattice_parity) {
    if (S_n.size() < 100) throw TooFewSamples(name + ": need >= 100 samples");
    const double sq = std::sqrt(static_cast<double>(n));
    const double bn = std::floor(b * sq);
    std::int64_t hits = 0;
    for (double s : S_n) {
        const double cell = std::floor(s);
        if (lattice_parity ? (cell == bn || cell == bn + 1.0) : cell == bn) ++hits;
    }
    const double m = static_cast<double>(S_n.size());
    const double factor = lattice_parity ? 0.5 : 1.0;
    const double phat = static_cast<double>(hits) / m;
    const double target = std::exp(-0.5 * (b / sigma) * (b / sigma)) /
                          (std::sqrt(2.0 * M_PI) * sigma);
    // standard error under the null point probability
    const double p0 = std::min(1.0, target / (factor * sq));
    const double se = std::sqrt(p0 * (1.0 - p0) / m);
    const double stat = sq * factor * phat;
    TestReport r;
    r.name = name;
    r.statistic = stat;
    r.threshold = 4.0 * sq * factor * se;
    r.pass = std::abs(stat - target) <= r.threshold;
    return r;
}

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw TooFewSamples("pearson_correlation needs matched samples");
    const double mx = pairwise_mean(x), my = pairwise_mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

double pairwise_sum(const double* x, std::size_t m) {
    if (m <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += x[i];
        return s;
    }
    const std::size_t half = m / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, m - half);
}

}  // namespace

double pairwise_mean(const std::vector<double>& x) {
    if (x.empty()) throw TooFewSamples("mean of empty sample");
    return pairwise_sum(x.data(), x.size()) / static_cast<double>(x.size());
}

}  // namespace lorentz
