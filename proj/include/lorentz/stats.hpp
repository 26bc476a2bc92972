#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/path.hpp"

namespace lorentz {

struct TestReport {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::optional<double> p_value;
    bool pass = false;
    double runtime_s = 0.0;
};

/// Empirical cdf (right-continuous step function of the sorted sample).
class Ecdf {
  public:
    explicit Ecdf(std::vector<double> data);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

/// Survival function of the asymptotic Kolmogorov distribution,
/// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

/// sup|F_hat - F| against a right-continuous cdf, tie- and atom-aware.
double ks_statistic_one_sample(std::vector<double> data,
                               const std::function<double(double)>& cdf);

/// One-sample Kolmogorov-Smirnov test with the asymptotic p-value. Needs at
/// least 50 samples.
TestReport ks_one_sample(const std::string& name, std::vector<double> data,
                         const std::function<double(double)>& cdf,
                         double threshold);

/// Two-sample KS with the effective-size correction m1 m2 / (m1 + m2).
TestReport ks_two_sample(const std::string& name, std::vector<double> a,
                         std::vector<double> b, double threshold);

/// sigma_hat = sample standard deviation of S_n / sqrt(n).
double estimate_sigma(const std::vector<double>& S_n, std::int64_t n);

/// c0_hat = mean(L_n / sqrt(n)) / E[L_1(sigma)], the wall-visit rate
/// relative to the Brownian local-time calibration.
double estimate_c0(const std::vector<double>& L_n, std::int64_t n, double sigma);

/// sign(path(s) * path(t)) in {-1, 0, +1}.
int sign_change_stat(const PathFunction& path, double s, double t);

/// Local limit theorem check at level b: compares the lattice- or
/// cell-binned point probability of S_n near b sqrt(n) with
/// phi(b/sigma)/sigma, within 4 standard errors under the null value.
/// lattice_parity: walk mode, which bins {b_n, b_n + 1} and halves.
TestReport llt_check(const std::string& name, const std::vector<double>& S_n,
                     std::int64_t n, double b, double sigma, bool lattice_parity);

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y);

/// Order-independent mean via pairwise summation.
double pairwise_mean(const std::vector<double>& x);

}  // namespace lorentz
