#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace otk::stats {

/// Raised when a regression design has no variation in x.
class DegenerateDesignError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a two-sample test sees zero variance in both groups.
class DegenerateVarianceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MeanStd {
    double mean = 0.0;
    std::optional<double> stddev;  // sample std (n-1); absent when n == 1
    int n = 0;
};

/// Mean and sample standard deviation. Throws on empty input.
MeanStd mean_std(std::span<const double> values);

struct DataPoint {
    double x = 0.0;  // overthinking score, 0..10
    double y = 0.0;  // resolution rate, percent
};

struct RegressionResult {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double r_squared = 0.0;
    /// Two-sided p-value for H0: beta1 = 0, slope t-test with n-2 df.
    /// Absent when n < 3. Zero residual variance maps to p = 0 for a
    /// nonzero slope and p = 1 for a zero slope.
    std::optional<double> p_value;
    int n = 0;
    std::vector<double> residuals;
};

/// Ordinary least squares fit of y = beta0 + beta1 * x.
/// Throws DegenerateDesignError when all x are equal, std::invalid_argument
/// when n < 2 or any value is non-finite.
RegressionResult linear_regression(std::span<const DataPoint> points);

/// Student's t cumulative distribution, via the regularized incomplete beta
/// function. df must be > 0.
double t_cdf(double t, double df);

enum class TTestKind { welch, pooled };

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;  // two-sided
    double mean_a = 0.0;
    double mean_b = 0.0;
    double sd_a = 0.0;
    double sd_b = 0.0;
    int n_a = 0;
    int n_b = 0;
};

/// Two-sample t-test, Welch (unequal variances) by default, pooled variant
/// selectable. Each group needs n >= 2; both-groups-constant input raises
/// DegenerateVarianceError.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         TTestKind kind = TTestKind::welch);

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
    double point_estimate = 0.0;
    double z = 0.0;
    int n = 0;
};

/// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(int successes, int n, double z = 1.96);

}  // namespace otk::stats
