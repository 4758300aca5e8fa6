#include "otk/stats.hpp"

#include <algorithm>
#include <cmath>

namespace otk::stats {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

double sample_variance(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

double lbeta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for the incomplete beta function, modified Lentz.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double ibeta_reg(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double two_sided_p(double t, double df) {
    double p = 2.0 * (1.0 - t_cdf(std::fabs(t), df));
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_std: empty input");
    require_finite(values, "mean_std");
    MeanStd out;
    out.n = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        out.stddev = std::sqrt(sample_variance(values, out.mean));
    }
    return out;
}

RegressionResult linear_regression(std::span<const DataPoint> points) {
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("linear_regression: need at least 2 points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("linear_regression: non-finite point");
        }
        mean_x += p.x;
        mean_y += p.y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, sst = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - mean_x;
        const double dy = p.y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        sst += dy * dy;
    }
    if (sxx <= 0.0) throw DegenerateDesignError("linear_regression: all x values equal");

    RegressionResult r;
    r.n = static_cast<int>(n);
    r.beta1 = sxy / sxx;
    r.beta0 = mean_y - r.beta1 * mean_x;
    r.residuals.reserve(n);
    double ssr = 0.0;
    for (const auto& p : points) {
        const double e = p.y - (r.beta0 + r.beta1 * p.x);
        r.residuals.push_back(e);
        ssr += e * e;
    }
    r.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 1.0;

    if (n >= 3) {
        const double se2 = (ssr / static_cast<double>(n - 2)) / sxx;
        if (se2 > 0.0) {
            const double t = r.beta1 / std::sqrt(se2);
            r.p_value = two_sided_p(t, static_cast<double>(n - 2));
        } else {
            r.p_value = r.beta1 == 0.0 ? 1.0 : 0.0;
        }
    }
    return r;
}

double t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("t_cdf: df must be > 0");
    if (!std::isfinite(t)) throw std::invalid_argument("t_cdf: non-finite t");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * ibeta_reg(df / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b, TTestKind kind) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("welch_t_test: each group needs n >= 2");
    }
    require_finite(a, "welch_t_test");
    require_finite(b, "welch_t_test");

    TTestResult r;
    r.n_a = static_cast<int>(a.size());
    r.n_b = static_cast<int>(b.size());
    const auto ma = mean_std(a);
    const auto mb = mean_std(b);
    r.mean_a = ma.mean;
    r.mean_b = mb.mean;
    r.sd_a = *ma.stddev;
    r.sd_b = *mb.stddev;

    const double va = r.sd_a * r.sd_a;
    const double vb = r.sd_b * r.sd_b;
    if (va == 0.0 && vb == 0.0) {
        throw DegenerateVarianceError("welch_t_test: zero variance in both groups");
    }

    const double na = static_cast<double>(r.n_a);
    const double nb = static_cast<double>(r.n_b);
    double se2 = 0.0;
    if (kind == TTestKind::welch) {
        se2 = va / na + vb / nb;
        r.degrees_of_freedom =
            se2 * se2 /
            ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
    } else {
        const double sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
        se2 = sp2 * (1.0 / na + 1.0 / nb);
        r.degrees_of_freedom = na + nb - 2.0;
    }
    r.t_statistic = (r.mean_a - r.mean_b) / std::sqrt(se2);
    r.p_value = two_sided_p(r.t_statistic, r.degrees_of_freedom);
    return r;
}

WilsonInterval wilson_interval(int successes, int n, double z) {
    if (n < 1) throw std::invalid_argument("wilson_interval: n must be >= 1");
    if (successes < 0 || successes > n) {
        throw std::invalid_argument("wilson_interval: successes must be in [0, n]");
    }
    if (!(z > 0.0)) throw std::invalid_argument("wilson_interval: z must be > 0");

    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;

    WilsonInterval w;
    w.point_estimate = phat;
    w.z = z;
    w.n = n;
    w.low = std::max(0.0, center - half);
    w.high = std::min(1.0, center + half);
    return w;
}

}  // namespace otk::stats
