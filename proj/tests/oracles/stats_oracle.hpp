// Brute-force / closed-form reference implementations for the statistics
// engine. Everything here is deliberately written along a different route
// than the library: quadrature instead of incomplete beta, Cramer's rule on
// the normal equations instead of the centered slope formula, and root
// finding instead of the algebraic Wilson bounds. Test-only code.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---- Student's t CDF via adaptive Simpson quadrature of the density ----

inline double t_density(double x, double df) {
    const double c = std::exp(std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0)) /
                     std::sqrt(df * M_PI);
    return c * std::pow(1.0 + x * x / df, -(df + 1.0) / 2.0);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fb, double fm, double whole, double eps,
                               int depth) {
    const double m = (a + b) / 2.0;
    const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, fm, flm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-13) {
    const double m = (a + b) / 2.0;
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, eps, 48);
}

inline double t_cdf(double t, double df) {
    if (t == 0.0) return 0.5;
    auto f = [df](double x) { return t_density(x, df); };
    const double p = integrate(f, 0.0, std::fabs(t));
    return t > 0.0 ? 0.5 + p : 0.5 - p;
}

inline double two_sided_p(double t, double df) {
    double p = 2.0 * (1.0 - t_cdf(std::fabs(t), df));
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

/// Upper quantile: smallest t with t_cdf(t, df) >= q, by bisection.
inline double t_quantile(double q, double df) {
    double lo = -1e4, hi = 1e4;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2.0;
        if (t_cdf(mid, df) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

// ---- OLS via the raw normal equations (Cramer's rule, long double) ----

struct Ols {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double r_squared = 0.0;
    double p_value = 1.0;     // two-sided slope test; only valid when n >= 3
    double slope_ci_low = 0.0;   // 95% CI for the slope
    double slope_ci_high = 0.0;
};

inline Ols ols_normal_equations(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("ols oracle: bad input");
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += static_cast<long double>(xs[i]) * xs[i];
        sxy += static_cast<long double>(xs[i]) * ys[i];
    }
    const long double nn = static_cast<long double>(n);
    const long double det = nn * sxx - sx * sx;
    if (det == 0.0L) throw std::invalid_argument("ols oracle: singular design");
    const long double b0 = (sy * sxx - sx * sxy) / det;
    const long double b1 = (nn * sxy - sx * sy) / det;

    long double ssr = 0, sst = 0;
    const long double ybar = sy / nn;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = ys[i] - (b0 + b1 * xs[i]);
        ssr += e * e;
        const long double d = ys[i] - ybar;
        sst += d * d;
    }
    Ols out;
    out.beta0 = static_cast<double>(b0);
    out.beta1 = static_cast<double>(b1);
    out.r_squared = sst > 0 ? static_cast<double>(1.0L - ssr / sst) : 1.0;
    if (n >= 3) {
        const long double sxx_centered = sxx - sx * sx / nn;
        const long double se2 = (ssr / (nn - 2.0L)) / sxx_centered;
        if (se2 > 0) {
            const double se = std::sqrt(static_cast<double>(se2));
            out.p_value = two_sided_p(static_cast<double>(b1) / se, static_cast<double>(n - 2));
            const double tq = t_quantile(0.975, static_cast<double>(n - 2));
            out.slope_ci_low = static_cast<double>(b1) - tq * se;
            out.slope_ci_high = static_cast<double>(b1) + tq * se;
        } else {
            out.p_value = b1 == 0.0L ? 1.0 : 0.0;
            out.slope_ci_low = out.slope_ci_high = static_cast<double>(b1);
        }
    }
    return out;
}

// ---- Welch t-test recomputed from first principles ----

struct Welch {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

inline Welch welch(std::span<const double> a, std::span<const double> b) {
    auto mean = [](std::span<const double> v) {
        long double s = 0;
        for (double x : v) s += x;
        return s / static_cast<long double>(v.size());
    };
    auto var = [&](std::span<const double> v, long double m) {
        long double s = 0;
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<long double>(v.size() - 1);
    };
    const long double ma = mean(a), mb = mean(b);
    const long double va = var(a, ma), vb = var(b, mb);
    const long double na = static_cast<long double>(a.size());
    const long double nb = static_cast<long double>(b.size());
    const long double qa = va / na, qb = vb / nb;
    Welch w;
    w.t = static_cast<double>((ma - mb) / std::sqrt(static_cast<double>(qa + qb)));
    w.df = static_cast<double>((qa + qb) * (qa + qb) /
                               (qa * qa / (na - 1.0L) + qb * qb / (nb - 1.0L)));
    w.p = two_sided_p(w.t, w.df);
    return w;
}

// ---- Wilson bounds as roots of (p - phat)^2 = z^2 p (1 - p) / n ----

inline double wilson_root(double phat, double z, int n, bool upper) {
    auto g = [&](double p) {
        return (p - phat) * (p - phat) - z * z * p * (1.0 - p) / static_cast<double>(n);
    };
    double lo, hi;
    if (upper) {
        if (phat >= 1.0) return 1.0;
        lo = phat;  // g(lo) <= 0
        hi = 1.0;   // g(hi) >= 0
        for (int i = 0; i < 200; ++i) {
            const double mid = (lo + hi) / 2.0;
            if (g(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    } else {
        if (phat <= 0.0) return 0.0;
        lo = 0.0;   // g(lo) >= 0
        hi = phat;  // g(hi) <= 0
        for (int i = 0; i < 200; ++i) {
            const double mid = (lo + hi) / 2.0;
            if (g(mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace oracle
