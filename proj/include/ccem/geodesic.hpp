#pragma once

#include "ccem/power_series.hpp"
#include "ccem/profile.hpp"
#include "ccem/quadrature.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace ccem {

namespace detail {

template <class T>
double alpha_dbl(const MetricProfile<T>& prof, double s) {
    double P = 0.0, Q = 0.0, sp = 1.0;
    const auto& pc = prof.Ppoly.coeffs();
    const auto& qc = prof.Qpoly.coeffs();
    for (std::size_t k = 0; k < std::max(pc.size(), qc.size()); ++k) {
        if (k < pc.size()) P += to_double(pc[k]) * sp;
        if (k < qc.size()) Q += to_double(qc[k]) * sp;
        sp *= s;
    }
    return P / Q;
}

} // namespace detail

/// zeta(s) = int_0^s (1/(kappa1 sqrt(alpha)) - 1) dtau/tau. The integrand
/// vanishes at 0 and has a removable sqrt singularity at s*, integrated in
/// the variable u = sqrt(s* - tau).
template <class T>
double zeta(const MetricProfile<T>& prof, double s) {
    const double s_star = to_double(prof.params.s_star);
    if (!(s >= 0.0) || s > s_star) throw OutOfDomain("need 0 <= s <= s*");
    if (s == 0.0) return 0.0;
    const double k1 = prof.params.kappa1();
    const double k2 = to_double(prof.params.kappa1_sq);
    // near s* the P/Q quotient cancels catastrophically; switch to the exact
    // Taylor expansion of alpha about s* there
    auto end_series = alpha_series_at(prof, prof.params.s_star, 10);
    std::vector<double> ec;
    for (const auto& c : end_series) ec.push_back(to_double(c));
    // N = Q - kappa1^2 P vanishes to second order at 0 (kappa1^2 alpha(0) = 1
    // and alpha'(0) = 0); zeroing its rounded-off constant term makes the
    // integrand (1 - r)/(r t) = N/(t Q r (1 + r)) cancellation-free near 0
    const auto& pc = prof.Ppoly.coeffs();
    const auto& qc = prof.Qpoly.coeffs();
    std::vector<double> nc(std::max(pc.size(), qc.size()), 0.0);
    for (std::size_t k = 0; k < nc.size(); ++k) {
        if (k < qc.size()) nc[k] += to_double(qc[k]);
        if (k < pc.size()) nc[k] -= k2 * to_double(pc[k]);
    }
    nc[0] = nc[1] = 0.0;
    auto f = [&](double t) {
        if (t >= 0.95 * s_star) {
            const double d = t - s_star;
            double a = 0.0;
            for (std::size_t k = ec.size(); k-- > 0;) a = a * d + ec[k];
            return (1.0 / (k1 * std::sqrt(a)) - 1.0) / t;
        }
        double h = 0.0;  // N(t)/t
        for (std::size_t k = nc.size(); k-- > 1;) h = h * t + nc[k];
        double Qv = 0.0;
        for (std::size_t k = qc.size(); k-- > 0;) Qv = Qv * t + to_double(qc[k]);
        const double r = k1 * std::sqrt(detail::alpha_dbl(prof, t));
        return h / (Qv * r * (1.0 + r));
    };
    const double split = 0.9 * s_star;
    if (s <= split) return integrate(f, 0.0, s, 1e-12);
    double head = integrate(f, 0.0, split, 1e-12);
    auto g = [&](double u) { return f(s_star - u * u) * 2.0 * u; };
    double tail = integrate(g, std::sqrt(s_star - s), std::sqrt(s_star - split), 1e-10);
    return head + tail;
}

/// sigma = s exp(zeta(s)), the geodesic defining function.
template <class T>
double sigma_of_s(const MetricProfile<T>& prof, double s) {
    return s * std::exp(zeta(prof, s));
}

/// Inverse of sigma_of_s by bisection (sigma is strictly increasing).
template <class T>
double s_of_sigma(const MetricProfile<T>& prof, double sigma) {
    const double s_star = to_double(prof.params.s_star);
    if (sigma == 0.0) return 0.0;
    if (!(sigma > 0.0) || sigma > sigma_of_s(prof, s_star) * (1.0 + 1e-13))
        throw OutOfDomain("sigma outside [0, sigma(s*)]");
    double lo = 0.0, hi = s_star;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-15 * s_star) return mid;
        (sigma_of_s(prof, mid) < sigma ? lo : hi) = mid;
    }
    throw ConvergenceFailure("bisection for s(sigma) stalled");
}

/// Taylor coefficients of xi(sigma) = s/sigma at sigma = 0, from the
/// defining ODE sigma xi' = xi (kappa1 sqrt(alpha(sigma xi)) - 1).
/// The normalization kappa1^2 alpha(0) = 1 keeps the square-root series
/// with constant term exactly 1, so parity is exact in both scalar modes.
template <class T>
PowerSeries<T> xi_series(const MetricProfile<T>& prof, int K) {
    if (K < prof.spec.p() - 1) throw BadConfig("series order below p - 1");
    auto a = alpha_series_at(prof, T(0), K);
    PowerSeries<T> A(a, static_cast<std::size_t>(K));
    A = A * (T(1) / a[0]);  // A[0] becomes exactly 1
    PowerSeries<T> xi(static_cast<std::size_t>(K));
    xi[0] = T(1);
    for (int k = 1; k <= K; ++k) {
        PowerSeries<T> x(static_cast<std::size_t>(K));  // x = sigma * xi
        for (int j = 1; j <= K; ++j) x[j] = xi[j - 1];
        PowerSeries<T> root = A.compose(x).sqrt();
        root[0] -= T(1);
        PowerSeries<T> rhs = xi * root;
        xi[k] = rhs[k] / T(static_cast<long>(k));
        if constexpr (!is_exact_v<T>) {
            if (!std::isfinite(xi[k])) throw SeriesBlowup("xi coefficient not finite");
        }
    }
    return xi;
}

/// Asymptotic expansion of Vol({sigma > delta}) in delta.
struct VolumeExpansion {
    std::map<int, double> terms;  // exponent -> coefficient, exponents <= 0
    double L = 0.0;               // log coefficient; structurally zero
    std::optional<double> V;     // constant term, even p only
    bool even_p = false;
};

namespace detail {

template <class T>
double kappa1_pow_p(const MetricProfile<T>& prof) {
    const int p = prof.spec.p();
    if (p % 2 == 0) {
        T v(1);
        for (int k = 0; k < p / 2; ++k) v = v * prof.params.kappa1_sq;
        return to_double(v);
    }
    return std::pow(prof.params.kappa1(), p);
}

} // namespace detail

/// Expand the exact volume antiderivative in powers of delta using the xi
/// series. Exponents 2j-p+1 are all distinct from 0 except possibly via
/// the series tail, so no log term can appear and L = 0 identically.
template <class T>
VolumeExpansion volume_expansion(const MetricProfile<T>& prof, int K) {
    VolumeExpansion out;
    const int p = prof.spec.p();
    const int m = prof.spec.m();
    out.even_p = p % 2 == 0;
    auto xi = xi_series(prof, K);
    const double pref = to_double(prof.C1) * prof.C3 / detail::kappa1_pow_p(prof);
    const double s_star = to_double(prof.params.s_star);

    double constant = 0.0;
    for (int j = 0; j < m / 2; ++j) {
        const int e = 2 * j - p + 1;
        const double aj = to_double(prof.a[static_cast<std::size_t>(j)]);
        constant += aj / e * std::pow(s_star, e);
        auto xe = xi.pow(e);
        for (int t = 0; t <= K; ++t) {
            double c = -pref * aj / e * to_double(xe[static_cast<std::size_t>(t)]);
            if (c == 0.0) continue;
            const int expo = e + t;
            if (expo > 0) continue;  // vanishing remainder, not reported
            out.terms[expo] += c;
        }
    }
    out.terms[0] += pref * constant;
    out.L = 0.0;
    if (out.even_p) out.V = out.terms[0];
    return out;
}

/// Renormalized volume by the closed formula and by the series expansion.
struct VolumeReport {
    double V_closed = 0.0;
    double V_series = 0.0;
    double agreement = 0.0;
};

template <class T>
VolumeReport renormalized_volume(const MetricProfile<T>& prof) {
    const int p = prof.spec.p();
    if (p % 2 != 0) throw WrongParity("renormalized volume needs even p");
    const int m = prof.spec.m();
    const int n = prof.spec.external.n;
    T eps;
    if constexpr (is_exact_v<T>)
        eps = prof.spec.external.epsilon;
    else
        eps = to_double(prof.spec.external.epsilon);

    T inner = prof.params.nu * prof.a[0] / T(static_cast<long>(1 - p));
    T spow = T(1);
    const T s2 = prof.params.s_star * prof.params.s_star;
    for (int j = 1; j <= m / 2 - 1; ++j) {
        spow = spow * s2;
        inner += (eps * prof.a[static_cast<std::size_t>(j - 1)] +
                  prof.params.nu * prof.a[static_cast<std::size_t>(j)]) /
                 T(static_cast<long>(1 - p + 2 * j)) * spow;
    }
    if (eps != T(0))
        inner += eps / T(static_cast<long>(1 - n)) * spow * s2;

    VolumeReport out;
    out.V_closed = to_double(prof.C1) * prof.C3 /
                   (2.0 * to_double(prof.params.nu) * detail::kappa1_pow_p(prof) *
                    std::pow(to_double(prof.params.s_star), p - 1)) *
                   to_double(inner);
    out.V_series = *volume_expansion(prof, p + 2).V;
    out.agreement = std::fabs(out.V_closed - out.V_series);
    return out;
}

/// Exact volume of {sigma > delta} from the antiderivative, for convergence
/// studies against the truncated expansion.
template <class T>
double numeric_volume(const MetricProfile<T>& prof, double delta) {
    const double s_star = to_double(prof.params.s_star);
    const double sigma_star = sigma_of_s(prof, s_star);
    if (!(delta > 0.0) || !(delta < sigma_star))
        throw OutOfDomain("delta must lie in (0, sigma(s*))");
    const double s_delta = s_of_sigma(prof, delta);
    const int p = prof.spec.p();
    const double pref = to_double(prof.C1) * prof.C3 / detail::kappa1_pow_p(prof);
    double acc = 0.0;
    for (int j = 0; j < prof.spec.m() / 2; ++j) {
        const int e = 2 * j - p + 1;
        const double aj = to_double(prof.a[static_cast<std::size_t>(j)]);
        acc += aj / e * (std::pow(s_star, e) - std::pow(s_delta, e));
    }
    return pref * acc;
}

} // namespace ccem
