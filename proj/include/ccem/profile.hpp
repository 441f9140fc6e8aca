#pragma once

#include "ccem/bundle.hpp"
#include "ccem/errors.hpp"
#include "ccem/polynomial.hpp"
#include "ccem/quadrature.hpp"
#include "ccem/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace ccem {

/// Continuous solution data determined by the consistency conditions.
template <class T>
struct SolutionParams {
    T nu{};
    std::vector<T> A;        // one per factor, all negative
    T s_star{};              // -1/(2 A_1)
    T kappa1_sq{};           // (1-p)/nu; kappa1 itself may be irrational
    std::vector<Branch> branches;

    double kappa1() const { return std::sqrt(to_double(kappa1_sq)); }
};

/// Exact metric profile: alpha = P/Q, quadratic beta_i, and the constants
/// entering the volume formulas.
template <class T>
struct MetricProfile {
    BundleSpec spec;
    SolutionParams<T> params;
    std::vector<T> a;        // coefficients of Q (even degrees), a[m/2-1] = 1
    std::vector<T> b;        // coefficients of Q(s)(eps s^2 - nu)
    T C1{};                  // prod A_i^{n_i}
    T C2{};                  // odd-term coefficient of P
    double C3 = 0.0;         // 2 pi Vol(N) prod Vol(V_i)
    Polynomial<T> Ppoly;
    Polynomial<T> Qpoly;

    T beta(int i, const T& s) const {
        const auto& f = spec.factors[i];
        T qi2 = T(static_cast<long>(f.q) * f.q);
        return params.A[i] * s * s - qi2 / (T(4) * params.A[i]);
    }
    T beta_prime(int i, const T& s) const { return T(2) * params.A[i] * s; }
    T beta_second(int i) const { return T(2) * params.A[i]; }

    T w(const T& s) const { return C1 * Qpoly(s); }

    T alpha(const T& s) const { return Ppoly(s) / Qpoly(s); }
    T alpha_prime(const T& s) const {
        T q = Qpoly(s);
        return (Ppoly.derivative()(s) * q - Ppoly(s) * Qpoly.derivative()(s)) / (q * q);
    }
    T alpha_second(const T& s) const {
        T q = Qpoly(s), qp = Qpoly.derivative()(s), qpp = Qpoly.derivative().derivative()(s);
        T pv = Ppoly(s), pp = Ppoly.derivative()(s), ppp = Ppoly.derivative().derivative()(s);
        return (ppp * q * q - T(2) * pp * qp * q + T(2) * pv * qp * qp - pv * qpp * q) /
               (q * q * q);
    }
};

/// Pointwise profile data at a moment-map coordinate s.
template <class T>
struct ProfileSample {
    T s{};
    T alpha{}, alpha_prime{};
    std::vector<T> beta, beta_prime;
    T w{};
    double rho = 0.0;   // kappa1 * s
    double phi = 0.0;   // (p-2)(log s + log kappa1)
    double f = 0.0;     // sqrt(alpha)
    std::vector<double> g;  // sqrt(beta_i)
};

namespace detail {

template <class T>
T sqrt_or_throw(const T& x, const char* what) {
    auto r = checked_sqrt(x);
    if (!r) {
        if constexpr (is_exact_v<T>)
            throw NotExact(std::string(what) + " has no exact square root");
        else
            throw NegativeDiscriminant(what);
    }
    return *r;
}

} // namespace detail

/// Solve the consistency conditions for A_i given nu and branch choices.
/// In exact mode (T = Rational) every needed square root must be rational.
template <class T>
SolutionParams<T> solve_coefficients(const BundleSpec& spec, const T& nu,
                                     const std::vector<Branch>& branches) {
    const CaseTag tag = classify_case(spec);
    const int r = spec.r();
    if (static_cast<int>(branches.size()) != r)
        throw BadConfig("need one branch choice per factor");
    T eps;
    if constexpr (is_exact_v<T>)
        eps = spec.external.epsilon;
    else
        eps = to_double(spec.external.epsilon);
    if (!(nu < T(0))) throw NoAdmissibleCase("nu must be negative");
    {
        Rational nu_r;
        if constexpr (is_exact_v<T>)
            nu_r = nu;
        else
            nu_r = Rational(nu);
        if (!admissible_nu(spec, tag).contains(nu_r))
            throw NoAdmissibleCase("nu outside the admissible range");
    }

    SolutionParams<T> out;
    out.nu = nu;
    out.branches = branches;
    out.A.resize(r);
    for (int i = 0; i < r; ++i) {
        const auto& f = spec.factors[i];
        const T pi = T(static_cast<long>(f.p));
        const T qi2 = T(static_cast<long>(f.q) * f.q);
        if (!spec.coupled(i)) {
            // Padding factor: enters no equation; pin the epsilon = 0 value.
            out.A[i] = pi / nu;
            continue;
        }
        if (!tag.branch_legal(i, branches[i]))
            throw NoAdmissibleCase("branch " + std::string(to_string(branches[i])) +
                                   " not admissible for factor " + std::to_string(i + 1));
        if (eps == T(0)) {
            out.A[i] = pi / nu;
        } else if (f.p == 0) {
            out.A[i] = -detail::sqrt_or_throw(eps * qi2 / (T(4) * nu), "A_i root");
        } else {
            T disc = pi * pi + nu * eps * qi2;
            if (disc < T(0))
                throw NegativeDiscriminant("p_i^2 + nu eps q_i^2 < 0 for factor " +
                                           std::to_string(i + 1));
            T root = detail::sqrt_or_throw(disc, "discriminant");
            T delta = branches[i] == Branch::plus ? T(1) : T(-1);
            out.A[i] = (pi + delta * root) / (T(2) * nu);
        }
        if (!(out.A[i] < T(0)))
            throw NotNegative("A_" + std::to_string(i + 1) + " >= 0");
    }

    out.s_star = T(-1) / (T(2) * out.A[0]);
    out.kappa1_sq = T(static_cast<long>(1 - spec.p())) / nu;

    // Eq. c3: beta_i(s*) > 0 for the positive-dimensional factors.
    for (int i = 1; i < r; ++i) {
        if (!spec.coupled(i)) continue;
        T qi2 = T(static_cast<long>(spec.factors[i].q) * spec.factors[i].q);
        if (!(out.A[i] * out.A[i] < qi2 * out.A[0] * out.A[0]))
            throw RestrictionViolated("A_i^2 < q_i^2 A_1^2 fails for factor " +
                                      std::to_string(i + 1));
    }

    // Consistency residuals must vanish for every coupled factor.
    for (int i = 0; i < r; ++i) {
        if (!spec.coupled(i)) continue;
        const auto& f = spec.factors[i];
        T qi2 = T(static_cast<long>(f.q) * f.q);
        T res = eps * qi2 / (T(4) * out.A[i] * out.A[i]) +
                T(static_cast<long>(f.p)) / out.A[i] - nu;
        if constexpr (is_exact_v<T>) {
            if (res != T(0)) throw ConvergenceFailure("exact consistency residual nonzero");
        } else {
            if (std::fabs(res) > 1e-12 * (1.0 + std::fabs(to_double(nu))))
                throw ConvergenceFailure("consistency residual " + std::to_string(res));
        }
    }
    return out;
}

/// Assemble the polynomials P, Q and the constants C1, C2, C3.
template <class T>
MetricProfile<T> build_profile(const BundleSpec& spec, const SolutionParams<T>& params) {
    MetricProfile<T> prof;
    prof.spec = spec;
    prof.params = params;
    const int m = spec.m();
    const int p = spec.p();
    T eps;
    if constexpr (is_exact_v<T>)
        eps = spec.external.epsilon;
    else
        eps = to_double(spec.external.epsilon);

    // Q(s) = prod_i (s^2 - q_i^2/(4 A_i^2))^{n_i}, monic of degree m-2.
    Polynomial<T> Q = Polynomial<T>::constant(T(1));
    prof.C1 = T(1);
    for (int i = 0; i < spec.r(); ++i) {
        const auto& f = spec.factors[i];
        T qi2 = T(static_cast<long>(f.q) * f.q);
        Polynomial<T> lin({-qi2 / (T(4) * params.A[i] * params.A[i]), T(0), T(1)});
        for (int k = 0; k < f.n; ++k) {
            Q = Q * lin;
            prof.C1 = prof.C1 * params.A[i];
        }
    }
    prof.Qpoly = Q;
    prof.a.resize(m / 2);
    for (int j = 0; j < m / 2; ++j) prof.a[j] = Q.coeff(2 * static_cast<std::size_t>(j));

    // b_j: coefficients of Q(s)(eps s^2 - nu).
    prof.b.assign(m / 2 + 1, T(0));
    prof.b[0] = -params.nu * prof.a[0];
    for (int j = 1; j < m / 2; ++j) prof.b[j] = eps * prof.a[j - 1] - params.nu * prof.a[j];
    prof.b[m / 2] = eps;

    // C2 and P. A denominator 2j-p+1 = 0 can only occur with b_j = 0.
    prof.C2 = T(0);
    Polynomial<T> P;
    const int maxpow = std::max(m, p - 1);
    std::vector<T> spow(static_cast<std::size_t>(maxpow) + 1, T(1));
    for (int k = 1; k <= maxpow; ++k) spow[k] = spow[k - 1] * params.s_star;
    for (int j = 0; j <= m / 2; ++j) {
        const int denom = 2 * j - p + 1;
        if (denom == 0) {
            if (prof.b[j] != T(0))
                throw LogTermPresent("b_j != 0 at 2j - p + 1 = 0");
            continue;
        }
        T term = prof.b[j] / T(static_cast<long>(denom));
        // s*^{2j-p+1} with a possibly negative exponent
        T spw = denom >= 0 ? spow[denom] : T(1) / spow[-denom];
        prof.C2 += term * spw;
        P.set_coeff(2 * static_cast<std::size_t>(j), P.coeff(2 * j) - term);
    }
    P.set_coeff(static_cast<std::size_t>(p - 1), P.coeff(p - 1) + prof.C2);
    prof.Ppoly = P;

    prof.C3 = 2.0 * std::numbers::pi * spec.external.volume;
    for (const auto& f : spec.factors) prof.C3 *= f.volume;
    return prof;
}

/// Taylor coefficients of alpha at x0 up to the given order.
/// Handles a common root of P and Q at x0 (the collapse locus s*).
template <class T>
std::vector<T> alpha_series_at(const MetricProfile<T>& prof, const T& x0, int order) {
    Polynomial<T> Ps = prof.Ppoly.shifted(x0);
    Polynomial<T> Qs = prof.Qpoly.shifted(x0);
    // Leading coefficients that vanish only up to rounding still mark a root
    // of Q (e.g. s* with irrational A_1); compare against the coefficient scale.
    auto negligible = [](const Polynomial<T>& poly, std::size_t k) {
        if constexpr (is_exact_v<T>) {
            return poly.coeff(k) == T(0);
        } else {
            double scale = 0.0;
            for (const auto& c : poly.coeffs()) scale = std::max(scale, std::fabs(c));
            return std::fabs(poly.coeff(k)) <= 1e-9 * scale;
        }
    };
    std::size_t mu = 0;
    while (mu < Qs.coeffs().size() && negligible(Qs, mu)) ++mu;
    for (std::size_t k = 0; k < mu; ++k)
        if (!negligible(Ps, k)) throw OutOfDomain("alpha has a pole at the requested point");
    // series division of the de-poled quotient
    std::vector<T> out(static_cast<std::size_t>(order) + 1, T(0));
    std::vector<T> pnum(out.size()), qden(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        pnum[k] = Ps.coeff(k + mu);
        qden[k] = Qs.coeff(k + mu);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        T acc = pnum[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= qden[j] * out[k - j];
        out[k] = acc / qden[0];
    }
    return out;
}

/// Evaluate the full profile at s in (0, s*].
template <class T>
ProfileSample<T> eval_profile(const MetricProfile<T>& prof, const T& s) {
    if (!(s > T(0)) || s > prof.params.s_star)
        throw OutOfDomain("s must lie in (0, s*]");
    ProfileSample<T> out;
    out.s = s;
    if (prof.Qpoly(s) != T(0)) {
        out.alpha = prof.alpha(s);
        out.alpha_prime = prof.alpha_prime(s);
    } else {
        auto ser = alpha_series_at(prof, s, 1);
        out.alpha = ser[0];
        out.alpha_prime = ser[1];
    }
    const int r = prof.spec.r();
    out.beta.resize(r);
    out.beta_prime.resize(r);
    out.g.resize(r);
    out.w = T(1);
    for (int i = 0; i < r; ++i) {
        out.beta[i] = prof.beta(i, s);
        out.beta_prime[i] = prof.beta_prime(i, s);
        out.g[i] = std::sqrt(to_double(out.beta[i]));
        for (int k = 0; k < prof.spec.factors[i].n; ++k) out.w = out.w * out.beta[i];
    }
    const double kappa1 = prof.params.kappa1();
    out.rho = kappa1 * to_double(s);
    out.phi = (prof.spec.p() - 2) * (std::log(to_double(s)) + std::log(kappa1));
    out.f = std::sqrt(to_double(out.alpha));
    return out;
}

/// Independent integral form of alpha, evaluated by adaptive quadrature.
template <class T>
double alpha_quadrature_oracle(const MetricProfile<T>& prof, double s) {
    const double s_star = to_double(prof.params.s_star);
    if (!(s > 0.0) || !(s < s_star)) throw OutOfDomain("need 0 < s < s*");
    const double eps = to_double(prof.spec.external.epsilon);
    const double nu = to_double(prof.params.nu);
    const int p = prof.spec.p();
    auto w = [&](double t) {
        double acc = to_double(prof.C1);
        double Q = 0.0;
        {
            double tp = 1.0;
            for (const auto& c : prof.Qpoly.coeffs()) {
                Q += to_double(c) * tp;
                tp *= t;
            }
        }
        return acc * Q;
    };
    auto integrand = [&](double t) { return w(t) * (eps * t * t - nu) / std::pow(t, p); };
    double integral = integrate(integrand, s, s_star, 1e-12);
    return std::pow(s, p - 1) / w(s) * integral;
}

/// CSV export: one row per sample, floats at 17 significant digits.
template <class T>
void write_profile_csv(std::ostream& os, const MetricProfile<T>& prof,
                       const std::vector<double>& grid) {
    os << "s,alpha,alpha_prime";
    for (int i = 1; i <= prof.spec.r(); ++i) os << ",beta_" << i;
    os << ",w,rho,phi\n";
    char buf[64];
    auto put = [&](double v, bool lead_comma = true) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (lead_comma) os << ',';
        os << buf;
    };
    for (double s : grid) {
        auto smp = eval_profile(prof, T(s));
        put(s, false);
        put(to_double(smp.alpha));
        put(to_double(smp.alpha_prime));
        for (int i = 0; i < prof.spec.r(); ++i) put(to_double(smp.beta[i]));
        put(to_double(smp.w));
        put(smp.rho);
        put(smp.phi);
        os << '\n';
    }
}

/// Chebyshev-distributed sample grid on [lo, hi], clustered at both ends.
inline std::vector<double> chebyshev_grid(int n, double lo, double hi) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n));
        g[n - 1 - k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
    }
    return g;
}

} // namespace ccem
