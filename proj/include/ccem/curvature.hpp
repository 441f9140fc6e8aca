#pragma once

#include "ccem/profile.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ccem {

/// Diagonal Ricci (or Hessian) components in the orthonormal frame
/// {t, Lambda, E_i}. Horizontal entries carry multiplicity 2 n_i.
template <class T>
struct FrameRicci {
    std::optional<T> t;
    T lambda{};
    std::vector<T> horizontal;
};

template <class T>
struct ResidualVector {
    T r_fi{}, r_se{};
    std::vector<T> r_th;

    T max_abs() const {
        T m = abs_val(r_fi);
        m = std::max(m, abs_val(r_se));
        for (const auto& v : r_th) m = std::max(m, abs_val(v));
        return m;
    }
};

template <class T>
struct CurvatureReport {
    T s{};
    ResidualVector<T> residuals;
    T lambda{};
    T lambda_target{};
};

/// Diagonal Ricci of the circle bundle (P_q, g) with f^2 theta x theta
/// + sum g_i^2 h_i, in the unit frame.
template <class T>
FrameRicci<T> ricci_bundle(const T& f_sq, const std::vector<T>& g_sq,
                           const BundleSpec& spec) {
    FrameRicci<T> out;
    out.horizontal.resize(spec.r());
    out.lambda = T(0);
    for (int i = 0; i < spec.r(); ++i) {
        const auto& fc = spec.factors[i];
        T qi2 = T(static_cast<long>(fc.q) * fc.q);
        if (fc.n > 0)
            out.lambda += T(static_cast<long>(fc.n)) * qi2 * f_sq /
                          (T(2) * g_sq[i] * g_sq[i]);
        out.horizontal[i] =
            (T(static_cast<long>(fc.p)) - qi2 * f_sq / (T(2) * g_sq[i])) / g_sq[i];
    }
    return out;
}

namespace detail {

// Shared s-space data for the frame formulas; all t-derivatives appear in
// pairs, so every entry is rational in s.
template <class T>
struct FrameData {
    T alpha, alpha_p, alpha_pp;
    std::vector<T> beta, beta_p;  // beta'' = 2 A_i
    T phi_p, phi_pp;
    T logw_p;                      // sum n_i beta'/beta
    T eps;

    FrameData(const MetricProfile<T>& prof, const T& s) {
        if (!(s > T(0)) || !(s < prof.params.s_star))
            throw OutOfDomain("need 0 < s < s*");
        alpha = prof.alpha(s);
        alpha_p = prof.alpha_prime(s);
        alpha_pp = prof.alpha_second(s);
        const int p = prof.spec.p();
        phi_p = T(static_cast<long>(p - 2)) / s;
        phi_pp = -T(static_cast<long>(p - 2)) / (s * s);
        logw_p = T(0);
        const int r = prof.spec.r();
        beta.resize(r);
        beta_p.resize(r);
        for (int i = 0; i < r; ++i) {
            beta[i] = prof.beta(i, s);
            beta_p[i] = prof.beta_prime(i, s);
            if (prof.spec.factors[i].n > 0)
                logw_p += T(static_cast<long>(prof.spec.factors[i].n)) * beta_p[i] / beta[i];
        }
        if constexpr (is_exact_v<T>)
            eps = prof.spec.external.epsilon;
        else
            eps = to_double(prof.spec.external.epsilon);
    }
};

} // namespace detail

/// Left-minus-right residuals of the cohomogeneity-one Einstein system.
template <class T>
ResidualVector<T> ode_residuals(const MetricProfile<T>& prof, const T& s) {
    detail::FrameData<T> d(prof, s);
    const int p = prof.spec.p();
    const int r = prof.spec.r();
    ResidualVector<T> out;
    const T D = d.phi_p - d.logw_p;

    T sum_set(0);   // sum n_i (beta''/beta - (beta'/beta)^2 / 2)
    T sum_q(0);     // sum n_i q_i^2 / beta_i^2
    for (int i = 0; i < r; ++i) {
        const auto& f = prof.spec.factors[i];
        if (f.n == 0) continue;
        T ni = T(static_cast<long>(f.n));
        T qi2 = T(static_cast<long>(f.q) * f.q);
        T bp_over_b = d.beta_p[i] / d.beta[i];
        sum_set += ni * (T(2) * prof.params.A[i] / d.beta[i] -
                         bp_over_b * bp_over_b / T(2));
        sum_q += ni * qi2 / (d.beta[i] * d.beta[i]);
    }

    out.r_fi = d.alpha * (d.phi_pp + d.phi_p * d.phi_p / T(static_cast<long>(p - 2)) -
                          sum_set) +
               d.alpha_p / T(2) * D - d.alpha_pp / T(2) - d.eps;
    out.r_se = d.alpha_p / T(2) * D - d.alpha_pp / T(2) + d.alpha / T(2) * sum_q - d.eps;

    out.r_th.resize(r);
    for (int i = 0; i < r; ++i) {
        const auto& f = prof.spec.factors[i];
        if (!prof.spec.coupled(i) && d.eps != T(0)) {
            // padding factor: carries no metric content, equation vacuous
            out.r_th[i] = T(0);
            continue;
        }
        T qi2 = T(static_cast<long>(f.q) * f.q);
        T bp_over_b = d.beta_p[i] / d.beta[i];
        out.r_th[i] = d.alpha / T(2) *
                          (bp_over_b * D - T(2) * prof.params.A[i] / d.beta[i] +
                           bp_over_b * bp_over_b - qi2 / (d.beta[i] * d.beta[i])) -
                      d.alpha_p / T(2) * bp_over_b +
                      T(static_cast<long>(f.p)) / d.beta[i] - d.eps;
    }
    return out;
}

/// Diagonal Ricci of (M-hat, g-hat) in the unit frame, rewritten in s.
template <class T>
FrameRicci<T> ricci_ambient(const MetricProfile<T>& prof, const T& s) {
    detail::FrameData<T> d(prof, s);
    const int r = prof.spec.r();
    FrameRicci<T> out;
    out.horizontal.resize(r);

    // f-dot/f * g_i-dot/g_i and friends, all expressed in s
    auto gdot_over_g = [&](int i) { return d.alpha * d.beta_p[i] / (T(2) * d.beta[i]); };
    // note: gdot_over_g is (g-dot/g) * sqrt(alpha)-free pairing helper:
    // products of two t-log-derivatives are alpha * (s-log-derivs) / ...
    T f_tt = d.alpha_pp / T(2);  // f-ddot / f
    T sum_g_tt(0), sum_fg(0);
    std::vector<T> g_tt(r), glog(r);
    for (int i = 0; i < r; ++i) {
        T b = d.beta[i], bp = d.beta_p[i], bpp = T(2) * prof.params.A[i];
        g_tt[i] = d.alpha_p * bp / (T(4) * b) +
                  d.alpha * (bpp / (T(2) * b) - bp * bp / (T(4) * b * b));
        glog[i] = bp / (T(2) * b);  // (g-dot/g) = sqrt(alpha) * glog
        int ni = prof.spec.factors[i].n;
        if (ni > 0) {
            sum_g_tt += T(2L * ni) * g_tt[i];
            sum_fg += T(2L * ni) * (d.alpha_p / T(2)) * glog[i];  // (f-dot/f)(g-dot/g)*alpha-paired
        }
    }
    out.t = -f_tt - sum_g_tt;
    T fiber(0);
    for (int i = 0; i < r; ++i) {
        const auto& fc = prof.spec.factors[i];
        if (fc.n == 0) continue;
        T qi2 = T(static_cast<long>(fc.q) * fc.q);
        fiber += T(static_cast<long>(fc.n)) * qi2 * d.alpha / (T(2) * d.beta[i] * d.beta[i]);
    }
    out.lambda = -f_tt - sum_fg + fiber;
    for (int i = 0; i < r; ++i) {
        const auto& fc = prof.spec.factors[i];
        T qi2 = T(static_cast<long>(fc.q) * fc.q);
        T cross(0);
        for (int k = 0; k < r; ++k)
            if (prof.spec.factors[k].n > 0)
                cross += T(2L * prof.spec.factors[k].n) * d.alpha * glog[i] * glog[k];
        out.horizontal[i] = -g_tt[i] + d.alpha * glog[i] * glog[i] -
                            (d.alpha_p / T(2)) * glog[i] - cross +
                            (T(static_cast<long>(fc.p)) -
                             qi2 * d.alpha / (T(2) * d.beta[i])) /
                                d.beta[i];
    }
    return out;
}

/// Unit-frame Hessian of v = (p-2) log rho.
template <class T>
FrameRicci<T> hessian_v(const MetricProfile<T>& prof, const T& s) {
    detail::FrameData<T> d(prof, s);
    FrameRicci<T> out;
    out.t = d.alpha * d.phi_pp + d.alpha_p * d.phi_p / T(2);
    out.lambda = d.phi_p * d.alpha_p / T(2);
    out.horizontal.resize(prof.spec.r());
    for (int i = 0; i < prof.spec.r(); ++i)
        out.horizontal[i] = d.phi_p * d.alpha * d.beta_p[i] / (T(2) * d.beta[i]);
    return out;
}

/// Max deviation of Ric + Ddv + dv(x)dv/(p-2) - eps over all frame labels.
/// Padding factors are skipped when eps != 0 (their equation is vacuous).
template <class T>
T einstein_frame_residual(const MetricProfile<T>& prof, const T& s) {
    detail::FrameData<T> d(prof, s);
    auto ric = ricci_ambient(prof, s);
    auto hes = hessian_v(prof, s);
    const T pm2 = T(static_cast<long>(prof.spec.p() - 2));
    T dvdv_tt = d.phi_p * d.phi_p * d.alpha;  // v-dot squared
    T m = abs_val(T(*ric.t + *hes.t + dvdv_tt / pm2 - d.eps));
    m = std::max(m, abs_val(T(ric.lambda + hes.lambda - d.eps)));
    for (int i = 0; i < prof.spec.r(); ++i) {
        if (prof.spec.factors[i].n == 0) continue;
        m = std::max(m, abs_val(T(ric.horizontal[i] + hes.horizontal[i] - d.eps)));
    }
    return m;
}

/// Einstein constant of the conformal metric, computed from the Laplacian
/// and gradient of rho rather than from the ODE system.
template <class T>
CurvatureReport<T> einstein_constant(const MetricProfile<T>& prof, const T& s) {
    detail::FrameData<T> d(prof, s);
    CurvatureReport<T> out;
    out.s = s;
    out.residuals = ode_residuals(prof, s);
    const T k2 = prof.params.kappa1_sq;
    const int p = prof.spec.p();
    // -Delta rho = kappa1 (alpha' + alpha (log w)'); |d rho|^2 = kappa1^2 alpha
    out.lambda = d.eps * k2 * s * s + k2 * s * (d.alpha_p + d.alpha * d.logw_p) -
                 T(static_cast<long>(p - 1)) * k2 * d.alpha;
    out.lambda_target = T(static_cast<long>(1 - p));
    return out;
}

/// Q-curvature of a 4-manifold with parallel Ricci tensor, from its four
/// Ricci eigenvalues. Delta R = 0 is assumed, not computed.
template <class T>
T q_curvature_dim4(const std::vector<T>& ricci_eigs) {
    T R(0), n2(0);
    for (const auto& e : ricci_eigs) {
        R += e;
        n2 += e * e;
    }
    return (R * R - T(3) * n2) / T(6);
}

/// Ricci eigenvalues of the boundary representative g_b when p = 5.
template <class T>
std::vector<T> boundary_ricci_eigs(const BundleSpec& spec, const SolutionParams<T>& params) {
    if (spec.p() != 5) throw WrongDimension("boundary Q-curvature needs p = 5");
    const T inv_k2 = T(1) / params.kappa1_sq;
    const int p = spec.p();
    T alpha0 = params.nu / T(static_cast<long>(1 - p));
    T f_sq = inv_k2 * alpha0;
    std::vector<T> g_sq(spec.r());
    for (int i = 0; i < spec.r(); ++i) {
        T qi2 = T(static_cast<long>(spec.factors[i].q) * spec.factors[i].q);
        g_sq[i] = inv_k2 * (-qi2 / (T(4) * params.A[i]));
    }
    auto fr = ricci_bundle(f_sq, g_sq, spec);
    std::vector<T> eigs{fr.lambda};
    for (int i = 0; i < spec.r(); ++i)
        for (int k = 0; k < 2 * spec.factors[i].n; ++k) eigs.push_back(fr.horizontal[i]);
    T ext_eig;
    if constexpr (is_exact_v<T>)
        ext_eig = params.kappa1_sq * spec.external.epsilon;
    else
        ext_eig = params.kappa1_sq * to_double(spec.external.epsilon);
    for (int k = 0; k < spec.external.n; ++k) eigs.push_back(ext_eig);
    return eigs;
}

/// Q-curvature of g_b for the 5-dimensional cases.
template <class T>
T boundary_q_dim4(const BundleSpec& spec, const SolutionParams<T>& params) {
    return q_curvature_dim4(boundary_ricci_eigs(spec, params));
}

} // namespace ccem
