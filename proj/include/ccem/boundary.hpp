#pragma once

#include "ccem/profile.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ccem {

/// One named check: value against target (equality) or value > 0 (positivity).
template <class T>
struct CompactCheck {
    std::string name;
    T value{};
    T target{};
    bool positivity = false;  // pass means value > 0, target ignored
    bool pass = false;
};

/// Structured smooth-compactification diagnostics. Never throws on failure;
/// the CLI prints the failing rows.
template <class T>
struct CompactificationReport {
    std::vector<CompactCheck<T>> checks;
    bool all_pass = true;

    void add(std::string name, T value, T target) {
        bool ok;
        if constexpr (is_exact_v<T>)
            ok = value == target;
        else
            ok = std::fabs(value - target) <= 1e-9 * (1.0 + std::fabs(target));
        checks.push_back({std::move(name), value, target, false, ok});
        all_pass = all_pass && ok;
    }
    void add_positive(std::string name, T value) {
        bool ok = value > T(0);
        checks.push_back({std::move(name), value, T(0), true, ok});
        all_pass = all_pass && ok;
    }
};

enum class BoundaryKind { gamma, g_b, g_0 };

/// Diagonal boundary metric: fiber_coeff theta(x)theta + sum base_coeffs_i
/// pi*h_i + external_coeff g_N.
template <class T>
struct BoundaryMetric {
    BoundaryKind kind = BoundaryKind::gamma;
    T fiber_coeff{};
    std::vector<T> base_coeffs;
    T external_coeff{};
};

/// Check every smoothness condition at s = 0 and s = s*, the interior
/// positivity of alpha and eps s^2 - nu, and the beta_i(s*) > 0 bounds.
template <class T>
CompactificationReport<T> verify_compactification(const MetricProfile<T>& prof) {
    CompactificationReport<T> rep;
    const T s_star = prof.params.s_star;
    const int p = prof.spec.p();
    T eps;
    if constexpr (is_exact_v<T>)
        eps = prof.spec.external.epsilon;
    else
        eps = to_double(prof.spec.external.epsilon);

    auto ser0 = alpha_series_at(prof, T(0), 1);
    rep.add("alpha(0) = nu/(1-p)", ser0[0], prof.params.nu / T(static_cast<long>(1 - p)));
    rep.add("alpha'(0) = 0", ser0[1], T(0));

    auto serS = alpha_series_at(prof, s_star, 1);
    rep.add("alpha(s*) = 0", serS[0], T(0));
    rep.add("alpha'(s*) = -2", serS[1], T(-2));

    rep.add("beta_1(s*) = 0", prof.beta(0, s_star), T(0));
    rep.add("beta_1'(s*) = -1", prof.beta_prime(0, s_star), T(-1));
    for (int i = 1; i < prof.spec.r(); ++i)
        rep.add_positive("beta_" + std::to_string(i + 1) + "(s*) > 0",
                         prof.beta(i, s_star));

    // interior positivity, sampled on a clustered grid
    const double ss = to_double(s_star);
    T min_alpha = ser0[0], min_conf = -prof.params.nu;
    for (double x : chebyshev_grid(64, 0.0, ss)) {
        T s(x);
        T a = prof.Qpoly(s) != T(0) ? prof.alpha(s) : alpha_series_at(prof, s, 0)[0];
        if (a < min_alpha) min_alpha = a;
        T c = eps * s * s - prof.params.nu;
        if (c < min_conf) min_conf = c;
    }
    rep.add_positive("alpha > 0 on (0, s*)", min_alpha);
    rep.add_positive("eps s^2 - nu > 0 on [0, s*)", min_conf);

    for (int i = 1; i < prof.spec.r(); ++i) {
        if (!prof.spec.coupled(i)) continue;
        T qi2 = T(static_cast<long>(prof.spec.factors[i].q) * prof.spec.factors[i].q);
        rep.add_positive("q_" + std::to_string(i + 1) + "^2 A_1^2 - A_" +
                             std::to_string(i + 1) + "^2 > 0",
                         qi2 * prof.params.A[0] * prof.params.A[0] -
                             prof.params.A[i] * prof.params.A[i]);
    }
    return rep;
}

/// The conformal-infinity representative gamma.
template <class T>
BoundaryMetric<T> conformal_infinity(const SolutionParams<T>& params,
                                     const BundleSpec& spec) {
    BoundaryMetric<T> out;
    out.kind = BoundaryKind::gamma;
    out.fiber_coeff = T(1);
    const T pm1 = T(static_cast<long>(spec.p() - 1));
    out.base_coeffs.resize(spec.r());
    for (int i = 0; i < spec.r(); ++i) {
        T qi2 = T(static_cast<long>(spec.factors[i].q) * spec.factors[i].q);
        out.base_coeffs[i] = pm1 * qi2 / (T(4) * params.nu * params.A[i]);
    }
    out.external_coeff = -pm1 / params.nu;
    return out;
}

/// The boundary representative g_b induced by the geodesic defining function.
template <class T>
BoundaryMetric<T> boundary_representative(const SolutionParams<T>& params,
                                          const BundleSpec& spec) {
    BoundaryMetric<T> out;
    out.kind = BoundaryKind::g_b;
    const T inv_k2 = T(1) / params.kappa1_sq;
    out.fiber_coeff = inv_k2 * params.nu / T(static_cast<long>(1 - spec.p()));
    out.base_coeffs.resize(spec.r());
    for (int i = 0; i < spec.r(); ++i) {
        T qi2 = T(static_cast<long>(spec.factors[i].q) * spec.factors[i].q);
        out.base_coeffs[i] = inv_k2 * (-qi2 / (T(4) * params.A[i]));
    }
    out.external_coeff = inv_k2;
    return out;
}

/// Odd s-derivatives of alpha at 0 through order p-2; all must vanish.
template <class T>
std::vector<T> alpha_parity(const MetricProfile<T>& prof) {
    const int p = prof.spec.p();
    auto ser = alpha_series_at(prof, T(0), p - 2);
    std::vector<T> out;
    T fact(1);
    for (int k = 1; k <= p - 2; ++k) {
        fact = fact * T(static_cast<long>(k));
        if (k % 2 == 1) out.push_back(ser[k] * fact);
    }
    return out;
}

} // namespace ccem
