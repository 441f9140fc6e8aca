#include "ccem/boundary.hpp"
#include "ccem/cli.hpp"
#include "ccem/curvature.hpp"
#include "ccem/geodesic.hpp"
#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>

using namespace ccem;
using ccem::testing::catalog_profile;

namespace {

bool report(int k, bool ok, const char* what) {
    std::printf("criterion %d [%s] %s\n", k, ok ? "PASS" : "FAIL", what);
    std::fflush(stdout);
    return ok;
}

} // namespace

TEST_CASE("1: renormalized volume of the hyperbolic entry") {
    auto t0 = std::chrono::steady_clock::now();
    auto prof = catalog_profile<double>("h4");
    auto vr = renormalized_volume(prof);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double v = 4.0 * std::numbers::pi * std::numbers::pi / 3.0;
    bool ok = std::fabs(vr.V_closed - v) <= 1e-9 * v &&
              std::fabs(vr.V_series - vr.V_closed) <= 1e-6 && secs < 1.0;
    CHECK(report(1, ok, "V = 4 pi^2 / 3 by both routes, under one second"));
}

TEST_CASE("2: Einstein verification, exact and floating") {
    bool ok = true;
    for (const char* name : {"h4", "ads-quotient"}) {
        auto prof = catalog_profile<Rational>(name);
        const double ss = to_double(prof.params.s_star);
        const Rational target(1 - prof.spec.p());
        for (double x : chebyshev_grid(50, 0.01 * ss, 0.99 * ss)) {
            auto rep = einstein_constant(prof, Rational(x));
            ok = ok && rep.residuals.max_abs() == Rational(0) && rep.lambda == target;
        }
    }
    for (const char* name : {"taub-nut", "taub-bolt", "rpzq-n3"}) {
        auto prof = catalog_profile<double>(name);
        const double ss = to_double(prof.params.s_star);
        const double target = 1.0 - prof.spec.p();
        for (double s : chebyshev_grid(50, 0.01 * ss, 0.99 * ss)) {
            auto rep = einstein_constant(prof, s);
            ok = ok && rep.residuals.max_abs() < 1e-10 &&
                 std::fabs(rep.lambda - target) < 1e-12;
        }
    }
    CHECK(report(2, ok, "ODE residuals zero (exact) / < 1e-10, lambda = 1 - p"));
}

TEST_CASE("3: compactification conditions and negative control") {
    bool ok = true;
    for (const char* name : ccem::testing::exact_names) {
        auto prof = catalog_profile<Rational>(name);
        auto end = alpha_series_at(prof, prof.params.s_star, 1);
        ok = ok && end[0] == Rational(0) && end[1] == Rational(-2) &&
             prof.beta_prime(0, prof.params.s_star) == Rational(-1);
    }
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        ok = ok && verify_compactification(prof).all_pass;
    }
    auto bad = catalog_profile<double>("taub-bolt");
    bad.params.A[1] = -12.0;  // breaks A_2^2 < q_2^2 A_1^2
    auto ctrl = render_check(verify_compactification(bad), OutputFormat::json);
    ok = ok && ctrl.code == 3;
    CHECK(report(3, ok, "endpoint identities exact, c3 per factor, control exits 3"));
}

TEST_CASE("4: alpha equals twice beta_1 on the exact entries") {
    bool ok = true;
    for (const char* name : {"h4", "ads-quotient"}) {
        auto prof = catalog_profile<Rational>(name);
        for (long k = 1; k <= 20; ++k) {
            Rational s(k, 21);
            ok = ok && prof.alpha(s) == Rational(2) * prof.beta(0, s);
        }
    }
    CHECK(report(4, ok, "alpha = 2 beta_1 at 20 rational points, exact"));
}

TEST_CASE("5: parity suite and odd-coefficient identity") {
    bool ok = true;
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        const int p = prof.spec.p();
        for (double v : alpha_parity(prof)) ok = ok && v == 0.0;
        auto xi = xi_series(prof, p + 2);
        for (int k = 1; k <= p - 2; k += 2) ok = ok && xi[static_cast<std::size_t>(k)] == 0.0;
        if (p % 2 != 0) continue;  // identity needs p - 1 odd
        const double target =
            -to_double(prof.params.kappa1_sq) * prof.C2 / (2.0 * prof.a[0]);
        ok = ok &&
             std::fabs(xi.pow(1 - p)[static_cast<std::size_t>(p - 1)] - target) < 1e-10;
    }
    CHECK(report(5, ok, "odd alpha/xi coefficients vanish; odd-term identity to 1e-10"));
}

TEST_CASE("6: quadrature oracle equivalence") {
    bool ok = true;
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        const double ss = to_double(prof.params.s_star);
        for (double s : chebyshev_grid(20, 0.05 * ss, 0.95 * ss)) {
            double closed = prof.alpha(s);
            ok = ok && std::fabs(alpha_quadrature_oracle(prof, s) - closed) <=
                           1e-8 * std::fabs(closed);
        }
    }
    CHECK(report(6, ok, "integral form of alpha matches P/Q to 1e-8 relative"));
}

TEST_CASE("7: boundary Q-curvature vanishes") {
    bool ok = true;
    auto spec = validate_spec(find_catalog("ads-quotient").input.raw);
    for (long nu : {-1L, -4L, -9L}) {
        auto params = solve_coefficients<Rational>(spec, Rational(nu),
                                                   {Branch::plus, Branch::plus});
        ok = ok && boundary_q_dim4(spec, params) == Rational(0);
    }
    for (double ep : {-0.5, -1.0, -2.0, -3.0, -4.0}) {
        BundleSpec raw{{{0, 1, 1, 1.0}}, {3, Rational(ep), 1.0}};
        auto fam = validate_spec(raw);
        auto params = solve_coefficients<double>(fam, -2.0, {Branch::plus, Branch::plus});
        ok = ok && std::fabs(boundary_q_dim4(fam, params)) < 1e-12;
    }
    CHECK(report(7, ok, "Q = 0 for the quotient family and circle-product family"));
}

TEST_CASE("8: anomaly and expansion convergence") {
    bool ok = true;
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        ok = ok && volume_expansion(prof, prof.spec.p() + 2).L == 0.0;
    }
    auto prof = catalog_profile<double>("h4");
    auto ex = volume_expansion(prof, prof.spec.p() + 2);
    double prev = 1e300;
    for (int k = 1; k <= 8; ++k) {
        const double delta = std::pow(2.0, -k);
        double trunc = *ex.V;
        for (const auto& [e, c] : ex.terms)
            if (e < 0) trunc += c * std::pow(delta, e);
        double vol = numeric_volume(prof, delta);
        double err = std::fabs(vol - trunc) / std::fabs(vol);
        ok = ok && err < prev;
        prev = err;
    }
    ok = ok && prev < 1e-4;
    CHECK(report(8, ok, "L = 0 everywhere; expansion error shrinks below 1e-4 relative"));
}
