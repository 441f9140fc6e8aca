#include "ccem/boundary.hpp"
#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace ccem;
using ccem::testing::catalog_profile;

TEST_CASE("compactification report passes on every catalog entry") {
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        auto rep = verify_compactification(prof);
        INFO(name);
        for (const auto& c : rep.checks) {
            INFO(c.name);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass);
    }
    for (const char* name : ccem::testing::exact_names) {
        auto prof = catalog_profile<Rational>(name);
        INFO(name);
        CHECK(verify_compactification(prof).all_pass);
    }
}

TEST_CASE("tampered second coefficient fails the c3 inequality") {
    auto prof = catalog_profile<double>("taub-bolt");
    // A_1 ~ -3.73, q_2 = 3: push A_2 past the bound |A_2| < 3|A_1|
    prof.params.A[1] = -12.0;
    auto rep = verify_compactification(prof);
    CHECK_FALSE(rep.all_pass);
    bool c3_failed = false;
    for (const auto& c : rep.checks)
        if (c.name.find("A_1^2 - A_2^2") != std::string::npos && !c.pass)
            c3_failed = true;
    CHECK(c3_failed);
}

TEST_CASE("manual inequality probe from the construction") {
    // A_1 = -1/2, q_2 = 1, A_2 = -2 violates A_2^2 < q_2^2 A_1^2 (4 > 1/4)
    CHECK_FALSE(Rational(-2) * Rational(-2) <
                Rational(1) * Rational(-1, 2) * Rational(-1, 2));
}

TEST_CASE("conformal infinity coefficients") {
    auto h4 = catalog_profile<Rational>("h4");
    auto g = conformal_infinity(h4.params, h4.spec);
    CHECK(g.kind == BoundaryKind::gamma);
    CHECK(g.fiber_coeff == Rational(1));
    // (p-1) q^2 / (4 nu A_1) = 3 / (4 (-3)(-1/2)) = 1/2: round S^3(1)
    CHECK(g.base_coeffs[0] == Rational(1, 2));
    CHECK(g.external_coeff == Rational(1));

    auto quo = catalog_profile<Rational>("ads-quotient");
    auto gq = conformal_infinity(quo.params, quo.spec);
    CHECK(gq.base_coeffs[0] == Rational(1, 2));
    // (1-p)/nu = -2 p_1 / nu with p = 5, p_1 = 2
    CHECK(gq.external_coeff == Rational(-2) * Rational(2) / quo.params.nu);

    auto rp = catalog_profile<Rational>("rpzq-n3");
    // (n + 2 p_1 - 1)/(4 nu A_1) with n = 3, p_1 = 2
    CHECK(conformal_infinity(rp.params, rp.spec).base_coeffs[0] ==
          Rational(3 + 2 * 2 - 1) / (Rational(4) * rp.params.nu * rp.params.A[0]));
}

TEST_CASE("boundary representative and its relation to gamma") {
    auto h4 = catalog_profile<Rational>("h4");
    auto gb = boundary_representative(h4.params, h4.spec);
    CHECK(gb.kind == BoundaryKind::g_b);
    CHECK(gb.fiber_coeff == Rational(1));
    CHECK(gb.base_coeffs[0] == Rational(1, 2));

    auto quo = catalog_profile<Rational>("ads-quotient");
    auto gbq = boundary_representative(quo.params, quo.spec);
    CHECK(gbq.fiber_coeff == Rational(1));
    CHECK(gbq.base_coeffs[0] == Rational(1, 2));
    CHECK(gbq.external_coeff == Rational(1));

    // g_b = alpha(0) gamma componentwise, since kappa1^2 = alpha(0)^{-1}
    for (const char* name : ccem::testing::exact_names) {
        auto prof = catalog_profile<Rational>(name);
        auto gam = conformal_infinity(prof.params, prof.spec);
        auto rep = boundary_representative(prof.params, prof.spec);
        Rational alpha0 = prof.params.nu / Rational(1 - prof.spec.p());
        INFO(name);
        CHECK(rep.fiber_coeff == alpha0 * gam.fiber_coeff);
        for (int i = 0; i < prof.spec.r(); ++i)
            CHECK(rep.base_coeffs[i] == alpha0 * gam.base_coeffs[i]);
        CHECK(rep.external_coeff == alpha0 * gam.external_coeff);
    }
}

TEST_CASE("boundary metric coefficients are positive") {
    for (const char* name : ccem::testing::all_names) {
        auto prof = catalog_profile<double>(name);
        auto gam = conformal_infinity(prof.params, prof.spec);
        auto rep = boundary_representative(prof.params, prof.spec);
        INFO(name);
        for (const auto& m : {gam, rep}) {
            CHECK(m.fiber_coeff > 0.0);
            CHECK(m.external_coeff > 0.0);
            for (double b : m.base_coeffs) CHECK(b > 0.0);
        }
    }
}

TEST_CASE("odd derivatives of alpha vanish through order p - 2") {
    for (const char* name : ccem::testing::exact_names) {
        auto prof = catalog_profile<Rational>(name);
        INFO(name);
        for (const auto& v : alpha_parity(prof)) CHECK(v == Rational(0));
    }
    for (const char* name : ccem::testing::floating_names) {
        auto prof = catalog_profile<double>(name);
        INFO(name);
        for (double v : alpha_parity(prof)) CHECK(std::fabs(v) < 1e-12);
    }
}

TEST_CASE("the odd part of alpha sits exactly at order p - 1") {
    // even p with C2 != 0: the only odd Taylor coefficient of alpha is C2/a_0
    auto prof = catalog_profile<double>("taub-nut");
    const int p = prof.spec.p();
    REQUIRE(p % 2 == 0);
    REQUIRE(std::fabs(prof.C2) > 1e-6);
    auto ser = alpha_series_at(prof, 0.0, p - 1);
    CHECK(ser[static_cast<std::size_t>(p - 1)] ==
          Catch::Approx(prof.C2 / prof.a[0]).epsilon(1e-12));
    // perturbing C2 moves order p-1 but leaves all lower odd orders at zero
    auto pert = prof;
    pert.C2 += 1e-3;
    pert.Ppoly.set_coeff(static_cast<std::size_t>(p - 1),
                         pert.Ppoly.coeff(p - 1) + 1e-3);
    for (double v : alpha_parity(pert)) CHECK(std::fabs(v) < 1e-12);
    auto pser = alpha_series_at(pert, 0.0, p - 1);
    CHECK(std::fabs(pser[static_cast<std::size_t>(p - 1)] -
                    ser[static_cast<std::size_t>(p - 1)]) > 1e-4);
}
