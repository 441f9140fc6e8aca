#include "ccem/bundle.hpp"
#include "ccem/catalog.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ccem;

static BundleSpec raw_two(int n2, int p2, int q2, Rational eps, int n_ext = 0) {
    BundleSpec s;
    s.factors = {{1, 2, 1, 1.0}, {n2, p2, q2, 1.0}};
    s.external = {n_ext, eps, 1.0};
    return s;
}

TEST_CASE("dimension bookkeeping") {
    auto s = validate_spec(raw_two(0, 1, 1, Rational(0)));
    CHECK(s.m() == 4);
    CHECK(s.p() == 4);
    CHECK(s.r() == 2);
    auto t = validate_spec(raw_two(2, 1, 2, Rational(1), 3));
    CHECK(t.m() == 8);
    CHECK(t.p() == 11);
}

TEST_CASE("validation rejects bad data") {
    auto bad_q1 = raw_two(0, 1, 1, Rational(0));
    bad_q1.factors[0].q = 2;
    CHECK_THROWS_AS(validate_spec(bad_q1), NonUnitFirstCharge);

    auto zero_q = raw_two(1, 1, 0, Rational(0));
    CHECK_THROWS_AS(validate_spec(zero_q), ZeroCharge);

    BundleSpec not_proj;
    not_proj.factors = {{2, 2, 1, 1.0}};
    not_proj.external = {0, Rational(0), 1.0};
    CHECK_THROWS_AS(validate_spec(not_proj), FirstFactorNotProjective);

    auto curved_circle = raw_two(1, 1, 2, Rational(1), 1);
    CHECK_THROWS_AS(validate_spec(curved_circle), BadExternal);
}

TEST_CASE("single factor gets point padding") {
    BundleSpec s;
    s.factors = {{1, 2, 1, 1.0}};
    s.external = {0, Rational(1), 1.0};
    auto v = validate_spec(s);
    REQUIRE(v.r() == 2);
    CHECK(v.factors[1].is_point());
    CHECK(v.factors[1].p == 1);
    CHECK(v.factors[1].volume == 1.0);
    CHECK_FALSE(v.coupled(1));
    CHECK(v.coupled(0));
}

TEST_CASE("point convention normalizes p and volume") {
    auto s = raw_two(0, 7, 3, Rational(0));
    s.factors[1].volume = 5.0;
    auto v = validate_spec(s);
    CHECK(v.factors[1].p == 1);
    CHECK(v.factors[1].volume == 1.0);
}

TEST_CASE("validation is idempotent") {
    auto v = validate_spec(raw_two(1, 1, 2, Rational(-1), 2));
    auto w = validate_spec(v);
    CHECK(w.factors.size() == v.factors.size());
    for (std::size_t i = 0; i < v.factors.size(); ++i) {
        CHECK(w.factors[i].n == v.factors[i].n);
        CHECK(w.factors[i].p == v.factors[i].p);
        CHECK(w.factors[i].q == v.factors[i].q);
        CHECK(w.factors[i].volume == v.factors[i].volume);
    }
}

TEST_CASE("flat-case classification needs dominant first charge") {
    auto ok = validate_spec(raw_two(1, 1, 1, Rational(0)));
    auto tag = classify_case(ok);
    CHECK(tag.solvable);
    CHECK(tag.restriction[1] == Restriction::greater);

    auto bad = validate_spec(raw_two(1, 3, 1, Rational(0)));
    CHECK_THROWS_AS(classify_case(bad), NoAdmissibleCase);

    auto nonpos = validate_spec(raw_two(1, 0, 2, Rational(0)));
    CHECK_THROWS_AS(classify_case(nonpos), NoAdmissibleCase);
}

TEST_CASE("negative external constant allows non-positive factor constants") {
    auto s = validate_spec(raw_two(1, 0, 2, Rational(-1)));
    auto tag = classify_case(s);
    CHECK(tag.solvable);
    CHECK(tag.branch_options[1] == std::vector<Branch>{Branch::plus});
    auto iv = admissible_nu(s, tag);
    CHECK_FALSE(iv.bounded_below);
    CHECK(iv.contains(Rational(-1000)));
    CHECK_FALSE(iv.contains(Rational(0)));

    auto pos_eps = validate_spec(raw_two(1, 0, 2, Rational(1)));
    CHECK_THROWS_AS(classify_case(pos_eps), NoAdmissibleCase);
}

TEST_CASE("positive external constant: branch sets by restriction") {
    // p_1|q_2| = 2 > 1: both branches open for the second factor
    auto greater = validate_spec(raw_two(1, 1, 2, Rational(1)));
    auto tg = classify_case(greater);
    CHECK(tg.branch_options[0] == std::vector<Branch>{Branch::plus});
    CHECK(tg.branch_options[1] == std::vector<Branch>{Branch::plus, Branch::minus});

    // p_1|q_2| = 2 = p_2: minus only, open left endpoint
    auto equal = validate_spec(raw_two(1, 2, 1, Rational(1)));
    auto te = classify_case(equal);
    CHECK(te.branch_options[1] == std::vector<Branch>{Branch::minus});
    auto ive = admissible_nu(equal, te);
    CHECK(ive.bounded_below);
    CHECK_FALSE(ive.closed_below);
    CHECK(ive.lo == Rational(-4));
    CHECK_FALSE(ive.contains(Rational(-4)));
    CHECK(ive.contains(Rational(-7, 2)));

    // p_1|q_2| = 2 < p_2 = 3: first factor gains the minus option
    auto less = validate_spec(raw_two(1, 3, 1, Rational(1)));
    auto tl = classify_case(less);
    CHECK(tl.branch_options[0] ==
          std::vector<Branch>{Branch::plus, Branch::minus});
    CHECK(tl.branch_options[1] == std::vector<Branch>{Branch::minus});
    auto ivl = admissible_nu(less, tl);
    CHECK(ivl.closed_below);
    CHECK(ivl.lo == Rational(-4));
    CHECK(ivl.contains(Rational(-4)));
}

TEST_CASE("decorative point factors do not constrain the nu-range") {
    // h4 layout: the point factor would contribute phi = 1, but is exempt
    auto s = validate_spec(raw_two(0, 1, 1, Rational(1)));
    auto tag = classify_case(s);
    auto iv = admissible_nu(s, tag);
    CHECK(iv.lo == Rational(-4));  // phi = p_1^2/q_1^2 = 4 only
    CHECK(iv.contains(Rational(-3)));
    CHECK(iv.contains(Rational(-2)));
}

TEST_CASE("catalog entries all classify as solvable") {
    for (const auto& e : catalog()) {
        auto spec = validate_spec(e.input.raw);
        auto tag = classify_case(spec);
        CHECK(tag.solvable);
        auto iv = admissible_nu(spec, tag);
        CHECK(iv.contains(e.input.nu));
        for (int i = 0; i < spec.r(); ++i)
            CHECK(tag.branch_legal(i, e.input.branches[i]));
    }
}

TEST_CASE("config parsing mirrors the schema") {
    auto j = nlohmann::json::parse(R"({
        "factors": [{"n":1,"p":2,"q":1,"volume":6.0},{"n":0,"p":1,"q":1}],
        "external": {"n":0,"epsilon":1,"volume":1.0},
        "nu": -3,
        "branch": ["plus","plus"]
    })");
    auto in = parse_config(j);
    CHECK(in.raw.factors.size() == 2);
    CHECK(in.raw.factors[0].volume == 6.0);
    CHECK(in.nu == Rational(-3));
    CHECK(in.branches == std::vector<Branch>{Branch::plus, Branch::plus});

    auto frac = nlohmann::json::parse(R"({
        "factors": [{"n":1,"p":2,"q":1}],
        "external": {"n":0,"epsilon":"1/3"},
        "nu": "-1/4"
    })");
    auto in2 = parse_config(frac);
    CHECK(in2.raw.external.epsilon == Rational(1, 3));
    CHECK(in2.nu == Rational(-1, 4));

    CHECK_THROWS_AS(parse_config(nlohmann::json::object()), BadConfig);
}
