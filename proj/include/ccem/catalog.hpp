#pragma once

#include "ccem/bundle.hpp"
#include "ccem/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <numbers>
#include <string>
#include <vector>

namespace ccem {

/// A fully pinned parameter point: discrete data plus (nu, branches).
struct ProblemInput {
    BundleSpec raw;                 // unvalidated; run validate_spec
    Rational nu;
    std::vector<Branch> branches;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    ProblemInput input;
};

/// Built-in example configurations with exactly pinned parameters.
/// Vol(CP^1, Ric = 2h) = 2 pi; Vol(S^1) = 2 pi.
inline const std::vector<CatalogEntry>& catalog() {
    static const double tp = 2.0 * std::numbers::pi;
    static const std::vector<CatalogEntry> entries = {
        {"h4", "4-dimensional hyperbolic space (nu = -3, epsilon = 1)",
         {{{{1, 2, 1, tp}, {0, 1, 1, 1.0}}, {0, Rational(1), 1.0}},
          Rational(-3),
          {Branch::plus, Branch::plus}}},
        {"taub-nut", "self-dual Taub-NUT-type metric on the 4-ball (nu = -2)",
         {{{{1, 2, 1, tp}, {0, 1, 1, 1.0}}, {0, Rational(1), 1.0}},
          Rational(-2),
          {Branch::plus, Branch::plus}}},
        {"ads-quotient",
         "circle quotient of anti-de Sitter space, boundary S^3 x S^1 (nu = -4)",
         {{{{1, 2, 1, tp}, {0, 1, 1, 1.0}}, {1, Rational(0), tp}},
          Rational(-4),
          {Branch::plus, Branch::plus}}},
        {"taub-bolt", "Taub-Bolt-type metric over CP^1 with charge 3 (nu = -1/4)",
         {{{{0, 1, 1, 1.0}, {1, 2, 3, tp}}, {0, Rational(1), 1.0}},
          Rational(-1, 4),
          {Branch::plus, Branch::minus}}},
        {"cir",
         "disc bundle with flat circle external factor, charge-3 CP^1 base (nu = -4)",
         {{{{0, 1, 1, 1.0}, {1, 2, 3, tp}}, {1, Rational(0), tp}},
          Rational(-4),
          {Branch::plus, Branch::plus}}},
        {"rpzq-n3",
         "3-dimensional negative external factor over CP^1, 7-dimensional total "
         "space (nu = -6, epsilon = -2)",
         {{{{1, 2, 1, tp}, {0, 1, 1, 1.0}}, {3, Rational(-2), 1.0}},
          Rational(-6),
          {Branch::plus, Branch::plus}}},
    };
    return entries;
}

inline const CatalogEntry& find_catalog(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw BadConfig("unknown catalog entry '" + name + "'");
}

namespace detail {

/// Accept a JSON number (doubles are dyadic, hence exact) or an "a/b" string.
inline Rational rational_from_json(const nlohmann::json& v, const char* what) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return Rational(v.get<double>());
    if (v.is_string()) {
        try {
            return Rational(v.get<std::string>());
        } catch (const std::exception&) {
            throw BadConfig(std::string(what) + ": unparsable rational string");
        }
    }
    throw BadConfig(std::string(what) + " must be a number or an \"a/b\" string");
}

} // namespace detail

/// Parse a JSON configuration object into a ProblemInput.
inline ProblemInput parse_config(const nlohmann::json& j) {
    ProblemInput in;
    try {
        if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
            throw BadConfig("config needs a nonempty \"factors\" array");
        for (const auto& f : j["factors"]) {
            FactorSpec fs;
            fs.n = f.at("n").get<int>();
            fs.p = f.at("p").get<int>();
            fs.q = f.at("q").get<int>();
            fs.volume = f.value("volume", 1.0);
            in.raw.factors.push_back(fs);
        }
        const auto& e = j.at("external");
        in.raw.external.n = e.at("n").get<int>();
        in.raw.external.epsilon = detail::rational_from_json(e.at("epsilon"), "epsilon");
        in.raw.external.volume = e.value("volume", 1.0);
        in.nu = detail::rational_from_json(j.at("nu"), "nu");
        if (j.contains("branch")) {
            for (const auto& b : j["branch"]) {
                std::string s = b.get<std::string>();
                if (s == "plus")
                    in.branches.push_back(Branch::plus);
                else if (s == "minus")
                    in.branches.push_back(Branch::minus);
                else
                    throw BadConfig("branch entries must be \"plus\" or \"minus\"");
            }
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        throw BadConfig(std::string("malformed config: ") + ex.what());
    }
    return in;
}

inline ProblemInput load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw BadConfig("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& ex) {
        throw BadConfig(std::string("invalid JSON: ") + ex.what());
    }
    return parse_config(j);
}

} // namespace ccem
