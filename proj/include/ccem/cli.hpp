#pragma once

#include "ccem/boundary.hpp"
#include "ccem/catalog.hpp"
#include "ccem/curvature.hpp"
#include "ccem/geodesic.hpp"
#include "ccem/profile.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace ccem {

enum class OutputFormat { human, json, csv };

struct Command {
    std::string verb;
    std::string catalog_name;   // exactly one of catalog_name/config_path
    std::string config_path;
    int samples = 50;
    int order = 0;              // 0 means the default p+2
    OutputFormat format = OutputFormat::human;
    bool describe = false;
};

struct RunResult {
    int code = 0;
    std::string payload;
    std::string message;
};

namespace detail {

inline std::vector<Branch> pad_branches(std::vector<Branch> b, int r) {
    if (static_cast<int>(b.size()) > r) throw BadConfig("more branch entries than factors");
    b.resize(static_cast<std::size_t>(r), Branch::plus);
    return b;
}

/// Validate, solve and build; exact arithmetic when every root is rational,
/// floating otherwise. f receives MetricProfile<Rational> or <double>.
template <class F>
RunResult with_profile(const ProblemInput& in, F&& f) {
    BundleSpec spec = validate_spec(in.raw);
    auto branches = pad_branches(in.branches, spec.r());
    try {
        auto params = solve_coefficients<Rational>(spec, in.nu, branches);
        return f(build_profile(spec, params), true);
    } catch (const NotExact&) {
        auto params = solve_coefficients<double>(spec, to_double(in.nu), branches);
        return f(build_profile(spec, params), false);
    }
}

inline std::string render(const nlohmann::json& j, OutputFormat fmt) {
    return fmt == OutputFormat::human ? j.dump(2) : j.dump();
}

template <class T>
std::vector<T> grid_for(const MetricProfile<T>& prof, int samples) {
    const double ss = to_double(prof.params.s_star);
    std::vector<T> out;
    for (double x : chebyshev_grid(samples, 0.01 * ss, 0.99 * ss)) out.emplace_back(x);
    return out;
}

} // namespace detail

/// Residual sweep shared by the `verify` verb and the tests.
struct VerifySummary {
    double max_residual = 0.0;
    double lambda_dev = 0.0;
    int grid = 0;
    bool exact = false;
    bool pass = false;
};

template <class T>
VerifySummary verify_profile(const MetricProfile<T>& prof, int samples) {
    VerifySummary out;
    out.grid = samples;
    out.exact = is_exact_v<T>;
    T maxres(0), dev(0);
    const T target = T(static_cast<long>(1 - prof.spec.p()));
    for (const T& s : detail::grid_for(prof, samples)) {
        auto rep = einstein_constant(prof, s);
        maxres = std::max(maxres, rep.residuals.max_abs());
        dev = std::max(dev, abs_val(T(rep.lambda - target)));
    }
    out.max_residual = to_double(maxres);
    out.lambda_dev = to_double(dev);
    if constexpr (is_exact_v<T>)
        out.pass = maxres == T(0) && dev == T(0);
    else
        out.pass = out.max_residual < 1e-10 && out.lambda_dev < 1e-12;
    return out;
}

/// Render a compactification report the way the `check` verb does.
template <class T>
RunResult render_check(const CompactificationReport<T>& rep, OutputFormat fmt) {
    RunResult res;
    if (fmt == OutputFormat::human) {
        std::ostringstream os;
        for (const auto& c : rep.checks)
            os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(40) << c.name
               << " value=" << to_double(c.value)
               << (c.positivity ? "" : " target=" + std::to_string(to_double(c.target)))
               << '\n';
        res.payload = os.str();
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& c : rep.checks)
            rows.push_back({{"name", c.name},
                            {"value", to_double(c.value)},
                            {"target", c.positivity ? nlohmann::json() : nlohmann::json(to_double(c.target))},
                            {"pass", c.pass}});
        res.payload = rows.dump();
    }
    if (!rep.all_pass) {
        res.code = 3;
        res.message = "ToleranceFailure: compactification check failed";
    }
    return res;
}

inline RunResult execute(const Command& cmd) {
    try {
        if (cmd.verb == "catalog") {
            RunResult res;
            if (cmd.format == OutputFormat::human) {
                std::ostringstream os;
                for (const auto& e : catalog()) {
                    os << e.name;
                    if (cmd.describe) os << "  -  " << e.description;
                    os << '\n';
                }
                res.payload = os.str();
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& e : catalog())
                    arr.push_back({{"name", e.name}, {"description", e.description}});
                res.payload = arr.dump();
            }
            return res;
        }

        const bool have_cat = !cmd.catalog_name.empty();
        const bool have_cfg = !cmd.config_path.empty();
        if (have_cat == have_cfg)
            throw BadConfig("exactly one of --catalog and --config is required");
        ProblemInput input =
            have_cat ? find_catalog(cmd.catalog_name).input : load_config(cmd.config_path);

        if (cmd.verb == "solve") {
            return detail::with_profile(input, [&](const auto& prof, bool exact) {
                nlohmann::json j;
                j["nu"] = to_double(prof.params.nu);
                j["A"] = nlohmann::json::array();
                for (const auto& a : prof.params.A) j["A"].push_back(to_double(a));
                j["s_star"] = to_double(prof.params.s_star);
                j["kappa1_sq"] = to_double(prof.params.kappa1_sq);
                j["kappa1"] = prof.params.kappa1();
                j["branches"] = nlohmann::json::array();
                for (Branch b : prof.params.branches) j["branches"].push_back(to_string(b));
                j["exact"] = exact;
                return RunResult{0, detail::render(j, cmd.format), ""};
            });
        }

        if (cmd.verb == "verify") {
            return detail::with_profile(input, [&](const auto& prof, bool exact) {
                auto sum = verify_profile(prof, cmd.samples);
                nlohmann::json j{{"max_residual", sum.max_residual},
                                 {"lambda_dev", sum.lambda_dev},
                                 {"grid", sum.grid},
                                 {"exact", exact}};
                RunResult res{0, detail::render(j, cmd.format), ""};
                if (!sum.pass) {
                    res.code = 3;
                    res.message = "ToleranceFailure: Einstein residuals out of tolerance";
                }
                return res;
            });
        }

        if (cmd.verb == "check") {
            return detail::with_profile(input, [&](const auto& prof, bool) {
                return render_check(verify_compactification(prof), cmd.format);
            });
        }

        if (cmd.verb == "profile") {
            return detail::with_profile(input, [&](const auto& prof, bool) {
                std::ostringstream os;
                const double ss = to_double(prof.params.s_star);
                write_profile_csv(os, prof, chebyshev_grid(cmd.samples, 0.01 * ss, 0.99 * ss));
                return RunResult{0, os.str(), ""};
            });
        }

        if (cmd.verb == "expand") {
            return detail::with_profile(input, [&](const auto& prof, bool) {
                const int p = prof.spec.p();
                const int K = cmd.order > 0 ? cmd.order : p + 2;
                auto ex = volume_expansion(prof, K);
                nlohmann::json terms = nlohmann::json::object();
                for (const auto& [e, c] : ex.terms) terms[std::to_string(e)] = c;
                nlohmann::json j{{"terms", terms}, {"L", ex.L}};
                if (ex.even_p) {
                    auto vr = renormalized_volume(prof);
                    j["V_closed"] = vr.V_closed;
                    j["V_series"] = vr.V_series;
                } else {
                    j["V_closed"] = nullptr;
                    j["V_series"] = nullptr;
                }
                return RunResult{0, detail::render(j, cmd.format), ""};
            });
        }

        if (cmd.verb == "volume") {
            return detail::with_profile(input, [&](const auto& prof, bool) {
                auto vr = renormalized_volume(prof);
                nlohmann::json j{{"V_closed", vr.V_closed},
                                 {"V_series", vr.V_series},
                                 {"agreement", vr.agreement}};
                return RunResult{0, detail::render(j, cmd.format), ""};
            });
        }

        if (cmd.verb == "qcurv") {
            return detail::with_profile(input, [&](const auto& prof, bool) {
                auto eigs = boundary_ricci_eigs(prof.spec, prof.params);
                auto q = q_curvature_dim4(eigs);
                nlohmann::json j;
                j["Q"] = to_double(q);
                j["eigenvalues"] = nlohmann::json::array();
                for (const auto& e : eigs) j["eigenvalues"].push_back(to_double(e));
                return RunResult{0, detail::render(j, cmd.format), ""};
            });
        }

        throw BadConfig("unknown verb '" + cmd.verb + "'");
    } catch (const Error& e) {
        return RunResult{static_cast<int>(e.kind()), "", e.what()};
    }
}

} // namespace ccem
