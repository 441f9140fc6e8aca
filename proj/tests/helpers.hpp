#pragma once

#include "ccem/catalog.hpp"
#include "ccem/profile.hpp"

#include <string>

namespace ccem::testing {

template <class T>
MetricProfile<T> catalog_profile(const std::string& name) {
    const auto& e = find_catalog(name);
    BundleSpec spec = validate_spec(e.input.raw);
    T nu;
    if constexpr (is_exact_v<T>)
        nu = e.input.nu;
    else
        nu = to_double(e.input.nu);
    auto params = solve_coefficients<T>(spec, nu, e.input.branches);
    return build_profile(spec, params);
}

inline const char* exact_names[] = {"h4", "ads-quotient", "cir", "rpzq-n3"};
inline const char* floating_names[] = {"taub-nut", "taub-bolt"};
inline const char* all_names[] = {"h4",        "taub-nut", "ads-quotient",
                                  "taub-bolt", "cir",      "rpzq-n3"};

} // namespace ccem::testing
