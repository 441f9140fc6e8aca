#pragma once

#include "ccem/errors.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace ccem {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]: {abscissa, gauss weight, kronrod weight}.
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
std::pair<double, double> gk15_panel(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double y0 = f(mid);
    double g = gk15[0][1] * y0;
    double k = gk15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = h * gk15[i][0];
        double y = f(mid + dx) + f(mid - dx);
        g += gk15[i][1] * y;
        k += gk15[i][2] * y;
    }
    return {k * h, std::fabs((k - g) * h)};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 1e-300) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    auto [v0, e0] = detail::gk15_panel(f, a, b);
    std::vector<Seg> segs{{a, b, v0, e0}};
    const std::size_t max_segs = 4000;
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (err <= rel_tol * std::fabs(total) || err <= abs_tol) return total;
        if (segs.size() >= max_segs)
            throw QuadratureFailure("tolerance not reached after " +
                                    std::to_string(max_segs) + " subdivisions");
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        auto [vl, el] = detail::gk15_panel(f, s.a, mid);
        auto [vr, er] = detail::gk15_panel(f, mid, s.b);
        segs[worst] = {s.a, mid, vl, el};
        segs.push_back({mid, s.b, vr, er});
    }
}

} // namespace ccem
