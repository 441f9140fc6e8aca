#pragma once

#include "ccem/errors.hpp"
#include "ccem/polynomial.hpp"
#include "ccem/scalar.hpp"

#include <cstddef>
#include <vector>

namespace ccem {

/// Truncated Taylor series at 0: c_0 + c_1 x + ... + c_K x^K.
/// All operations truncate at the common order K.
template <class T>
class PowerSeries {
public:
    explicit PowerSeries(std::size_t order) : c_(order + 1, T(0)) {}
    PowerSeries(std::vector<T> coeffs, std::size_t order) : c_(std::move(coeffs)) {
        c_.resize(order + 1, T(0));
    }

    static PowerSeries from_polynomial(const Polynomial<T>& p, std::size_t order) {
        PowerSeries s(order);
        for (std::size_t k = 0; k <= order; ++k) s.c_[k] = p.coeff(k);
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T& operator[](std::size_t k) { return c_[k]; }
    const T& operator[](std::size_t k) const { return c_[k]; }

    PowerSeries operator+(const PowerSeries& o) const {
        PowerSeries r(order());
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }

    PowerSeries operator-(const PowerSeries& o) const {
        PowerSeries r(order());
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }

    PowerSeries operator*(const PowerSeries& o) const {
        PowerSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    PowerSeries operator*(const T& s) const {
        PowerSeries r = *this;
        for (auto& v : r.c_) v = v * s;
        return r;
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    PowerSeries inverse() const {
        if (c_[0] == T(0)) throw OutOfDomain("series inverse requires nonzero constant term");
        PowerSeries r(order());
        r.c_[0] = T(1) / c_[0];
        for (std::size_t k = 1; k < c_.size(); ++k) {
            T acc(0);
            for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }

    PowerSeries operator/(const PowerSeries& o) const { return *this * o.inverse(); }

    /// Integer power, negative exponents via inverse().
    PowerSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        PowerSeries r(order());
        r.c_[0] = T(1);
        PowerSeries base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    /// Square root with positive constant term.
    PowerSeries sqrt() const {
        auto r0 = checked_sqrt(c_[0]);
        if (!r0 || c_[0] <= T(0))
            throw OutOfDomain("series sqrt requires positive (exactly rootable) constant term");
        PowerSeries r(order());
        r.c_[0] = *r0;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            T acc(0);
            for (std::size_t j = 1; j < k; ++j) acc += r.c_[j] * r.c_[k - j];
            r.c_[k] = (c_[k] - acc) / (T(2) * r.c_[0]);
        }
        return r;
    }

    /// Composition self(inner), inner must have zero constant term.
    PowerSeries compose(const PowerSeries& inner) const {
        if (inner.c_[0] != T(0))
            throw OutOfDomain("series composition requires inner constant term 0");
        PowerSeries r(order());
        for (std::size_t k = c_.size(); k-- > 0;) {
            r = r * inner;
            r.c_[0] += c_[k];
        }
        return r;
    }

private:
    std::vector<T> c_;
};

} // namespace ccem
