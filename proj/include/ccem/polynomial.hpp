#pragma once

#include <cstddef>
#include <vector>

namespace ccem {

/// Dense univariate polynomial with ascending coefficients.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }

    const std::vector<T>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }

    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

    void set_coeff(std::size_t k, T v) {
        if (k >= c_.size()) c_.resize(k + 1, T(0));
        c_[k] = std::move(v);
        trim();
    }

    T operator()(const T& x) const {
        T acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
        return Polynomial(std::move(d));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return Polynomial(std::move(r));
    }

    Polynomial operator-(const Polynomial& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const T& s) const {
        std::vector<T> r(c_);
        for (auto& v : r) v = v * s;
        return Polynomial(std::move(r));
    }

    /// Taylor shift: returns q with q(u) = p(x0 + u).
    Polynomial shifted(const T& x0) const {
        std::vector<T> r(c_);
        // repeated synthetic division by (x - x0)
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            for (std::size_t k = r.size() - 1; k > i; --k) r[k - 1] += r[k] * x0;
        return Polynomial(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

} // namespace ccem
