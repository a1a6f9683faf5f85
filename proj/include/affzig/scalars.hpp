#pragma once
// Exact coefficient arithmetic, sparse linear combinations and truncated
// graded-dimension series.

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace affzig {

/// Runtime-selected coefficient ring: the integers (modulus 0) or Z/p.
struct Ring {
    std::int64_t modulus = 0;

    static Ring integers() { return Ring{0}; }
    static Ring mod(std::int64_t p) {
        if (p < 2) throw std::invalid_argument("modulus must be at least 2");
        for (std::int64_t k = 2; k * k <= p; ++k)
            if (p % k == 0) throw std::invalid_argument("modulus must be prime");
        if (p > (std::int64_t(1) << 31)) throw std::invalid_argument("modulus too large");
        return Ring{p};
    }
    /// Parses "int" or "mod:p".
    static Ring parse(const std::string& s) {
        if (s == "int" || s == "integers") return integers();
        if (s.rfind("mod:", 0) == 0) return mod(std::stoll(s.substr(4)));
        throw std::invalid_argument("unknown ring '" + s + "' (expected int or mod:p)");
    }
    bool is_field() const { return modulus != 0; }
    std::string name() const { return modulus == 0 ? "int" : "mod:" + std::to_string(modulus); }
    bool operator==(const Ring&) const = default;
};

/// An element of Z or Z/p. Integer arithmetic is overflow-checked.
/// Mixing an integer with a residue maps the integer into Z/p.
class Scalar {
public:
    constexpr Scalar() = default;
    constexpr Scalar(std::int64_t v) : v_(v) {}  // NOLINT: implicit from integer literals
    Scalar(std::int64_t v, Ring r) : v_(v), p_(r.modulus) { normalize(); }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    Ring ring() const { return Ring{p_}; }
    bool is_zero() const { return v_ == 0; }

    friend Scalar operator+(Scalar a, Scalar b) {
        std::int64_t p = join(a, b);
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) overflow();
        return Scalar(r, p, true);
    }
    friend Scalar operator-(Scalar a, Scalar b) {
        std::int64_t p = join(a, b);
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) overflow();
        return Scalar(r, p, true);
    }
    friend Scalar operator*(Scalar a, Scalar b) {
        std::int64_t p = join(a, b);
        if (p) return Scalar(static_cast<std::int64_t>((__int128)a.v_ * b.v_ % p), p, true);
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) overflow();
        return Scalar(r, 0, true);
    }
    Scalar operator-() const { return Scalar(0, p_, true) - *this; }
    Scalar& operator+=(Scalar o) { return *this = *this + o; }
    Scalar& operator-=(Scalar o) { return *this = *this - o; }
    Scalar& operator*=(Scalar o) { return *this = *this * o; }

    /// Multiplicative inverse; defined for units only.
    Scalar inverse() const {
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;
            throw std::domain_error("integer " + std::to_string(v_) + " is not a unit");
        }
        if (v_ == 0) throw std::domain_error("zero is not invertible");
        std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
        while (m) {
            std::int64_t q = a / m;
            std::tie(a, m) = std::make_pair(m, a - q * m);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        }
        return Scalar(x0, p_, true);
    }

    friend bool operator==(Scalar a, Scalar b) {
        if (a.p_ == b.p_) return a.v_ == b.v_;
        std::int64_t p = a.p_ ? a.p_ : b.p_;
        return Scalar(a.v_, p, true).v_ == Scalar(b.v_, p, true).v_;
    }
    friend bool operator<(Scalar a, Scalar b) { return a.v_ < b.v_; }
    friend std::ostream& operator<<(std::ostream& os, Scalar s) { return os << s.v_; }

private:
    Scalar(std::int64_t v, std::int64_t p, bool) : v_(v), p_(p) { normalize(); }
    void normalize() {
        if (p_) {
            v_ %= p_;
            if (v_ < 0) v_ += p_;
        }
    }
    static std::int64_t join(Scalar a, Scalar b) {
        if (a.p_ && b.p_ && a.p_ != b.p_) throw std::invalid_argument("mixed coefficient moduli");
        return a.p_ ? a.p_ : b.p_;
    }
    [[noreturn]] static void overflow() { throw std::overflow_error("integer coefficient overflow"); }

    std::int64_t v_ = 0;
    std::int64_t p_ = 0;
};

/// Sparse linear combination over an ordered key type. Zero coefficients are never stored.
template <class Key>
class LinComb {
public:
    using map_type = std::map<Key, Scalar>;

    LinComb() = default;
    LinComb(const Key& k, Scalar c = 1) { add(k, c); }

    void add(const Key& k, Scalar c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add(const LinComb& o, Scalar c = 1) {
        if (c.is_zero()) return;
        for (const auto& [k, v] : o.terms_) add(k, v * c);
    }
    LinComb scaled(Scalar c) const {
        LinComb r;
        r.add(*this, c);
        return r;
    }
    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    friend LinComb operator+(LinComb a, const LinComb& b) {
        a.add(b);
        return a;
    }
    friend LinComb operator-(LinComb a, const LinComb& b) {
        a.add(b, -1);
        return a;
    }
    LinComb& operator+=(const LinComb& b) {
        add(b);
        return *this;
    }
    LinComb& operator-=(const LinComb& b) {
        add(b, -1);
        return *this;
    }
    friend bool operator==(const LinComb& a, const LinComb& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [k, v] : a.terms_) {
            if (!(it->first == k) || !(it->second == v)) return false;
            ++it;
        }
        return true;
    }

private:
    map_type terms_;
};

/// Polynomial in q with integer coefficients, dense from q^0.
using QPoly = std::vector<std::int64_t>;

/// Truncated power series Σ_{k≤D} a_k q^k; D is always explicit.
class GradedDim {
public:
    GradedDim() = default;
    explicit GradedDim(int D) : coeffs_(check_degree(D) + 1, 0) {}
    GradedDim(QPoly coeffs, int D) : coeffs_(check_degree(D) + 1, 0) {
        for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(D); ++k)
            coeffs_[k] = coeffs[k];
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const QPoly& coeffs() const { return coeffs_; }
    std::int64_t operator[](int k) const { return k <= degree() ? coeffs_[k] : 0; }
    std::int64_t& at(int k) { return coeffs_.at(k); }

    friend GradedDim operator+(const GradedDim& a, const GradedDim& b) {
        int D = std::min(a.degree(), b.degree());
        GradedDim r(D);
        for (int k = 0; k <= D; ++k) r.coeffs_[k] = checked_add(a[k], b[k]);
        return r;
    }
    friend GradedDim operator*(const GradedDim& a, const GradedDim& b) {
        int D = std::min(a.degree(), b.degree());
        GradedDim r(D);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) r.coeffs_[i + j] = checked_add(r.coeffs_[i + j], checked_mul(a[i], b[j]));
        return r;
    }
    GradedDim scaled(std::int64_t c) const {
        GradedDim r(degree());
        for (int k = 0; k <= degree(); ++k) r.coeffs_[k] = checked_mul(c, coeffs_[k]);
        return r;
    }
    GradedDim pow(int n) const {
        GradedDim r(QPoly{1}, degree());
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }
    bool nonnegative() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c >= 0; });
    }
    bool operator==(const GradedDim&) const = default;

    std::string to_string() const {
        std::string s;
        for (int k = 0; k <= degree(); ++k) {
            if (coeffs_[k] == 0) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(coeffs_[k]);
            if (k == 1) s += "q";
            if (k > 1) s += "q^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

private:
    static int check_degree(int D) {
        if (D < 0) throw std::invalid_argument("truncation degree must be nonnegative");
        return D;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
        return r;
    }

    QPoly coeffs_;
};

/// Expansion of numerator / Π(1 − q^{d_k}) through degree D.
inline GradedDim series_of_rational(const QPoly& numerator, const std::vector<int>& denominator_degrees, int D) {
    if (D < 0) throw std::invalid_argument("truncation degree must be nonnegative");
    GradedDim r(numerator, D);
    for (int d : denominator_degrees) {
        if (d < 1) throw std::invalid_argument("denominator factors need degree at least 1");
        // Multiplying by 1/(1 − q^d) is the recurrence a_k += a_{k−d}.
        for (int k = d; k <= D; ++k) r.at(k) += r[k - d];
    }
    return r;
}

}  // namespace affzig
