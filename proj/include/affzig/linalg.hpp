#pragma once
// Exact linear algebra: sparse rank modulo a prime and dense rational elimination.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affzig {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Default prime for rank certificates over the integers.
inline constexpr std::int64_t kRankPrime = 2147483647;  // 2^31 - 1

inline std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    while (e) {
        if (e & 1) r = static_cast<std::int64_t>((__int128)r * a % p);
        a = static_cast<std::int64_t>((__int128)a * a % p);
        e >>= 1;
    }
    return r;
}

/// Sparse row over Z/p, sorted by column.
using SparseRow = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Incremental row echelon form over Z/p. Rows may be inserted one at a time;
/// insert() reports whether the row increased the rank.
class ModPEchelon {
public:
    explicit ModPEchelon(std::int64_t p = kRankPrime) : p_(p) {}

    bool insert(SparseRow row) {
        normalize(row);
        while (!row.empty()) {
            std::int64_t lead = row.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                std::int64_t inv = mod_pow(row.front().second, p_ - 2, p_);
                for (auto& e : row) e.second = static_cast<std::int64_t>((__int128)e.second * inv % p_);
                pivots_.emplace(lead, std::move(row));
                return true;
            }
            std::int64_t f = row.front().second;
            row = axpy(row, it->second, p_ - f);
        }
        return false;
    }
    std::size_t rank() const { return pivots_.size(); }

private:
    void normalize(SparseRow& row) const {
        std::map<std::int64_t, std::int64_t> acc;
        for (auto [c, v] : row) {
            std::int64_t x = v % p_;
            if (x < 0) x += p_;
            acc[c] = (acc[c] + x) % p_;
        }
        row.clear();
        for (auto [c, v] : acc)
            if (v) row.emplace_back(c, v);
    }
    // Returns a + f*b.
    SparseRow axpy(const SparseRow& a, const SparseRow& b, std::int64_t f) const {
        SparseRow r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                r.emplace_back(b[j].first, static_cast<std::int64_t>((__int128)b[j].second * f % p_));
                ++j;
            } else {
                std::int64_t v = static_cast<std::int64_t>((a[i].second + (__int128)b[j].second * f) % p_);
                if (v) r.emplace_back(a[i].first, v);
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::int64_t p_;
    std::map<std::int64_t, SparseRow> pivots_;
};

inline std::size_t rank_mod_p(const std::vector<SparseRow>& rows, std::int64_t p = kRankPrime) {
    ModPEchelon e(p);
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

using RatMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

/// Basis of the right kernel {x : m x = 0}, each vector scaled to a primitive integer vector.
inline std::vector<std::vector<BigInt>> kernel_basis(RatMatrix m, std::size_t cols) {
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<BigInt>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        BigInt den = 1;
        for (auto& x : v) {
            BigInt dd = boost::multiprecision::denominator(x);
            den = den / boost::multiprecision::gcd(den, dd) * dd;
        }
        std::vector<BigInt> iv(cols);
        BigInt g = 0;
        for (std::size_t k = 0; k < cols; ++k) {
            Rational s = v[k] * den;
            iv[k] = boost::multiprecision::numerator(s);
            g = boost::multiprecision::gcd(g, iv[k]);
        }
        if (g > 1)
            for (auto& x : iv) x /= g;
        out.push_back(std::move(iv));
    }
    return out;
}

inline std::size_t rational_rank(RatMatrix m, std::size_t cols) { return rref(m, cols).size(); }

/// Inverse of a square rational matrix, or an empty matrix when singular.
inline RatMatrix rational_inverse(const RatMatrix& a) {
    std::size_t n = a.size();
    RatMatrix aug(n, std::vector<Rational>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug, n);
    if (piv.size() != n) return {};
    RatMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

inline Rational determinant(RatMatrix m) {
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace affzig
