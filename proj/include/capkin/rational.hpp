#ifndef CAPKIN_RATIONAL_HPP
#define CAPKIN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace capkin {

/// Exact rational scalar used by all conservation and certificate math.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

namespace detail {

/// Reduced row echelon form in place. Returns the pivot column of each
/// pivot row, in row order.
inline std::vector<int> rref(RatMat& a) {
    std::vector<int> pivot_cols;
    if (a.empty())
        return pivot_cols;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r) {
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0)
            continue;
        std::swap(a[row], a[piv]);
        const Rational inv = Rational(1) / a[row][col];
        for (int c = col; c < cols; ++c)
            a[row][c] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][col] == 0)
                continue;
            const Rational f = a[r][col];
            for (int c = col; c < cols; ++c)
                a[r][c] -= f * a[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

/// Rescales a rational vector to coprime integers with a positive leading
/// nonzero entry. Keeps certificates and basis vectors readable.
inline RatVec normalize_integer(const RatVec& v) {
    BigInt lcm = 1;
    for (const Rational& x : v)
        lcm = boost::multiprecision::lcm(lcm, denominator(x));
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    BigInt g = 0;
    for (const Rational& x : v) {
        BigInt n = numerator(x) * (lcm / denominator(x));
        ints.push_back(n);
        g = boost::multiprecision::gcd(g, n);
    }
    if (g == 0)
        g = 1;
    int lead_sign = 0;
    for (const BigInt& n : ints) {
        if (n != 0) {
            lead_sign = n > 0 ? 1 : -1;
            break;
        }
    }
    if (lead_sign == 0)
        lead_sign = 1;
    RatVec out;
    out.reserve(v.size());
    for (const BigInt& n : ints)
        out.emplace_back(n / g * lead_sign);
    return out;
}

inline long long to_int64(const BigInt& n) {
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw std::overflow_error("rational component exceeds 64-bit range");
    return n.convert_to<long long>();
}

} // namespace detail

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

} // namespace capkin

#endif
