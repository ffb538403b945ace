#pragma once

// Exact big-integer evaluation of the class-counting functions over triplets
// (x, y, z): boundary edge count B, subgraph counts C1/C2 (classes containing
// v resp. v'), their signed combination C_diff, the pure-integer sign region,
// the crossover index i0, and the telescoping sum identities.
//
// Closed forms are products of factorials with indicator semantics: a
// factorial of a negative argument forces the whole term to zero.

#include "bunkbed/rational.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace bunkbed {

// Class index of an induced subgraph containing u: x bottom vertices, y top
// vertices, z columns present on both levels.
struct Triplet {
    int x = 0;
    int y = 0;
    int z = 0;

    bool valid_for(int n) const {
        return n >= 1 && x >= 1 && y >= 0 && z >= 0 && x <= n && y <= n &&
               z <= std::min(x, y) && x + y - z <= n;
    }

    friend bool operator==(const Triplet& a, const Triplet& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline void require_valid(int n, const Triplet& t) {
    if (!t.valid_for(n))
        throw std::invalid_argument("invalid triplet (" + std::to_string(t.x) + "," +
                                    std::to_string(t.y) + "," + std::to_string(t.z) +
                                    ") for n=" + std::to_string(n));
}

inline BigInt factorial(int k) {
    if (k < 0)
        throw std::invalid_argument("factorial: negative argument");
    static std::deque<BigInt> table{BigInt(1)};
    static std::shared_mutex guard;
    const auto idx = static_cast<std::size_t>(k);
    {
        std::shared_lock lock(guard);
        if (idx < table.size())
            return table[idx];
    }
    std::unique_lock lock(guard);
    while (table.size() <= idx)
        table.push_back(table.back() * BigInt(table.size()));
    return table[idx];
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n)
        return BigInt(0);
    return factorial(n) / (factorial(k) * factorial(n - k));
}

namespace detail {
// Numerator over a product of factorials, zero when any argument is negative.
inline BigInt factorial_quotient(const BigInt& numerator, std::initializer_list<int> denom_args) {
    BigInt den(1);
    for (int a : denom_args) {
        if (a < 0)
            return BigInt(0);
        den *= factorial(a);
    }
    const BigInt q = numerator / den;
    if (q * den != numerator)
        throw std::logic_error("factorial_quotient: non-integral count");
    return q;
}
} // namespace detail

// Number of edges between a class member and its complement in the K_n
// bunkbed: (x+y)n - x^2 + x - y^2 + y - 2z.
inline BigInt boundary_count(int n, const Triplet& t) {
    require_valid(n, t);
    const BigInt x(t.x), y(t.y), N(n), z(t.z);
    return (x + y) * N - x * x + x - y * y + y - 2 * z;
}

// |G^1_{x,y,z}|: class members containing both u and v. Zero when x < 2.
inline BigInt count_c1(int n, const Triplet& t) {
    require_valid(n, t);
    if (t.x < 2)
        return BigInt(0);
    const BigInt num = factorial(n - 2) * t.x * (t.x - 1);
    return detail::factorial_quotient(num, {t.x - t.z, t.z, n - t.x - t.y + t.z, t.y - t.z});
}

// |G^2_{x,y,z}|: class members containing u and v'.
inline BigInt count_c2(int n, const Triplet& t) {
    require_valid(n, t);
    const BigInt factor = BigInt(t.x) * t.y - t.z;
    if (factor == 0)
        return BigInt(0);
    if (n < 2)
        return BigInt(0);
    const BigInt num = factorial(n - 2) * factor;
    return detail::factorial_quotient(num, {t.x - t.z, t.z, n - t.x - t.y + t.z, t.y - t.z});
}

// |G_{x,y,z}| with only u required: binom(n-1,x-1) binom(x,z) binom(n-x,y-z).
inline BigInt count_total(int n, const Triplet& t) {
    require_valid(n, t);
    return binomial(n - 1, t.x - 1) * binomial(t.x, t.z) * binomial(n - t.x, t.y - t.z);
}

namespace detail {
inline void require_cdiff_args(int n, int k, int i, int eps, int z) {
    if (eps != 0 && eps != 1)
        throw std::invalid_argument("cdiff: eps must be 0 or 1");
    if (i < 0 || z < 1 || k - i < z)
        throw std::invalid_argument("cdiff: need y = k-i >= z >= 1");
    if (2 * k + eps - z > n)
        throw std::invalid_argument("cdiff: x+y-z exceeds n");
}
} // namespace detail

// Signed count over the mirrored pair (x,y,z)/(y,x,z) with (x,y)=(k+i+eps,k-i),
// single-counted on the diagonal x = y. May be negative.
inline BigInt count_cdiff(int n, int k, int i, int eps, int z) {
    detail::require_cdiff_args(n, k, i, eps, z);
    const Triplet t{k + i + eps, k - i, z};
    BigInt value = count_c1(n, t) - count_c2(n, t);
    if (t.x != t.y) {
        const Triplet mirror{t.y, t.x, t.z};
        value += count_c1(n, mirror) - count_c2(n, mirror);
    }
    return value;
}

// Sign of C_diff by pure integer arithmetic: sign((2i+eps)^2 - (2k+eps) + 2z).
inline int cdiff_sign(int n, int k, int i, int eps, int z) {
    detail::require_cdiff_args(n, k, i, eps, z);
    const long long spread = 2LL * i + eps;
    const long long s = spread * spread - (2LL * k + eps) + 2LL * z;
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

// Smallest i >= 0 with (2i+eps)^2 >= (2k+eps) - 2z; below it C_diff < 0, from
// it on C_diff >= 0. Never exceeds k - z.
inline int find_i0(int k, int eps, int z) {
    if (eps != 0 && eps != 1)
        throw std::invalid_argument("find_i0: eps must be 0 or 1");
    if (z < 1 || k < z)
        throw std::invalid_argument("find_i0: need k >= z >= 1");
    const long long target = (2LL * k + eps) - 2LL * z;
    for (int i = 0;; ++i) {
        const long long spread = 2LL * i + eps;
        if (spread * spread >= target)
            return i;
    }
}

namespace detail {
// Concrete n large enough that every triplet in either telescoping sum is
// valid: x + y - z = 2k + eps - z <= 2k + 1 <= n.
inline int identity_witness_n(int k) { return 2 * k + 2; }
} // namespace detail

// sum_{i=0}^{k-z} C_diff(k+i, k-i, z) == 0, checked both as the n-free
// reduced rational identity and as the full big-integer sum at a concrete n.
inline bool check_identity_even(int k, int z) {
    if (z < 1 || k < z)
        throw std::invalid_argument("check_identity_even: need k >= z >= 1");
    Rational lhs(0);
    for (int i = 1; i <= k - z; ++i)
        lhs += Rational(BigInt(4LL * i * i - 2LL * k + 2LL * z),
                        factorial(k + i - z) * factorial(k - i - z));
    const Rational rhs(BigInt(k - z), factorial(k - z) * factorial(k - z));
    if (lhs != rhs)
        return false;

    const int n = detail::identity_witness_n(k);
    BigInt full(0);
    for (int i = 0; i <= k - z; ++i)
        full += count_cdiff(n, k, i, 0, z);
    return full == 0;
}

// sum_{i=0}^{k-z} C_diff(k+i+1, k-i, z) == 0, same two routes.
inline bool check_identity_odd(int k, int z) {
    if (z < 1 || k < z)
        throw std::invalid_argument("check_identity_odd: need k >= z >= 1");
    Rational lhs(0);
    for (int i = 1; i <= k - z; ++i)
        lhs += Rational(BigInt(2LL * i * i + 2LL * i - k + z),
                        factorial(k + i + 1 - z) * factorial(k - i - z));
    const Rational rhs(BigInt(k - z), factorial(k + 1 - z) * factorial(k - z));
    if (lhs != rhs)
        return false;

    const int n = detail::identity_witness_n(k);
    BigInt full(0);
    for (int i = 0; i <= k - z; ++i)
        full += count_cdiff(n, k, i, 1, z);
    return full == 0;
}

} // namespace bunkbed
