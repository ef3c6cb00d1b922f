#pragma once

// Independent reference computations. None of these call the code path they
// are used to check.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "numdim/decimal.hpp"
#include "numdim/lattice.hpp"

namespace numdim::testing {

// floor(sqrt(n)) for n < 2^62 by a double estimate corrected in integers.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// floor(m sqrt2) for |m| <= 10^9.
inline std::int64_t floor_m_sqrt2(std::int64_t m) {
    auto mm = static_cast<std::uint64_t>(m < 0 ? -m : m);
    auto s = static_cast<std::int64_t>(isqrt_u64(2 * mm * mm));
    if (m >= 0)
        return s;
    return m == 0 ? 0 : -s - 1;
}

// (a H1 + b H2)^3 from the expanded polynomial.
inline QuadRat cube_polynomial(const QuadRat& a, const QuadRat& b) {
    return QuadRat(2) * a * a * a + QuadRat(18) * a * a * b + QuadRat(18) * a * b * b + QuadRat(2) * b * b * b;
}

inline QuadRat cube_polynomial(const DivisorClass& d) { return cube_polynomial(d.h1, d.h2); }

// D1 D2 D3 by polarization of the cube polynomial.
inline QuadRat triple_by_polarization(const DivisorClass& x, const DivisorClass& y, const DivisorClass& z) {
    QuadRat s = cube_polynomial(x + y + z) - cube_polynomial(x + y) - cube_polynomial(x + z) -
                cube_polynomial(y + z) + cube_polynomial(x) + cube_polynomial(y) + cube_polynomial(z);
    return s / QuadRat(6);
}

// chi(a H1 + b H2) = (a^3 + 9a^2 b + 9 a b^2 + b^3 + 11(a + b)) / 3.
inline Integer chi_formula(const Integer& a, const Integer& b) {
    Integer n = a * a * a + 9 * a * a * b + 9 * a * b * b + b * b * b + 11 * (a + b);
    if (n % 3 != 0)
        throw std::logic_error("chi formula not integral");
    return n / 3;
}

struct IntMatrix {
    Integer a, b, c, d;
    IntMatrix operator*(const IntMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// h0 of a big integral class by exhaustive search over phi^k and tau1 phi^k,
// |k| <= max_k, for an image with both H-coordinates >= 0. Returns nullopt
// if no image is found or different images disagree.
inline std::optional<Integer> brute_force_h0(const Integer& h1, const Integer& h2, int max_k = 60) {
    const IntMatrix tau1{1, 6, 0, -1};
    const IntMatrix phi{-1, -6, 6, 35};
    const IntMatrix phi_inv{35, 6, -6, -1};
    std::vector<IntMatrix> maps;
    IntMatrix up{1, 0, 0, 1}, down{1, 0, 0, 1};
    for (int k = 0; k <= max_k; ++k) {
        maps.push_back(up);
        maps.push_back(down);
        up = phi * up;
        down = phi_inv * down;
    }
    std::set<Integer> values;
    for (const IntMatrix& m : maps)
        for (const IntMatrix& g : {m, tau1 * m}) {
            Integer x = g.a * h1 + g.b * h2;
            Integer y = g.c * h1 + g.d * h2;
            if (x >= 0 && y >= 0 && (x != 0 || y != 0))
                values.insert(chi_formula(x, y));
        }
    if (values.size() != 1)
        return std::nullopt;
    return *values.begin();
}

// Normalization exponent from logarithms at 200 digits:
// k = -floor((log L2(D) - log(99 - 70 sqrt2)) / (2 log lambda)).
inline long long normalization_exponent_by_logs(const DivisorClass& d) {
    using F = Decimal200;
    F root2 = boost::multiprecision::sqrt(F(2));
    F h1 = to_float<F>(d.h1);
    F h2 = to_float<F>(d.h2);
    F plus = (h1 + h2) / 4 + (h2 - h1) * root2 / 8;
    F minus = (h1 + h2) / 4 - (h2 - h1) * root2 / 8;
    F lambda = 17 + 12 * root2;
    F lo = 99 - 70 * root2;
    F t = (log(plus / minus) - log(lo)) / (2 * log(lambda));
    return -boost::multiprecision::floor(t).convert_to<long long>();
}

} // namespace numdim::testing
