#pragma once

/*
 * Pullbacks of the covering involutions tau1, tau2 and of phi = tau1 o tau2
 * acting on N^1(X), and the normalization of a big class into the cone C.
 *
 * Matrices act on (h1, h2) column vectors:
 *
 *   tau1* = | 1  6 |   tau2* = | -1 0 |   phi* = tau2* tau1* = | -1 -6 |
 *           | 0 -1 |           |  6 1 |                        |  6 35 |
 *
 * phi* Delta+ = lambda Delta+ and phi* Delta- = lambda^-1 Delta- with
 * lambda = 17 + 12 sqrt2. In Delta-coordinates phi* keeps the product and
 * multiplies the ratio by lambda^2, and C's two edge ratios differ by exactly
 * lambda^2, so every big class has a unique phi-power in the half-open cone.
 */

#include <cstdint>
#include <string>

#include "numdim/lattice.hpp"

namespace numdim {

inline constexpr std::int64_t kDefaultIterationCap = 1'000'000;

class PullbackMap {
public:
    PullbackMap() : PullbackMap(1, 0, 0, 1) {}
    PullbackMap(Integer m11, Integer m12, Integer m21, Integer m22)
        : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22)) {}

    static PullbackMap identity() { return {}; }

    const Integer& m11() const noexcept { return m11_; }
    const Integer& m12() const noexcept { return m12_; }
    const Integer& m21() const noexcept { return m21_; }
    const Integer& m22() const noexcept { return m22_; }

    Integer det() const { return m11_ * m22_ - m12_ * m21_; }

    DivisorClass apply(const DivisorClass& d) const {
        QuadRat a(m11_), b(m12_), c(m21_), e(m22_);
        return {a * d.h1 + b * d.h2, c * d.h1 + e * d.h2};
    }

    // Matrix product; (M * N) applies N first.
    friend PullbackMap operator*(const PullbackMap& m, const PullbackMap& n) {
        return {m.m11_ * n.m11_ + m.m12_ * n.m21_, m.m11_ * n.m12_ + m.m12_ * n.m22_,
                m.m21_ * n.m11_ + m.m22_ * n.m21_, m.m21_ * n.m12_ + m.m22_ * n.m22_};
    }

    PullbackMap inverse() const {
        Integer d = det();
        if (d != 1 && d != -1)
            throw Error(ErrorKind::non_invertible, "determinant " + d.str() + " is not a unit");
        return {m22_ * d, -m12_ * d, -m21_ * d, m11_ * d};
    }

    friend bool operator==(const PullbackMap&, const PullbackMap&) = default;

private:
    Integer m11_, m12_, m21_, m22_;
};

inline DivisorClass apply(const PullbackMap& m, const DivisorClass& d) { return m.apply(d); }
inline PullbackMap compose(const PullbackMap& m, const PullbackMap& n) { return m * n; }

inline PullbackMap power(const PullbackMap& m, std::int64_t k) {
    PullbackMap base = k < 0 ? m.inverse() : m;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    PullbackMap result;
    while (e != 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1;
        if (e != 0)
            base = base * base;
    }
    return result;
}

inline std::string to_string(const PullbackMap& m) {
    return "[[" + m.m11().str() + "," + m.m12().str() + "],[" + m.m21().str() + "," + m.m22().str() + "]]";
}

struct Geometry {
    PullbackMap tau1;
    PullbackMap tau2;
    PullbackMap phi;
    PullbackMap phi_inv;
    QuadRat lambda;
    DivisorClass delta_plus;
    DivisorClass delta_minus;
    ConeSpec cone;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok)
        throw Error(ErrorKind::integrality_violation, std::string("built-in geometry check failed: ") + what);
}

inline Geometry make_geometry() {
    Geometry g;
    g.tau1 = PullbackMap(1, 6, 0, -1);
    g.tau2 = PullbackMap(-1, 0, 6, 1);
    g.phi = PullbackMap(-1, -6, 6, 35);
    g.phi_inv = PullbackMap(35, 6, -6, -1);
    g.lambda = QuadRat(17) + QuadRat(12) * QuadRat::sqrt2();
    g.delta_plus = DivisorClass::delta_plus();
    g.delta_minus = DivisorClass::delta_minus();
    g.cone = cone_c();

    require(g.tau2 * g.tau1 == g.phi, "phi* = tau2* tau1*");
    require(g.phi * g.phi_inv == PullbackMap::identity(), "phi* phi_inv* = 1");
    require(g.tau1 * g.tau1 == PullbackMap::identity(), "tau1*^2 = 1");
    require(g.tau2 * g.tau2 == PullbackMap::identity(), "tau2*^2 = 1");
    require(g.phi.apply(g.delta_plus) == g.lambda * g.delta_plus, "phi* Delta+ = lambda Delta+");
    require(g.phi.apply(g.delta_minus) == (QuadRat(1) / g.lambda) * g.delta_minus,
            "phi* Delta- = lambda^-1 Delta-");
    require(g.cone.l2_hi / g.cone.l2_lo == g.lambda * g.lambda, "cone edge ratio = lambda^2");
    return g;
}

} // namespace detail

// Constants of the threefold, verified once on first use.
inline const Geometry& builtin_geometry() {
    static const Geometry g = detail::make_geometry();
    return g;
}

struct Normalization {
    std::int64_t k = 0;
    DivisorClass landed;
};

// Finds the unique k with (phi*)^k D in the half-open cone C by exact
// comparisons: step with phi_inv while the ratio is at or above the open
// edge, with phi while it is below the closed edge.
inline Normalization normalize_to_c(const DivisorClass& d, std::int64_t iteration_cap = kDefaultIterationCap) {
    const Geometry& g = builtin_geometry();
    DeltaCoords c = to_delta(d);
    if (!is_big(c))
        throw Error(ErrorKind::not_big, "cannot normalize non-big class " + to_string(d));

    QuadRat lambda_inv = QuadRat(1) / g.lambda;
    // Track Delta-coordinates alongside: phi* scales them by (lambda, 1/lambda).
    Normalization result{0, d};
    auto over_cap = [&] {
        if (result.k > iteration_cap || -result.k > iteration_cap)
            throw Error(ErrorKind::iteration_cap,
                        "normalization exceeded " + std::to_string(iteration_cap) + " steps for " + to_string(d));
    };
    while (c.plus >= g.cone.l2_hi * c.minus) {
        result.landed = g.phi_inv.apply(result.landed);
        c = {c.plus * lambda_inv, c.minus * g.lambda};
        --result.k;
        over_cap();
    }
    while (c.plus < g.cone.l2_lo * c.minus) {
        result.landed = g.phi.apply(result.landed);
        c = {c.plus * g.lambda, c.minus * lambda_inv};
        ++result.k;
        over_cap();
    }
    return result;
}

} // namespace numdim
