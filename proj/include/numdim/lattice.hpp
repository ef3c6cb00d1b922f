#pragma once

/*
 * The rank-2 Picard lattice N^1(X) of the Calabi-Yau threefold X cut out of
 * P^3 x P^3 by divisors of bidegrees (1,1), (1,1), (2,2). Basis: H1, H2, the
 * hyperplane classes pulled back from the two factors.
 *
 * Intersection numbers: H1^3 = H2^3 = 2, H1^2 H2 = H1 H2^2 = 6.
 * c2(X) = H1^2 + 6 H1 H2 + H2^2, so c2 . (a1 H1 + a2 H2) = 44 (a1 + a2).
 *
 * Delta+ = (1 - sqrt2) H1 + (1 + sqrt2) H2 and Delta- = (1 + sqrt2) H1 + (1 - sqrt2) H2
 * span the pseudoeffective cone; H1, H2 span the nef cone.
 */

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "numdim/qfield.hpp"

namespace numdim {

struct DivisorClass {
    QuadRat h1;
    QuadRat h2;

    static DivisorClass H1() { return {QuadRat(1), QuadRat(0)}; }
    static DivisorClass H2() { return {QuadRat(0), QuadRat(1)}; }
    static DivisorClass delta_plus() {
        return {QuadRat(1) - QuadRat::sqrt2(), QuadRat(1) + QuadRat::sqrt2()};
    }
    static DivisorClass delta_minus() {
        return {QuadRat(1) + QuadRat::sqrt2(), QuadRat(1) - QuadRat::sqrt2()};
    }

    bool is_integral() const { return h1.is_integer() && h2.is_integer(); }

    DivisorClass& operator+=(const DivisorClass& o) {
        h1 += o.h1;
        h2 += o.h2;
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o) {
        h1 -= o.h1;
        h2 -= o.h2;
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const QuadRat& t, const DivisorClass& d) {
        return {t * d.h1, t * d.h2};
    }
    DivisorClass operator-() const { return {-h1, -h2}; }
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

inline std::string to_string(const DivisorClass& d) {
    return to_string(d.h1) + "," + to_string(d.h2);
}

// Coordinates with respect to (Delta+, Delta-).
struct DeltaCoords {
    QuadRat plus;
    QuadRat minus;
    friend bool operator==(const DeltaCoords&, const DeltaCoords&) = default;
};

inline QuadRat triple_product(const DivisorClass& d1, const DivisorClass& d2, const DivisorClass& d3) {
    // Symmetric trilinear form: 2 on H_i^3, 6 on every mixed monomial.
    const std::array<const QuadRat*, 2> a{&d1.h1, &d1.h2};
    const std::array<const QuadRat*, 2> b{&d2.h1, &d2.h2};
    const std::array<const QuadRat*, 2> c{&d3.h1, &d3.h2};
    QuadRat total;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                int coefficient = (i == j && j == k) ? 2 : 6;
                total += QuadRat(coefficient) * *a[i] * *b[j] * *c[k];
            }
    return total;
}

inline QuadRat cube(const DivisorClass& d) { return triple_product(d, d, d); }

inline QuadRat c2_pair(const DivisorClass& d) { return QuadRat(44) * (d.h1 + d.h2); }

// Delta+^2 . Delta-
inline QuadRat beta_plus() {
    return triple_product(DivisorClass::delta_plus(), DivisorClass::delta_plus(),
                          DivisorClass::delta_minus());
}

// Delta+ . Delta-^2
inline QuadRat beta_minus() {
    return triple_product(DivisorClass::delta_plus(), DivisorClass::delta_minus(),
                          DivisorClass::delta_minus());
}

// (Delta+ + Delta-)^3, the volume of the ample class Delta+ + Delta-.
inline QuadRat delta_sum_cube() {
    return cube(DivisorClass::delta_plus() + DivisorClass::delta_minus());
}

enum class Integrality { any, required };

// chi(X, D) = D^3/6 + c2.D/12.
inline QuadRat euler_char(const DivisorClass& d, Integrality integrality = Integrality::any) {
    bool integral = d.is_integral();
    if (integrality == Integrality::required && !integral)
        throw Error(ErrorKind::non_integral_class, "euler_char requires an integral class, got " + to_string(d));
    QuadRat chi = cube(d) / QuadRat(6) + c2_pair(d) / QuadRat(12);
    if (integral && !chi.is_integer())
        throw Error(ErrorKind::integrality_violation,
                    "chi(" + to_string(d) + ") = " + to_string(chi) + " is not an integer");
    return chi;
}

inline Integer euler_char_integer(const DivisorClass& d) {
    return euler_char(d, Integrality::required).to_integer();
}

inline DeltaCoords to_delta(const DivisorClass& d) {
    // h1 + h2 = 2(x + y), h2 - h1 = 2 sqrt2 (x - y).
    QuadRat sum = (d.h1 + d.h2) / QuadRat(4);
    QuadRat diff = (d.h2 - d.h1) * QuadRat::sqrt2() / QuadRat(8);
    return {sum + diff, sum - diff};
}

inline DivisorClass from_delta(const DeltaCoords& c) {
    return c.plus * DivisorClass::delta_plus() + c.minus * DivisorClass::delta_minus();
}

// Product of the Delta-coordinates; invariant under phi*.
inline QuadRat delta_product(const DivisorClass& d) {
    DeltaCoords c = to_delta(d);
    return c.plus * c.minus;
}

inline bool is_big(const DeltaCoords& c) { return c.plus.sign() > 0 && c.minus.sign() > 0; }
inline bool is_big(const DivisorClass& d) { return is_big(to_delta(d)); }

// Ratio of the Delta-coordinates; phi* multiplies it by lambda^2.
inline QuadRat delta_ratio(const DivisorClass& d) {
    DeltaCoords c = to_delta(d);
    if (!is_big(c))
        throw Error(ErrorKind::not_big, "delta_ratio needs a big class, got " + to_string(d));
    return c.plus / c.minus;
}

inline DivisorClass floor_divisor(const DivisorClass& d) {
    return {QuadRat(floor(d.h1)), QuadRat(floor(d.h2))};
}

// Big classes with l2_lo <= delta_ratio < l2_hi.
struct ConeSpec {
    QuadRat l2_lo;
    QuadRat l2_hi;
};

// The cone spanned by tau1* H2 = 6 H1 - H2 (closed edge) and H2 (open edge).
inline ConeSpec cone_c() {
    return {QuadRat(99) - QuadRat(70) * QuadRat::sqrt2(), QuadRat(3) + QuadRat(2) * QuadRat::sqrt2()};
}

struct ConeFlags {
    bool nef = false;
    bool big = false;
    bool pseudoeffective = false;
    bool in_cone_c = false;
    bool on_cone_c_boundary = false;
};

inline ConeFlags classify(const DivisorClass& d, const ConeSpec& cone = cone_c()) {
    ConeFlags flags;
    DeltaCoords c = to_delta(d);
    flags.nef = d.h1.sign() >= 0 && d.h2.sign() >= 0;
    flags.pseudoeffective = c.plus.sign() >= 0 && c.minus.sign() >= 0;
    flags.big = is_big(c);
    if (flags.big) {
        QuadRat ratio = c.plus / c.minus;
        flags.in_cone_c = cone.l2_lo <= ratio && ratio < cone.l2_hi;
        flags.on_cone_c_boundary = ratio == cone.l2_lo || ratio == cone.l2_hi;
    }
    return flags;
}

// Divisor literal: "a1,a2" in the H-basis (each a Q(sqrt2) literal) or one of
// the names H1, H2, Dplus, Dminus.
inline DivisorClass parse_divisor(std::string_view text) {
    if (text == "H1")
        return DivisorClass::H1();
    if (text == "H2")
        return DivisorClass::H2();
    if (text == "Dplus")
        return DivisorClass::delta_plus();
    if (text == "Dminus")
        return DivisorClass::delta_minus();
    std::size_t comma = text.find(',');
    if (comma == std::string_view::npos)
        throw ParseError(text.size(), "expected 'a1,a2' or a named class in '" + std::string(text) + "'");
    if (text.find(',', comma + 1) != std::string_view::npos)
        throw ParseError(text.find(',', comma + 1), "unexpected ',' in '" + std::string(text) + "'");
    return {parse_quadrat(text.substr(0, comma), 0), parse_quadrat(text.substr(comma + 1), comma + 1)};
}

} // namespace numdim
