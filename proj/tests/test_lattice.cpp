#include <gtest/gtest.h>

#include "numdim/lattice.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace numdim;
using numdim::testing::Gen;

namespace {

const DivisorClass H1 = DivisorClass::H1();
const DivisorClass H2 = DivisorClass::H2();
const DivisorClass Dp = DivisorClass::delta_plus();
const DivisorClass Dm = DivisorClass::delta_minus();
const QuadRat r2 = QuadRat::sqrt2();

DivisorClass cls(long long a, long long b) { return {QuadRat(a), QuadRat(b)}; }

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no numdim::Error thrown";
    return ErrorKind::domain_error;
}

} // namespace

TEST(Intersection, Examples) {
    EXPECT_EQ(triple_product(H1, H1, H1), QuadRat(2));
    EXPECT_EQ(triple_product(H2, H2, H2), QuadRat(2));
    EXPECT_EQ(triple_product(H1, H1, H2), QuadRat(6));
    EXPECT_EQ(triple_product(H2, H1, H2), QuadRat(6));
    EXPECT_EQ(cube(H1 + H2), QuadRat(40));
    EXPECT_EQ(triple_product(Dp, Dp, Dp), QuadRat(-8));
    EXPECT_EQ(triple_product(Dp, Dp, Dm), QuadRat(56));
    EXPECT_EQ(beta_plus(), QuadRat(56));
    EXPECT_EQ(beta_minus(), QuadRat(56));
    EXPECT_EQ(delta_sum_cube(), QuadRat(320));
    EXPECT_EQ(cube(Dp + Dm), QuadRat(320));
}

TEST(Intersection, SymmetricAndTrilinear) {
    Gen gen(17);
    for (int i = 0; i < 300; ++i) {
        DivisorClass x = gen.divisor(), y = gen.divisor(), z = gen.divisor(), w = gen.divisor();
        QuadRat t = gen.quadrat();
        QuadRat v = triple_product(x, y, z);
        EXPECT_EQ(v, triple_product(y, x, z));
        EXPECT_EQ(v, triple_product(z, y, x));
        EXPECT_EQ(v, triple_product(x, z, y));
        EXPECT_EQ(triple_product(x + w, y, z), v + triple_product(w, y, z));
        EXPECT_EQ(triple_product(t * x, y, z), t * v);
        EXPECT_EQ(v, numdim::testing::triple_by_polarization(x, y, z));
        EXPECT_EQ(cube(x), numdim::testing::cube_polynomial(x));
    }
}

TEST(C2Pair, Examples) {
    EXPECT_EQ(c2_pair(H1), QuadRat(44));
    EXPECT_EQ(c2_pair(cls(0, 0)), QuadRat(0));
    EXPECT_EQ(c2_pair(H1 + H2), QuadRat(88));
    EXPECT_EQ(c2_pair(H2), QuadRat(44));
}

TEST(EulerChar, Examples) {
    EXPECT_EQ(euler_char(H1), QuadRat(4));
    EXPECT_EQ(euler_char(H1 + H2), QuadRat(14));
    EXPECT_EQ(euler_char(cls(0, 3)), QuadRat(20));
    EXPECT_EQ(euler_char(cls(4, 0)), QuadRat(36));
    EXPECT_EQ(euler_char_integer(cls(0, 3)), 20);
}

TEST(EulerChar, FormulaOnIrrationalClasses) {
    Gen gen(8);
    for (int i = 0; i < 200; ++i) {
        DivisorClass d = gen.divisor();
        EXPECT_EQ(euler_char(d), cube(d) / QuadRat(6) + c2_pair(d) / QuadRat(12));
    }
}

TEST(EulerChar, RequiredIntegrality) {
    EXPECT_EQ(kind_of([] { return euler_char(Dp, Integrality::required); }), ErrorKind::non_integral_class);
    EXPECT_EQ(kind_of([] { return euler_char({QuadRat(Rational(1, 2)), QuadRat(0)}, Integrality::required); }),
              ErrorKind::non_integral_class);
    EXPECT_EQ(euler_char(cls(2, 5), Integrality::required), QuadRat(numdim::testing::chi_formula(2, 5)));
}

TEST(EulerChar, IntegralOnRandomIntegralClasses) {
    Gen gen(314);
    for (int i = 0; i < 10000; ++i) {
        DivisorClass d = gen.integral_divisor(10000);
        QuadRat chi = euler_char(d, Integrality::required);
        ASSERT_TRUE(chi.is_integer()) << to_string(d);
        ASSERT_EQ(chi.to_integer(), numdim::testing::chi_formula(d.h1.to_integer(), d.h2.to_integer()));
    }
}

TEST(DeltaCoords, Examples) {
    DeltaCoords h2 = to_delta(H2);
    EXPECT_EQ(h2.plus, (QuadRat(2) + r2) / QuadRat(8));
    EXPECT_EQ(h2.minus, (QuadRat(2) - r2) / QuadRat(8));
    DeltaCoords dp = to_delta(Dp);
    EXPECT_EQ(dp.plus, QuadRat(1));
    EXPECT_EQ(dp.minus, QuadRat(0));
    DeltaCoords s = to_delta(H1 + H2);
    EXPECT_EQ(s.plus, QuadRat(Rational(1, 2)));
    EXPECT_EQ(s.minus, QuadRat(Rational(1, 2)));
}

TEST(DeltaCoords, RoundTrip) {
    Gen gen(21);
    for (int i = 0; i < 2000; ++i) {
        DivisorClass d = gen.divisor();
        DeltaCoords c = to_delta(d);
        EXPECT_EQ(from_delta(c), d);
        EXPECT_EQ(c.plus * Dp + c.minus * Dm, d);
    }
}

TEST(DeltaCoords, Ratios) {
    EXPECT_EQ(delta_ratio(H2), QuadRat(3) + QuadRat(2) * r2);
    EXPECT_EQ(delta_ratio(cls(6, -1)), QuadRat(99) - QuadRat(70) * r2);
    EXPECT_EQ(delta_product(Dp + Dm), QuadRat(1));
    EXPECT_EQ(delta_ratio(Dp + Dm), QuadRat(1));
    EXPECT_EQ(kind_of([] { return delta_ratio(Dp); }), ErrorKind::not_big);
    EXPECT_EQ(kind_of([] { return delta_ratio(cls(-1, -1)); }), ErrorKind::not_big);
}

TEST(FloorDivisor, Examples) {
    EXPECT_EQ(floor_divisor(Dp), cls(-1, 2));
    EXPECT_EQ(floor_divisor(QuadRat(32) * Dp), cls(-14, 77));
    EXPECT_EQ(floor_divisor(cls(3, 5)), cls(3, 5));
}

TEST(FloorDivisor, MultiplesOfDeltaPlusAgainstIntegerOracle) {
    for (long long m = -1000000; m <= 1000000; m += 997) {
        DivisorClass f = floor_divisor(QuadRat(m) * Dp);
        ASSERT_EQ(f.h1.to_integer(), Integer(m) + Integer(numdim::testing::floor_m_sqrt2(-m))) << "m=" << m;
        ASSERT_EQ(f.h2.to_integer(), Integer(m) + Integer(numdim::testing::floor_m_sqrt2(m)));
    }
}

TEST(FloorOracle, EveryIntegerUpToOneMillion) {
    for (long long m = -1000000; m <= 1000000; ++m) {
        Integer f = floor(QuadRat(Rational(0), Rational(m)));
        if (f != numdim::testing::floor_m_sqrt2(m))
            FAIL() << "m=" << m;
    }
}

TEST(Classify, Examples) {
    ConeFlags h2 = classify(H2);
    EXPECT_TRUE(h2.nef);
    EXPECT_TRUE(h2.big);
    EXPECT_TRUE(h2.pseudoeffective);
    EXPECT_FALSE(h2.in_cone_c);
    EXPECT_TRUE(h2.on_cone_c_boundary);

    ConeFlags dp = classify(Dp);
    EXPECT_TRUE(dp.pseudoeffective);
    EXPECT_FALSE(dp.big);
    EXPECT_FALSE(dp.nef);
    EXPECT_FALSE(dp.in_cone_c);

    ConeFlags edge = classify(cls(6, -1));
    EXPECT_TRUE(edge.big);
    EXPECT_FALSE(edge.nef);
    EXPECT_TRUE(edge.in_cone_c);
    EXPECT_TRUE(edge.on_cone_c_boundary);

    ConeFlags mid = classify(H1 + H2);
    EXPECT_TRUE(mid.nef && mid.big && mid.in_cone_c);
    EXPECT_FALSE(mid.on_cone_c_boundary);

    ConeFlags neg = classify(cls(-1, 0));
    EXPECT_FALSE(neg.pseudoeffective || neg.big || neg.nef);
}

TEST(Classify, ConeEndpointsDifferByLambdaSquared) {
    ConeSpec c = cone_c();
    QuadRat lambda = QuadRat(17) + QuadRat(12) * r2;
    EXPECT_EQ(c.l2_hi / c.l2_lo, lambda * lambda);
    EXPECT_GT(c.l2_lo.sign(), 0);
    EXPECT_LT(c.l2_lo, c.l2_hi);
}

TEST(ParseDivisor, NamesAndLiterals) {
    EXPECT_EQ(parse_divisor("H1"), H1);
    EXPECT_EQ(parse_divisor("H2"), H2);
    EXPECT_EQ(parse_divisor("Dplus"), Dp);
    EXPECT_EQ(parse_divisor("Dminus"), Dm);
    EXPECT_EQ(parse_divisor("1,1"), H1 + H2);
    EXPECT_EQ(parse_divisor("1-sqrt2,1+sqrt2"), Dp);
    EXPECT_EQ(parse_divisor("-13,78"), cls(-13, 78));
    Gen gen(2);
    for (int i = 0; i < 300; ++i) {
        DivisorClass d = gen.divisor();
        EXPECT_EQ(parse_divisor(to_string(d)), d);
    }
}

TEST(ParseDivisor, ErrorPositions) {
    auto position = [](std::string_view text) -> std::size_t {
        try {
            parse_divisor(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string_view::npos;
    };
    EXPECT_NE(position("H3"), std::string_view::npos);
    EXPECT_EQ(position("1,x"), 2u);
    EXPECT_EQ(position("1/0,2"), 2u);
}
