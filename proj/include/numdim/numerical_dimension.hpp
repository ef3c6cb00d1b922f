#pragma once

/*
 * Closed-form numerical dimensions driven by dynamical degrees.
 *
 * nu_vol of the leading eigenvector of a pseudoautomorphism phi with
 * lambda1 = lambda_1(phi), mu1 = lambda_1(phi^-1):
 *
 *     nu_vol = dim / (1 + log mu1 / log lambda1)
 *
 * The volume sequence behind it: with t_n = mu1^-n / (lambda1^n - mu1^-n),
 *
 *     vol(Delta+ + t_n A) = (lambda1^n - mu1^-n)^-dim vol(A) = C_n t_n^nu
 *
 * and C_n decreases to vol(A).
 *
 * For automorphisms the numerical dimension of Delta+ is
 *
 *     max { a : lambda_a = lambda_1^a and J~_a = a J~_1 }
 *
 * where J~_a + 1 is the largest Jordan block of phi* on N^a.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "numdim/decimal.hpp"
#include "numdim/qfield.hpp"

namespace numdim {

// A dynamical degree: exact in Q(sqrt2) or a decimal approximation.
using DegreeValue = std::variant<QuadRat, Decimal50>;

template <typename Float>
Float to_float(const DegreeValue& v) {
    if (const QuadRat* x = std::get_if<QuadRat>(&v))
        return to_float<Float>(*x);
    return Float(std::get<Decimal50>(v));
}

inline std::string to_string(const DegreeValue& v, int digits = 20) {
    if (const QuadRat* x = std::get_if<QuadRat>(&v))
        return to_string(*x);
    return fixed(std::get<Decimal50>(v), digits);
}

// Relative tolerance for equality of decimal degrees.
inline const Decimal50 kDegreeRelativeTolerance{"1e-9"};

// Search bound for exact power relations mu1^i = lambda1^j.
inline constexpr unsigned kMaxExactExponent = 64;

// nu_BDPP(D+) and kappa_nu(D+) follow from positive intersection products and
// numerical domination, which have no algorithm here. Recorded, not computed.
struct AssertedInvariants {
    int nu_bdpp = 1;
    int kappa_nu = 2;
};

namespace detail {

inline int degree_sign_minus_one(const DegreeValue& v) {
    if (const QuadRat* x = std::get_if<QuadRat>(&v))
        return (*x - QuadRat(1)).sign();
    const Decimal50& d = std::get<Decimal50>(v);
    return d > 1 ? 1 : (d == 1 ? 0 : -1);
}

} // namespace detail

// Exact log(mu1)/log(lambda1) when mu1^i = lambda1^j for some i, j <= bound.
inline std::optional<Rational> exact_log_ratio(const QuadRat& lambda1, const QuadRat& mu1,
                                               unsigned bound = kMaxExactExponent) {
    QuadRat mu_power = mu1;
    QuadRat lambda_power = lambda1;
    unsigned i = 1, j = 1;
    while (i <= bound && j <= bound) {
        auto order = mu_power <=> lambda_power;
        if (order == 0)
            return Rational(j, i);
        if (order < 0) {
            mu_power *= mu1;
            ++i;
        } else {
            lambda_power *= lambda1;
            ++j;
        }
    }
    return std::nullopt;
}

struct NuVol {
    std::optional<Rational> exact;
    Decimal50 value;
};

inline std::string to_string(const NuVol& nu, int digits = 20) {
    return nu.exact ? to_string(*nu.exact) : fixed(nu.value, digits);
}

inline NuVol nu_vol(int dim, const DegreeValue& lambda1, const DegreeValue& mu1) {
    if (dim < 1)
        throw Error(ErrorKind::domain_error, "dimension must be positive");
    if (detail::degree_sign_minus_one(lambda1) <= 0 || detail::degree_sign_minus_one(mu1) <= 0)
        throw Error(ErrorKind::domain_error, "nu_vol needs lambda1 > 1 and mu1 > 1");

    NuVol nu;
    const QuadRat* l = std::get_if<QuadRat>(&lambda1);
    const QuadRat* m = std::get_if<QuadRat>(&mu1);
    if (l && m) {
        if (std::optional<Rational> r = exact_log_ratio(*l, *m)) {
            nu.exact = Rational(dim) / (1 + *r);
            nu.value = to_float<Decimal50>(*nu.exact);
            return nu;
        }
    }
    Decimal50 ratio = log(to_float<Decimal50>(mu1)) / log(to_float<Decimal50>(lambda1));
    nu.value = Decimal50(dim) / (1 + ratio);
    return nu;
}

struct VolRow {
    int n = 0;
    QuadRat t_exact;
    QuadRat vol_exact;
    Decimal60 t;
    Decimal60 vol;
    Decimal60 c;
    bool sandwich_ok = false;
};

struct VolSequence {
    NuVol nu;
    std::vector<VolRow> rows;
    bool c_decreasing = false;
    bool sandwich_all = false;
};

namespace detail {

inline std::pair<unsigned, unsigned> small_fraction(const Rational& r) {
    const Integer& a = boost::multiprecision::numerator(r);
    const Integer& b = boost::multiprecision::denominator(r);
    return {a.convert_to<unsigned>(), b.convert_to<unsigned>()};
}

} // namespace detail

inline VolSequence vol_sequence(int n_max, int dim, const QuadRat& lambda1, const QuadRat& mu1, const QuadRat& vol_a) {
    if (n_max < 1)
        throw Error(ErrorKind::domain_error, "n_max must be at least 1");
    if (vol_a.sign() <= 0)
        throw Error(ErrorKind::domain_error, "vol(A) must be positive");
    VolSequence seq;
    seq.nu = nu_vol(dim, lambda1, mu1);
    Decimal60 nu60 = seq.nu.exact ? to_float<Decimal60>(*seq.nu.exact) : Decimal60(seq.nu.value);

    QuadRat lambda_n(1), mu_n(1);
    for (int n = 1; n <= n_max; ++n) {
        lambda_n *= lambda1;
        mu_n *= mu1;
        QuadRat gap = lambda_n - QuadRat(1) / mu_n;
        VolRow row;
        row.n = n;
        row.t_exact = (QuadRat(1) / mu_n) / gap;
        row.vol_exact = vol_a / pow(gap, static_cast<unsigned>(dim));
        row.t = to_float<Decimal60>(row.t_exact);
        row.vol = to_float<Decimal60>(row.vol_exact);
        row.c = row.vol / pow(row.t, nu60);
        seq.rows.push_back(std::move(row));
    }

    // With nu = a/b, compare b-th powers to stay exact.
    seq.sandwich_all = true;
    for (VolRow& row : seq.rows) {
        if (seq.nu.exact) {
            auto [a, b] = detail::small_fraction(*seq.nu.exact);
            QuadRat lhs = pow(vol_a, b) * pow(row.t_exact, a);
            QuadRat mid = pow(row.vol_exact, b);
            row.sandwich_ok = lhs < mid && mid < pow(QuadRat(2), b) * lhs;
        } else {
            Decimal60 base = to_float<Decimal60>(vol_a) * pow(row.t, nu60);
            row.sandwich_ok = base < row.vol && row.vol < 2 * base;
        }
        seq.sandwich_all = seq.sandwich_all && row.sandwich_ok;
    }
    seq.c_decreasing = true;
    for (std::size_t i = 1; i < seq.rows.size(); ++i) {
        const VolRow& prev = seq.rows[i - 1];
        const VolRow& cur = seq.rows[i];
        bool down;
        if (seq.nu.exact) {
            // C_prev > C_cur  <=>  vol_prev^b t_cur^a > vol_cur^b t_prev^a
            auto [a, b] = detail::small_fraction(*seq.nu.exact);
            down = pow(prev.vol_exact, b) * pow(cur.t_exact, a) > pow(cur.vol_exact, b) * pow(prev.t_exact, a);
        } else {
            down = prev.c > cur.c;
        }
        seq.c_decreasing = seq.c_decreasing && down;
    }
    return seq;
}

struct DegreeEntry {
    DegreeValue lambda;
    int jtilde = 0;
};

struct DegreeProfile {
    int dim = 0;
    std::vector<DegreeEntry> entries; // entries[a-1] holds (lambda_a, J~_a)
};

namespace detail {

inline DegreeValue degree_pow(const DegreeValue& v, unsigned e) {
    if (const QuadRat* x = std::get_if<QuadRat>(&v))
        return pow(*x, e);
    return DegreeValue(Decimal50(pow(std::get<Decimal50>(v), e)));
}

inline DegreeValue degree_mul(const DegreeValue& x, const DegreeValue& y) {
    const QuadRat* a = std::get_if<QuadRat>(&x);
    const QuadRat* b = std::get_if<QuadRat>(&y);
    if (a && b)
        return *a * *b;
    return DegreeValue(Decimal50(to_float<Decimal50>(x) * to_float<Decimal50>(y)));
}

// -1, 0, +1 for x <, ~=, > y; decimal values within the relative tolerance
// of y count as equal.
inline int degree_compare(const DegreeValue& x, const DegreeValue& y) {
    const QuadRat* a = std::get_if<QuadRat>(&x);
    const QuadRat* b = std::get_if<QuadRat>(&y);
    if (a && b)
        return (*a - *b).sign();
    Decimal50 dx = to_float<Decimal50>(x);
    Decimal50 dy = to_float<Decimal50>(y);
    if (abs(dx - dy) <= kDegreeRelativeTolerance * abs(dy))
        return 0;
    return dx < dy ? -1 : 1;
}

} // namespace detail

// Throws on malformed profiles; returns log-concavity warnings.
inline std::vector<std::string> validate_profile(const DegreeProfile& profile) {
    if (profile.dim < 1)
        throw Error(ErrorKind::domain_error, "profile dimension must be positive");
    if (profile.entries.size() != static_cast<std::size_t>(profile.dim))
        throw Error(ErrorKind::domain_error, "profile needs exactly dim entries, got " +
                                                 std::to_string(profile.entries.size()));
    if (detail::degree_sign_minus_one(profile.entries.front().lambda) <= 0)
        throw Error(ErrorKind::domain_error, "lambda_1 must exceed 1");
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const DegreeEntry& e = profile.entries[i];
        if (e.jtilde < 0)
            throw Error(ErrorKind::domain_error, "jtilde must be nonnegative at a = " + std::to_string(i + 1));
        if (detail::degree_compare(e.lambda, DegreeValue(QuadRat(0))) <= 0)
            throw Error(ErrorKind::domain_error, "dynamical degrees must be positive");
    }
    std::vector<std::string> warnings;
    // lambda_a^2 >= lambda_{a-1} lambda_{a+1}, lambda_0 = 1
    for (std::size_t a = 1; a < profile.entries.size(); ++a) {
        const DegreeValue& mid = profile.entries[a - 1].lambda;
        DegreeValue prev = a == 1 ? DegreeValue(QuadRat(1)) : profile.entries[a - 2].lambda;
        const DegreeValue& next = profile.entries[a].lambda;
        if (detail::degree_compare(detail::degree_pow(mid, 2), detail::degree_mul(prev, next)) < 0)
            warnings.push_back("log-concavity violated at a = " + std::to_string(a));
    }
    return warnings;
}

inline int kappa_from_degrees(const DegreeProfile& profile) {
    validate_profile(profile);
    const DegreeEntry& first = profile.entries.front();
    int best = 1;
    for (int a = 2; a <= profile.dim; ++a) {
        const DegreeEntry& e = profile.entries[a - 1];
        bool degree_match = detail::degree_compare(e.lambda, detail::degree_pow(first.lambda, a)) == 0;
        bool jordan_match = e.jtilde == a * first.jtilde;
        if (degree_match && jordan_match)
            best = a;
    }
    return best;
}

} // namespace numdim
