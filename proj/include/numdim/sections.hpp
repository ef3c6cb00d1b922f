#pragma once

/*
 * h^0 of big integral classes on X.
 *
 * A big class D is moved into the cone C by a power of phi*; there either the
 * landed class or its tau1*-image is big and nef. Pullback by a
 * pseudoautomorphism preserves h^0, and on big and nef classes
 * h^0 = chi = D^3/6 + c2.D/12. So h^0(D) is exact for every big integral D.
 *
 * Scans evaluate h^0(floor(m D+) + A) row by row and check the growth window
 * c_lo m^{3/2} < h^0 < c_hi m^{3/2} as h0^2 against c^2 m^3 in integers.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "numdim/decimal.hpp"
#include "numdim/dynamics.hpp"
#include "numdim/lattice.hpp"

namespace numdim {

struct EngineOptions {
    std::int64_t iteration_cap = kDefaultIterationCap;
};

struct GrowthBounds {
    Integer lower{24};
    Integer upper{54};
};

struct H0Evaluation {
    Integer h0;
    std::int64_t k = 0;
    DivisorClass landed;
    bool used_tau1 = false;
};

struct GrowthRecord {
    Integer m;
    DivisorClass ample;
    DivisorClass rounded;
    std::int64_t k_m = 0;
    DivisorClass landed;
    bool used_tau1 = false;
    Integer h0;
    bool lower_ok = false;
    bool upper_ok = false;
};

inline H0Evaluation evaluate_h0(const DivisorClass& d, const EngineOptions& options = {}) {
    if (!d.is_integral())
        throw Error(ErrorKind::non_integral_class, "h0 needs an integral class, got " + to_string(d));
    if (!is_big(d))
        throw Error(ErrorKind::not_big, "h0 needs a big class, got " + to_string(d));

    H0Evaluation out;
    Normalization n = normalize_to_c(d, options.iteration_cap);
    out.k = n.k;
    out.landed = n.landed;
    ConeFlags flags = classify(n.landed);
    if (flags.nef && flags.big) {
        out.h0 = euler_char_integer(n.landed);
        return out;
    }
    DivisorClass flipped = builtin_geometry().tau1.apply(n.landed);
    ConeFlags flipped_flags = classify(flipped);
    if (!(flipped_flags.nef && flipped_flags.big))
        throw Error(ErrorKind::nefification_failure,
                    "neither " + to_string(n.landed) + " nor its tau1* image is big and nef");
    out.used_tau1 = true;
    out.h0 = euler_char_integer(flipped);
    return out;
}

inline Integer h0_big(const DivisorClass& d, const EngineOptions& options = {}) {
    return evaluate_h0(d, options).h0;
}

// Exact check of c_lo m^{3/2} < h0 and h0 < c_hi m^{3/2} (h0, c, m >= 0).
inline bool exceeds_growth(const Integer& h0, const Integer& m, const Integer& c) {
    return h0 * h0 > c * c * m * m * m;
}

inline bool below_growth(const Integer& h0, const Integer& m, const Integer& c) {
    return h0 * h0 < c * c * m * m * m;
}

inline DivisorClass rounded_class(const Integer& m, const DivisorClass& ample) {
    return floor_divisor(QuadRat(m) * DivisorClass::delta_plus()) + ample;
}

inline void validate_ample(const DivisorClass& ample) {
    if (!ample.is_integral() || ample.h1 < QuadRat(1) || ample.h2 < QuadRat(1))
        throw Error(ErrorKind::invalid_ample,
                    "ample class needs integral coordinates >= 1, got " + to_string(ample));
}

inline GrowthRecord h0_perturbed(const Integer& m, const DivisorClass& ample, const GrowthBounds& bounds = {},
                                 const EngineOptions& options = {}) {
    if (m < 0)
        throw Error(ErrorKind::domain_error, "m must be nonnegative, got " + m.str());
    validate_ample(ample);
    GrowthRecord r;
    r.m = m;
    r.ample = ample;
    r.rounded = rounded_class(m, ample);
    if (!is_big(r.rounded))
        throw Error(ErrorKind::not_big, "floor(m D+) + A = " + to_string(r.rounded) + " is not big at m = " + m.str());
    H0Evaluation e = evaluate_h0(r.rounded, options);
    r.k_m = e.k;
    r.landed = e.landed;
    r.used_tau1 = e.used_tau1;
    r.h0 = e.h0;
    r.lower_ok = exceeds_growth(r.h0, m, bounds.lower);
    r.upper_ok = below_growth(r.h0, m, bounds.upper);
    return r;
}

struct ScanFailure {
    Integer m;
    ErrorKind kind;
    std::string message;
};

struct ScanResult {
    std::vector<GrowthRecord> records;
    std::vector<ScanFailure> failures;

    bool pass() const {
        return failures.empty() &&
               std::all_of(records.begin(), records.end(), [](const GrowthRecord& r) { return r.lower_ok && r.upper_ok; });
    }
};

// m = 2^k for k in [lo, hi].
inline std::vector<Integer> powers_of_two(unsigned lo, unsigned hi) {
    std::vector<Integer> ms;
    for (unsigned k = lo; k <= hi; ++k)
        ms.push_back(Integer(1) << k);
    return ms;
}

// Rows are independent; with jobs > 1 they are computed on worker threads
// and still reported in input order.
inline ScanResult scan(const std::vector<Integer>& ms, const DivisorClass& ample, const GrowthBounds& bounds = {},
                       const EngineOptions& options = {}, unsigned jobs = 1) {
    if (ms.empty())
        throw Error(ErrorKind::domain_error, "scan needs at least one m");
    if (!std::is_sorted(ms.begin(), ms.end()))
        throw Error(ErrorKind::domain_error, "scan m values must be sorted ascending");
    validate_ample(ample);

    std::vector<std::optional<GrowthRecord>> rows(ms.size());
    std::vector<std::optional<ScanFailure>> errors(ms.size());
    auto run_row = [&](std::size_t i) {
        try {
            rows[i] = h0_perturbed(ms[i], ample, bounds, options);
        } catch (const Error& e) {
            errors[i] = ScanFailure{ms[i], e.kind(), e.what()};
        }
    };

    builtin_geometry();
    if (jobs <= 1) {
        for (std::size_t i = 0; i < ms.size(); ++i)
            run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < std::min<std::size_t>(jobs, ms.size()); ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < ms.size(); i = next++)
                    run_row(i);
            });
    }

    ScanResult result;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (rows[i])
            result.records.push_back(std::move(*rows[i]));
        else
            result.failures.push_back(std::move(*errors[i]));
    }
    return result;
}

struct ExponentFit {
    Decimal50 slope;
    Decimal50 intercept;
    Decimal50 max_residual;
};

// Least-squares fit of log h0 against log m. For floor(m D+) + A the slope
// estimates the real numerical dimension 3/2.
inline ExponentFit estimate_exponent(const std::vector<GrowthRecord>& records) {
    if (records.size() < 3)
        throw Error(ErrorKind::insufficient_data, "exponent fit needs at least 3 records");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].m <= 0 || records[i].h0 <= 0)
            throw Error(ErrorKind::insufficient_data, "exponent fit needs m > 0 and h0 > 0");
        if (i > 0 && records[i].m <= records[i - 1].m)
            throw Error(ErrorKind::insufficient_data, "exponent fit needs strictly increasing m");
    }
    std::vector<Decimal50> xs, ys;
    for (const GrowthRecord& r : records) {
        xs.push_back(log(to_float<Decimal50>(r.m)));
        ys.push_back(log(to_float<Decimal50>(r.h0)));
    }
    Decimal50 n(records.size());
    Decimal50 x_mean = 0, y_mean = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= n;
    y_mean /= n;
    Decimal50 sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    fit.max_residual = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Decimal50 residual = abs(ys[i] - (fit.intercept + fit.slope * xs[i]));
        if (residual > fit.max_residual)
            fit.max_residual = residual;
    }
    return fit;
}

} // namespace numdim
