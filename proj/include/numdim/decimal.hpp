#pragma once

// Fixed-precision decimal floats for display values and statistics. Nothing
// in here feeds back into an exact decision.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <ios>
#include <string>

#include "numdim/qfield.hpp"

namespace numdim {

template <unsigned Digits>
using DecimalN = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<Digits>>;

using Decimal50 = DecimalN<50>;
using Decimal60 = DecimalN<60>;
using Decimal200 = DecimalN<200>;

template <typename Float>
Float to_float(const Integer& n) {
    return Float(n.str());
}

template <typename Float>
Float to_float(const Rational& r) {
    return to_float<Float>(boost::multiprecision::numerator(r)) /
           to_float<Float>(boost::multiprecision::denominator(r));
}

// p + q sqrt2 with opposite signs cancels; divide the exact norm by the
// conjugate instead, which has no cancellation.
template <typename Float>
Float to_float(const QuadRat& x) {
    Float root2 = boost::multiprecision::sqrt(Float(2));
    if (x.is_rational() || x.p().sign() * x.q().sign() >= 0)
        return to_float<Float>(x.p()) + to_float<Float>(x.q()) * root2;
    return to_float<Float>(x.norm()) / (to_float<Float>(x.p()) - to_float<Float>(x.q()) * root2);
}

template <typename Float>
std::string fixed(const Float& x, int digits) {
    return x.str(digits, std::ios_base::fixed);
}

} // namespace numdim
