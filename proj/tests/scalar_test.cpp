// SPDX-License-Identifier: MIT
#include "effico/scalar.hpp"

#include <gtest/gtest.h>

using effico::ErrorCode;
using effico::Rational;
using effico::ScalarTraits;
using effico::Tolerance;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const effico::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::NumericalFailure;
}

}  // namespace

TEST(RationalParse, FractionsIntegersAndDecimals) {
    EXPECT_EQ(ScalarTraits<Rational>::parse("9/5"), Rational(9, 5));
    EXPECT_EQ(ScalarTraits<Rational>::parse("-3"), Rational(-3));
    EXPECT_EQ(ScalarTraits<Rational>::parse("1.25"), Rational(5, 4));
    EXPECT_EQ(ScalarTraits<Rational>::parse(" 0.1 "), Rational(1, 10));
    EXPECT_EQ(ScalarTraits<Rational>::parse("2e-3"), Rational(1, 500));
    EXPECT_EQ(ScalarTraits<Rational>::parse("1.5/3"), Rational(1, 2));
}

TEST(RationalParse, RejectsGarbage) {
    EXPECT_EQ(code_of([] { ScalarTraits<Rational>::parse("abc"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { ScalarTraits<Rational>::parse("1/0"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { ScalarTraits<Rational>::parse(""); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { ScalarTraits<double>::parse("x1"); }), ErrorCode::InvalidArgument);
}

TEST(RationalParse, DoubleTraitsHandleFractions) {
    EXPECT_DOUBLE_EQ(ScalarTraits<double>::parse("1/4"), 0.25);
    EXPECT_DOUBLE_EQ(ScalarTraits<double>::parse("-2.5"), -2.5);
}

TEST(RationalConversion, FromDoubleIsExactBinaryValue) {
    EXPECT_EQ(ScalarTraits<Rational>::from_double(0.375), Rational(3, 8));
    EXPECT_EQ(ScalarTraits<Rational>::from_double(-12.0), Rational(-12));
    const Rational tenth = ScalarTraits<Rational>::from_double(0.1);
    EXPECT_NE(tenth, Rational(1, 10));
    EXPECT_DOUBLE_EQ(effico::to_double(tenth), 0.1);
}

TEST(RationalConversion, RoundTripsThroughText) {
    for (const auto& v : {Rational(17, 8), Rational(-22, 25), Rational(0), Rational(7)})
        EXPECT_EQ(ScalarTraits<Rational>::parse(ScalarTraits<Rational>::to_string(v)), v);
    EXPECT_EQ(ScalarTraits<Rational>::to_string(Rational(9, 5)), "9/5");
}

TEST(ToleranceTest, ExactForRationals) {
    Tolerance<Rational> t{1e-3};
    EXPECT_TRUE(t.eq(Rational(1, 3), Rational(2, 6)));
    EXPECT_FALSE(t.eq(Rational(1, 3), Rational(1, 3) + Rational(1, 1000000)));
    EXPECT_EQ(t.sign(Rational(-1, 1000000000)), -1);
}

TEST(ToleranceTest, RelativeAboveOneForDoubles) {
    Tolerance<double> t{1e-9};
    EXPECT_TRUE(t.eq(1.0, 1.0 + 5e-10));
    EXPECT_FALSE(t.eq(1.0, 1.0 + 5e-9));
    EXPECT_TRUE(t.eq(1e6, 1e6 + 1e-4, 1e6));
    EXPECT_TRUE(t.is_zero(1e-10));
    EXPECT_TRUE(t.le(1.0 + 5e-10, 1.0));
    EXPECT_FALSE(t.lt(1.0 - 5e-10, 1.0));
}

TEST(ScalarHelpers, RatioAndConversion) {
    EXPECT_EQ(effico::ratio<Rational>(3, 9), Rational(1, 3));
    EXPECT_DOUBLE_EQ(effico::ratio<double>(1, 4), 0.25);
    auto d = effico::to_doubles(std::vector<Rational>{Rational(1, 2), Rational(3)});
    EXPECT_EQ(d, (std::vector<double>{0.5, 3.0}));
}
