#include <gtest/gtest.h>

#include <cmath>

#include "platelim/expression.hpp"

using namespace platelim;

TEST(Expression, BasicArithmetic) {
    EXPECT_DOUBLE_EQ(Expression::parse("2+3*4").eval(0, 0), 14.0);
    EXPECT_DOUBLE_EQ(Expression::parse("(2+3)*4").eval(0, 0), 20.0);
    EXPECT_DOUBLE_EQ(Expression::parse("7/2").eval(0, 0), 3.5);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2").eval(0, 0), 512.0);  // right associative
    EXPECT_DOUBLE_EQ(Expression::parse("-2^2").eval(0, 0), -4.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^-1").eval(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(Expression::parse(" 1 + x1 * x2 ").eval(2.0, 3.0), 7.0);
    EXPECT_NEAR(Expression::parse("cos(pi)").eval(0, 0), -1.0, 1e-15);
    EXPECT_NEAR(Expression::parse("sin(pi/2)+exp(0)").eval(0, 0), 2.0, 1e-15);
}

TEST(Expression, PaperStrengthField) {
    Expression f = Expression::parse("(cos(16*pi/3*x1)+1)*(cos(6*pi*x2)+1)+1");
    EXPECT_NEAR(f.eval(0.0, 0.0), 5.0, 1e-12);
    // strength minima along cos = -1 lines
    EXPECT_NEAR(f.eval(3.0 / 16.0, 0.25), 1.0, 1e-12);
    EXPECT_NEAR(f.eval(0.4, 1.0 / 6.0), 1.0, 1e-12);
    for (double x1 : {0.0, 0.3, 0.77, 1.5}) {
        for (double x2 : {0.0, 0.41, 1.0}) {
            const double expected =
                (std::cos(16.0 * M_PI / 3.0 * x1) + 1.0) * (std::cos(6.0 * M_PI * x2) + 1.0) + 1.0;
            EXPECT_NEAR(f.eval(x1, x2), expected, 1e-12);
        }
    }
}

TEST(Expression, ErrorsCarryPosition) {
    EXPECT_THROW(Expression::parse(""), ExpressionError);
    EXPECT_THROW(Expression::parse("2+"), ExpressionError);
    EXPECT_THROW(Expression::parse("x3"), ExpressionError);
    EXPECT_THROW(Expression::parse("cos 3"), ExpressionError);
    EXPECT_THROW(Expression::parse("(1+2"), ExpressionError);
    EXPECT_THROW(Expression::parse("1 + 2)"), ExpressionError);
    try {
        Expression::parse("1 + boo");
        FAIL();
    } catch (const ExpressionError& e) {
        EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("boo"), std::string::npos);
    }
}
