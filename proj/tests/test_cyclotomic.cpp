#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wecomp/cyclotomic.hpp"

using namespace wecomp;

TEST_CASE("omega powers wrap with omega^4 = -1", "[cyclotomic]") {
    CHECK(CycInt::omega_pow(0) == CycInt::integer(1));
    CHECK(CycInt::omega_pow(4) == CycInt::integer(-1));
    CHECK(CycInt::omega_pow(8) == CycInt::integer(1));
    CHECK(CycInt::omega_pow(5) == CycInt::integer(-1) * CycInt::omega_pow(1));
    CHECK(CycInt::omega_pow(-1) == CycInt::omega_pow(7));
    CHECK(CycInt::omega_pow(-3) * CycInt::omega_pow(3) == CycInt::integer(1));
}

TEST_CASE("ring arithmetic", "[cyclotomic]") {
    CycInt w = CycInt::omega_pow(1);
    CycInt i = CycInt::omega_pow(2);
    CHECK(i * i == CycInt::integer(-1));
    CHECK((CycInt::integer(1) + w) * (CycInt::integer(1) - w) ==
          CycInt::integer(1) - i);
    // sqrt(2) = w - w^3 squares to 2
    CycInt rt2 = w - CycInt::omega_pow(3);
    CHECK(rt2 * rt2 == CycInt::integer(2));
    CHECK((CycInt::integer(1) + w).pow(0) == CycInt::integer(1));
    CHECK((CycInt::integer(1) + w).pow(2) ==
          CycInt::integer(1) + CycInt::integer(2) * w + i);
    CHECK(CycInt::integer(0).is_zero());
    CHECK(CycInt::integer(-7).is_integer());
    CHECK(CycInt::integer(-7).as_integer() == -7);
    CHECK_FALSE(w.is_integer());
}

TEST_CASE("string form and parser agree", "[cyclotomic]") {
    CycInt v(1, 0, 3, 0);
    CHECK(v.str() == "1+3*w^2");
    CHECK(CycInt::integer(0).str() == "0");
    CHECK(CycInt(0, -1, 0, 2).str() == "-1*w+2*w^3");
    CHECK(CycInt::parse("1+3*w^2") == v);
    CHECK(CycInt::parse("1+3w^2") == v);   // the * is optional
    CHECK(CycInt::parse("w") == CycInt::omega_pow(1));
    CHECK(CycInt::parse("-w^3+2") == CycInt(2, 0, 0, -1));
    CHECK(CycInt::parse("0") == CycInt::integer(0));
    for (const CycInt& z :
         {CycInt(3, -2, 0, 5), CycInt(0, 0, 0, -1), CycInt(12, 1, 1, 1)})
        CHECK(CycInt::parse(z.str()) == z);
    CHECK_THROWS_AS(CycInt::parse("w^4"), InputError);
    CHECK_THROWS_AS(CycInt::parse("q+1"), InputError);
}

TEST_CASE("embedding into the complex plane", "[cyclotomic]") {
    // 1 + w^2 = 1 + i needs no irrational part: exactly representable
    ApproxComplex z = to_complex(CycInt(1, 0, 1, 0), 64);
    CHECK(z.err().is_zero());
    CHECK(z.re().to_double() == 1.0);
    CHECK(z.im().to_double() == 1.0);

    ApproxComplex w1 = to_complex(CycInt::integer(1) + CycInt::omega_pow(1), 96);
    double h = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(w1.re().to_double() - (1.0 + h)) < 1e-15);
    CHECK(std::abs(w1.im().to_double() - h) < 1e-15);
    CHECK(w1.err().to_double() < 1e-20);

    CHECK_THROWS_AS(to_complex(CycInt::integer(1), 8), InputError);
}

TEST_CASE("log2|1+omega| pins the hardness threshold", "[cyclotomic]") {
    Real a0 = log2_abs_one_plus_omega(128);
    double d = a0.to_double();
    CHECK(std::abs(d - 0.885776651582) < 1e-10);
    CHECK(d >= 0.88);
    CHECK(d < 0.89);  // "0.88 to two decimals"
    // 2^a0 recovers |1+omega| = 2 cos(pi/8) = 1.84776...
    double n = Real::exp2(a0).to_double();
    CHECK(std::abs(n - 2.0 * std::cos(M_PI / 8.0)) < 1e-12);
    CHECK(std::abs(n - 1.84776) < 1e-5);
}
