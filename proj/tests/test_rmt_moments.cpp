#include <doctest.h>

#include "symvar/rmt_moments.hpp"

using namespace symvar;

TEST_SUITE_BEGIN("rmt-moments");

TEST_CASE("moment examples") {
    CHECK(symplectic_moment(1, 0, 1) == 1);
    CHECK(symplectic_moment(1, 4, 4) == 3); // k=1 degenerates to floor(n/2)+1
    CHECK(symplectic_moment(2, 2, 5) == 19);
    for (unsigned n = 0; n <= 9; ++n)
        CHECK(symplectic_moment(1, n, 10) == n / 2 + 1);
}

TEST_CASE("moment range, positivity, N-independence") {
    CHECK_THROWS_AS(symplectic_moment(1, 2, 1), validation_error);
    CHECK_THROWS_AS(symplectic_moment(2, 6, 5), validation_error);
    CHECK(symplectic_moment(2, 5, 5) > 0); // 2n = 10 <= 2N+k-1 = 11, last valid n

    // value at n = 0 is the empty-sum term, always 1
    for (unsigned k = 1; k <= 4; ++k) CHECK(symplectic_moment(k, 0, 3) == 1);

    // depends on n only within the valid range
    for (unsigned k = 1; k <= 3; ++k)
        for (unsigned n = 0; n <= 4; ++n)
            CHECK(symplectic_moment(k, n, 8) == symplectic_moment(k, n, 20));

    for (unsigned n = 0; n <= 12; ++n) CHECK(symplectic_moment(2, n, 15) > 0);
}

TEST_CASE("quadrature oracle basics") {
    CHECK(sp_weyl_oracle(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sp_weyl_oracle(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sp_weyl_oracle(1, 2, 1) == doctest::Approx(1.0).epsilon(1e-9)); // Sc_2 = 1 on Sp(2)
    CHECK_THROWS_AS(sp_weyl_oracle(1, 0, 3), validation_error);
    CHECK_THROWS_AS(sp_weyl_oracle(1, 3, 1), validation_error); // n > 2kN

    // same moment from both group sizes
    CHECK(sp_weyl_oracle(1, 1, 1) == doctest::Approx(sp_weyl_oracle(1, 1, 2)).epsilon(1e-9));
}

TEST_CASE("formula vs oracle inside the valid range") {
    for (unsigned k = 1; k <= 2; ++k)
        for (unsigned N = 1; N <= 2; ++N)
            for (unsigned n = 0; moment_in_range(k, n, N); ++n) {
                double formula = static_cast<double>(symplectic_moment(k, n, N));
                CHECK(std::abs(formula - sp_weyl_oracle(k, n, N)) <= 1e-6);
            }
}

TEST_CASE("range endpoint fails against the oracle (strict interior is correct)") {
    // formula value is N-independent; at (k=1, n=2) it is 2, the Sp(2) integral is 1
    CHECK(symplectic_moment(1, 2, 2) == 2);
    CHECK(sp_weyl_oracle(1, 2, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gamma leading coefficient") {
    CHECK(gamma_leading_coefficient(1) == cpp_rational(1, 2));
    CHECK(gamma_leading_coefficient(2) == cpp_rational(1, 215040));
    CHECK(gamma_leading_coefficient(3) ==
          cpp_rational(binomial(10, 5), pow2(11) * factorial(19)));
}

TEST_CASE("gamma monomial values") {
    CHECK(gamma_value(1, 0.0) == 0.0);
    CHECK(gamma_value(1, 0.5) == doctest::Approx(0.25));
    CHECK(gamma_value(2, 0.5) ==
          doctest::Approx(rational_to_double(cpp_rational(1, 215040)) * std::pow(0.5, 8)));
    CHECK_THROWS_AS(gamma_value(1, 0.6), validation_error);
    CHECK_THROWS_AS(gamma_value(1, -0.1), validation_error);
}

TEST_CASE("quasipolynomial fit, k=1") {
    auto qp = quasipoly_fit(1, 10);
    REQUIRE(qp.degree == 1);
    CHECK(qp.even_coeffs == std::vector<cpp_rational>{cpp_rational(1), cpp_rational(1, 2)});
    CHECK(qp.odd_coeffs == std::vector<cpp_rational>{cpp_rational(1, 2), cpp_rational(1, 2)});
    CHECK(qp.eval(6) == cpp_rational(4));
}

TEST_CASE("quasipolynomial reproduces the moment exactly, k=2") {
    auto qp = quasipoly_fit(2, 20);
    REQUIRE(qp.degree == 8);
    // exact agreement across the whole valid range, including unsampled points
    for (unsigned n = 0; moment_in_range(2, n, 20); ++n)
        CHECK(qp.eval(n) == cpp_rational(symplectic_moment(2, n, 20)));
    // top coefficient is parity-independent and equals the closed form
    CHECK(qp.even_coeffs.back() == qp.odd_coeffs.back());
    CHECK(qp.even_coeffs.back() == gamma_leading_coefficient(2));
}

TEST_CASE("quasipolynomial top coefficient reproduces gamma exactly") {
    for (unsigned k = 1; k <= 2; ++k) {
        auto qp = quasipoly_fit(k, k == 1 ? 10 : 20);
        for (int denom : {8, 4, 2}) {
            cpp_rational c(1, denom);
            cpp_rational cpow = 1;
            for (unsigned i = 0; i < qp.degree; ++i) cpow *= c;
            CHECK(qp.even_coeffs.back() * cpow == gamma_value_exact(k, c));
            CHECK(qp.odd_coeffs.back() * cpow == gamma_value_exact(k, c));
        }
    }
}

TEST_CASE("quasipolynomial insufficient range") {
    CHECK_THROWS_AS(quasipoly_fit(2, 5), validation_error);
}

TEST_CASE("quasipolynomial top coefficient at k=3") {
    // degree 19; needs 20 points per parity, n up to 39, N >= 39
    auto qp = quasipoly_fit(3, 40);
    REQUIRE(qp.degree == 19);
    CHECK(qp.even_coeffs.back() == gamma_leading_coefficient(3));
    CHECK(qp.odd_coeffs.back() == gamma_leading_coefficient(3));
    for (unsigned n : {0u, 17u, 40u})
        CHECK(qp.eval(n) == cpp_rational(symplectic_moment(3, n, 40)));
}

TEST_CASE("function-field box count") {
    CHECK(ff_box_count(3) == 2);
    CHECK(ff_box_count(0) == 0);
    CHECK(ff_box_count(10) == 5); // half the continuous-analogue coefficient 10
}

TEST_SUITE_END();
