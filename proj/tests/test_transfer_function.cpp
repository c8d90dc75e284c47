#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <lelosc/errors.hpp>
#include <lelosc/transfer_function.hpp>

using namespace lelosc;

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(TransferFunction(Polynomial({1.0}), Polynomial()), std::invalid_argument);
}

TEST_CASE("tf_mul multiplies without cancellation") {
    TransferFunction a{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    TransferFunction b{Polynomial({2.0}), Polynomial({1.0, 2.0})};
    auto c = tf_mul(a, b);
    CHECK(c.num == Polynomial({2.0}));
    CHECK(c.den == Polynomial({1.0, 3.0, 2.0}));

    // (s+1)/(s+1) times 1/(s+1) keeps the common factor
    TransferFunction d{Polynomial({1.0, 1.0}), Polynomial({1.0, 1.0})};
    auto e = tf_mul(d, a);
    CHECK(e.num == Polynomial({1.0, 1.0}));
    CHECK(e.den.degree() == 2);
}

TEST_CASE("unity feedback around an integrator") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 0.0})};
    auto cl = tf_feedback(g, TransferFunction::constant(1.0));
    CHECK(cl.num == Polynomial({1.0}));
    CHECK(cl.den == Polynomial({1.0, 1.0}));
}

TEST_CASE("degenerate loop throws") {
    CHECK_THROWS_AS(tf_feedback(TransferFunction::constant(-1.0), TransferFunction::constant(1.0)),
                    DegenerateLoop);
}

TEST_CASE("feedback identity at random frequencies") {
    TransferFunction g{Polynomial({2.0, 1.0}), Polynomial({1.0, 3.0, 5.0})};
    TransferFunction h{Polynomial({1.0}), Polynomial({0.5, 1.0})};
    auto cl = tf_feedback(g, h);
    const double freqs[] = {0.017, 0.31, 1.7, 4.4, 12.0, 55.0, 260.0, 1000.0};
    for (double f : freqs) {
        auto gv = freq_eval(g, f);
        auto hv = freq_eval(h, f);
        auto expect = gv / (1.0 + gv * hv);
        auto got = freq_eval(cl, f);
        CHECK(std::abs(got - expect) <= 1e-9 * std::abs(expect));
    }
}

TEST_CASE("integrator phase is exactly -90 degrees") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 0.0})};
    for (double f : {0.1, 1.0, 10.0, 123.456}) {
        auto v = freq_eval(g, f);
        CHECK(std::arg(v) == -std::numbers::pi / 2.0);
        CHECK(std::abs(v) == doctest::Approx(1.0 / (2.0 * std::numbers::pi * f)));
    }
}

TEST_CASE("freq_eval requires positive frequency") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    CHECK_THROWS_AS((void)freq_eval(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)freq_eval(g, -1.0), std::invalid_argument);
}

TEST_CASE("pole on the imaginary axis is detected") {
    const double w = 2.0 * std::numbers::pi; // resonance at exactly 1 Hz
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 0.0, w * w})};
    CHECK_THROWS_AS((void)freq_eval(g, 1.0), PoleOnAxis);
    CHECK_NOTHROW((void)freq_eval(g, 0.99));
    CHECK_NOTHROW((void)freq_eval(g, 1.01));
}

TEST_CASE("tf_scale scales the numerator only") {
    TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    auto s = tf_scale(g, -2.0);
    CHECK(s.num == Polynomial({-2.0}));
    CHECK(s.den == g.den);
}

TEST_CASE("constant transfer function") {
    auto c = TransferFunction::constant(3.0);
    CHECK(c.eval(std::complex<double>(7.0, -2.0)) == std::complex<double>(3.0, 0.0));
}
