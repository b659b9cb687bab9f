#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "zcsim/ballast.hpp"
#include "zcsim/errors.hpp"

using namespace zcsim;

TEST_CASE("series inductance survives the high-frequency limit exactly") {
    CHECK(asymptotic_inductance(BallastDescriptor::series(5.0, 0.5), 1.0) == 0.5);
    CHECK(asymptotic_inductance(BallastDescriptor::series(0.0, 0.5, 1e-4), 1.0) == 0.5);
}

TEST_CASE("a pure resistor has no asymptotic inductance") {
    CHECK_THROWS_AS((void)asymptotic_inductance(BallastDescriptor::series(2.0, 0.0), 1.0),
                    NoAsymptoticInductance);
}

TEST_CASE("the asymptotic inductance ignores resistance and capacitance entirely") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double L = pos(rng);
        const double R = pos(rng);
        const double C = pos(rng) * 1e-3;
        CHECK(asymptotic_inductance(BallastDescriptor::series(R, L), 1.0) == L);
        CHECK(asymptotic_inductance(BallastDescriptor::series(R, L, C), 1.0) == L);
    }
}

TEST_CASE("rational forms take the inductance from the leading coefficient ratio") {
    // Y(s) = 1/(R + L s) with R = 2, L = 0.7
    const BallastDescriptor b = BallastDescriptor::rational({1.0}, {2.0, 0.7});
    CHECK(asymptotic_inductance(b, 1.0) == doctest::Approx(0.7).epsilon(1e-15));

    const double w = 3.0;
    const std::complex<double> y = b.admittance(w);
    const std::complex<double> expect = 1.0 / std::complex<double>(2.0, w * 0.7);
    CHECK(std::abs(y - expect) < 1e-15);

    // relative degree zero: a resistive divider has no inductive rolloff
    const BallastDescriptor flat = BallastDescriptor::rational({1.0, 1.0}, {2.0, 1.0});
    CHECK_THROWS_AS((void)asymptotic_inductance(flat, 1.0), NoAsymptoticInductance);
}

TEST_CASE("admittance and impedance are reciprocal on the series branch") {
    const BallastDescriptor b = BallastDescriptor::series(3.0, 0.7, 2e-3);
    const double w = 5.0;
    const std::complex<double> z = b.impedance(w);
    const std::complex<double> expect(3.0, w * 0.7 - 1.0 / (w * 2e-3));
    CHECK(std::abs(z - expect) < 1e-12);
    CHECK(std::abs(b.admittance(w) * z - 1.0) < 1e-14);
}

TEST_CASE("series resonance leaves the admittance unbounded") {
    // L = 1, C = 1 resonates at w = 1
    const BallastDescriptor b = BallastDescriptor::series(0.0, 1.0, 1.0);
    CHECK_THROWS_AS((void)b.admittance(1.0), ModelDomainError);
    CHECK_NOTHROW((void)b.admittance(2.0));
}

TEST_CASE("DC behaviour distinguishes blocking, conducting and unbounded paths") {
    const BallastDescriptor rc = BallastDescriptor::series(1.0, 0.0, 1e-3);
    CHECK(rc.dc_admittance_finite());
    CHECK(rc.dc_admittance() == 0.0); // series C blocks DC

    const BallastDescriptor rl = BallastDescriptor::series(4.0, 1.0);
    CHECK(rl.dc_admittance_finite());
    CHECK(rl.dc_admittance() == doctest::Approx(0.25).epsilon(1e-15));

    const BallastDescriptor pure_l = BallastDescriptor::series(0.0, 1.0);
    CHECK_FALSE(pure_l.dc_admittance_finite());
}

TEST_CASE("descriptor construction rejects unusable element values") {
    CHECK_THROWS_AS((void)BallastDescriptor::series(-1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS((void)BallastDescriptor::series(1.0, -1.0), InvalidArgument);
    CHECK_THROWS_AS((void)BallastDescriptor::series(1.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)BallastDescriptor::series(0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)BallastDescriptor::rational({}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS((void)BallastDescriptor::rational({1.0, 0.0}, {1.0}), InvalidArgument);
}
