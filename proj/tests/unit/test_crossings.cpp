#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zcsim/crossings.hpp"
#include "zcsim/errors.hpp"
#include "zcsim/waveform.hpp"

using namespace zcsim;

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

TEST_CASE("a sine crosses at zero and at half period with alternating directions") {
    const double T = 2.0 * pi;
    const PeriodicWaveform w =
        sample_function(T, 4096, [&](double t) { return std::sin(t); });
    const ZeroCrossingSet zc = detect_zerocrossings(w);
    REQUIRE(zc.size() == 2);
    CHECK(std::fabs(zc.time(0) - 0.0) < 1e-9);
    CHECK(std::fabs(zc.time(1) - T / 2.0) < 1e-6);
    CHECK(zc.direction(0) == CrossingDirection::rising);
    CHECK(zc.direction(1) == CrossingDirection::falling);
}

TEST_CASE("a mild third harmonic keeps exactly two crossings per period") {
    const double T = 1.0;
    auto f = [&](double t) {
        const double x = 2.0 * pi * t / T;
        return std::sin(x) + 0.2 * std::sin(3.0 * x);
    };
    const ZeroCrossingSet coarse = detect_zerocrossings(sample_function(T, 4096, f));
    const ZeroCrossingSet dense = detect_zerocrossings(sample_function(T, 65536, f));
    REQUIRE(coarse.size() == 2);
    REQUIRE(dense.size() == 2);
    for (int k = 0; k < 2; ++k)
        CHECK(std::fabs(coarse.time(k) - dense.time(k)) < 1e-6 * T);
}

TEST_CASE("a one-signed waveform has an empty crossing set") {
    const PeriodicWaveform flat(1.0, std::vector<double>(64, 1.0));
    CHECK(detect_zerocrossings(flat).empty());
    const PeriodicWaveform lifted =
        sample_function(1.0, 64, [&](double t) { return 2.0 + std::sin(2.0 * pi * t); });
    CHECK(detect_zerocrossings(lifted).empty());
}

TEST_CASE("detected sets are ordered with even count and alternating directions") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        const double c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng);
        const PeriodicWaveform w = sample_function(1.0, 2048, [&](double t) {
            const double x = 2.0 * pi * t;
            return c1 * std::sin(x) + c2 * std::cos(2.0 * x) + c3 * std::sin(3.0 * x) + 0.05;
        });
        ZeroCrossingSet zc{};
        try {
            zc = detect_zerocrossings(w);
        } catch (const DegenerateInput&) {
            continue; // a draw may be one-signed after the offset; nothing to check
        }
        CHECK(zc.size() % 2 == 0);
        for (int k = 1; k < zc.size(); ++k) {
            CHECK(zc.time(k) > zc.time(k - 1));
            CHECK(zc.direction(k) != zc.direction(k - 1));
        }
        for (int k = 0; k < zc.size(); ++k) {
            CHECK(zc.time(k) >= 0.0);
            CHECK(zc.time(k) < w.period);
        }
    }
}

TEST_CASE("the all-zero waveform is rejected as degenerate") {
    const PeriodicWaveform zero(1.0, std::vector<double>(32, 0.0));
    CHECK_THROWS_AS((void)detect_zerocrossings(zero), DegenerateInput);
}

TEST_CASE("a run of zero samples is rejected as degenerate") {
    std::vector<double> s(64, 1.0);
    s[10] = 0.0;
    s[11] = 0.0;
    const PeriodicWaveform w(1.0, s);
    CHECK_THROWS_AS((void)detect_zerocrossings(w), DegenerateInput);
}

TEST_CASE("crossing set construction validates ordering, parity and alternation") {
    using C = Crossing;
    const auto r = CrossingDirection::rising;
    const auto f = CrossingDirection::falling;
    CHECK_NOTHROW(ZeroCrossingSet(1.0, {C{0.1, r}, C{0.6, f}}));
    CHECK_THROWS_AS(ZeroCrossingSet(1.0, {C{0.1, r}}), InconsistentCrossings);
    CHECK_THROWS_AS(ZeroCrossingSet(1.0, {C{0.1, r}, C{0.6, r}}), InconsistentCrossings);
    CHECK_THROWS_AS(ZeroCrossingSet(1.0, {C{0.6, r}, C{0.1, f}}), InvalidArgument);
    CHECK_THROWS_AS(ZeroCrossingSet(1.0, {C{0.1, r}, C{1.2, f}}), InvalidArgument);
    CHECK_THROWS_AS(ZeroCrossingSet(0.0, {}), InvalidArgument);
}

TEST_CASE("sign_at reads the square wave implied by the crossing set") {
    const double T = 1.0;
    const ZeroCrossingSet zc(T, {Crossing{0.0, CrossingDirection::rising},
                                 Crossing{0.5, CrossingDirection::falling}});
    CHECK(zc.sign_at(0.25) == 1);
    CHECK(zc.sign_at(0.75) == -1);
    CHECK(zc.sign_at(0.0) == 0);
    CHECK(zc.sign_at(0.5) == 0);
    CHECK(zc.sign_at(1.25) == 1);  // periodic wrap
    CHECK(zc.sign_at(-0.25) == -1);

    const ZeroCrossingSet empty(T, {});
    CHECK(empty.sign_at(0.3) == 1);
}

TEST_CASE("an exact zero sample between agreeing neighbours is a touch, not a crossing") {
    // parabola-like dip touching zero at one grid point
    std::vector<double> s(64);
    for (int j = 0; j < 64; ++j) {
        const double d = static_cast<double>(j - 16);
        s[j] = d * d / 64.0 + 0.0;
    }
    s[16] = 0.0; // exact touch, neighbours both positive
    const ZeroCrossingSet zc = detect_zerocrossings(PeriodicWaveform(1.0, s));
    CHECK(zc.empty());
}
