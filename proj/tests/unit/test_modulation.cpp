#include "helpers.hpp"
#include "oracles.hpp"

#include <algorithm>

#include "tonekit/modulation.hpp"
#include "tonekit/spectral.hpp"

using namespace tonekit;

namespace {

const WaveTable& sine_table() {
    static const WaveTable t = build_wavetable(Shape::sine);
    return t;
}

} // namespace

TEST_CASE("Bessel values", "[modulation]") {
    CHECK(modulation::bessel_j(0, 0.0) == 1.0);
    for (int k = 1; k < 6; ++k) CHECK(modulation::bessel_j(k, 0.0) == 0.0);
    CHECK_THAT(modulation::bessel_j(0, 1.0), WithinAbs(0.76520, 5e-6));
    CHECK_THAT(modulation::bessel_j(1, 1.0), WithinAbs(0.44005, 5e-6));
    CHECK_THAT(modulation::bessel_j(-1, 1.0), WithinAbs(-0.44005, 5e-6));
}

TEST_CASE("Bessel series agrees with the integral form", "[modulation]") {
    for (int k = 0; k <= 10; ++k)
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
            REQUIRE_THAT(modulation::bessel_j(k, x), WithinAbs(oracle::bessel_quadrature(k, x), 1e-10));
}

TEST_CASE("zero depth is an identity", "[modulation]") {
    const auto& t = sine_table();
    const auto plain = synth_note(t, 440.0, 0.5);
    CHECK(modulation::vibrato(t, 440.0, 0.5, SampleRate(), OscillatorPattern(5.0), 0.0) == plain);
    CHECK(modulation::fm(t, 440.0, 5.0, 0.0, 0.5, SampleRate()) == plain);
    CHECK(modulation::tremolo(plain, OscillatorPattern(3.0), Decibels(0.0)) == plain);
    CHECK(modulation::am(plain, 7.0, 0.0) == plain);
}

TEST_CASE("vibrato excursion", "[modulation]") {
    SECTION("two semitones") {
        const auto v = modulation::vibrato(sine_table(), 1000.0, 2.0, SampleRate(), OscillatorPattern(3.0), 2.0);
        const auto f = oracle::zero_crossing_frequencies(v.samples(), 44100.0);
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        CHECK_THAT(*hi / *lo, WithinRel(std::pow(2.0, 4.0 / 12.0), 0.01));
    }
    SECTION("one octave with a sawtooth sound") {
        const auto v = modulation::vibrato(build_wavetable(Shape::sawtooth), 1000.0, 1.0, SampleRate(),
                                           OscillatorPattern(3.0), 12.0);
        const auto f = oracle::zero_crossing_frequencies(v.samples(), 44100.0);
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        CHECK_THAT(*hi, WithinRel(2000.0, 0.02));
        CHECK_THAT(*lo, WithinRel(500.0, 0.02));
    }
    CHECK_THROWS_AS(modulation::vibrato(sine_table(), 15000.0, 0.1, SampleRate(), OscillatorPattern(3.0), 12.0),
                    InvalidArgument);
}

TEST_CASE("tremolo depth", "[modulation]") {
    const auto carrier = mono(sine_samples(40.0, 88200));
    const auto t = modulation::tremolo(carrier, OscillatorPattern(1.5), Decibels(12.0));
    const auto peaks = oracle::half_cycle_peaks(t.samples());
    const auto [lo, hi] = std::minmax_element(peaks.begin() + 1, peaks.end() - 1);
    CHECK_THAT(*hi / *lo, WithinRel(std::pow(10.0, 24.0 / 20.0), 0.02));
}

TEST_CASE("tremolo keeps zero crossings", "[modulation]") {
    const auto carrier = mono(sine_samples(40.0, 44100));
    const auto t = modulation::tremolo(carrier, OscillatorPattern(1.5), Decibels(12.0));
    for (std::size_t i = 0; i < carrier.frames(); ++i) {
        const double a = carrier.samples()[i], b = t.samples()[i];
        REQUIRE(((a > 0) == (b > 0) && (a < 0) == (b < 0)));
    }
}

TEST_CASE("FM sidebands", "[modulation]") {
    const auto y = modulation::fm(sine_table(), 2000.0, 200.0, 200.0, 1.0, SampleRate());
    const auto s = spectral::forward(y);
    const double c0 = s.magnitude(2000), up = s.magnitude(2200), down = s.magnitude(1800);
    const double want = modulation::bessel_j(1, 1.0) / modulation::bessel_j(0, 1.0);
    CHECK_THAT(up / c0, WithinRel(want, 0.05));
    CHECK_THAT(down / c0, WithinRel(want, 0.05));
    CHECK(s.magnitude(2100) < 0.01 * c0);
}

TEST_CASE("FM energy stays near the sideband comb", "[modulation]") {
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto y = modulation::fm(sine_table(), 2000.0, 200.0, 200.0 * beta, 1.0, SampleRate());
        const auto s = spectral::forward(y);
        double total = 0.0, comb = 0.0;
        for (std::size_t k = 0; k <= 22050; ++k) total += std::norm(s[k]);
        for (int k = -10; k <= 10; ++k) comb += std::norm(s[static_cast<std::size_t>(2000 + 200 * k)]);
        CHECK(comb / total >= 0.99);
    }
}

TEST_CASE("AM sideband ratio", "[modulation]") {
    const auto carrier = mono(sine_samples(2000.0, 44100));
    for (double alpha : {0.5, 1.0}) {
        const auto s = spectral::forward(modulation::am(carrier, 300.0, alpha));
        const double c = s.magnitude(2000);
        CHECK_THAT(s.magnitude(1700) / c, WithinAbs(alpha / 2.0, 0.02));
        CHECK_THAT(s.magnitude(2300) / c, WithinAbs(alpha / 2.0, 0.02));
    }
}

TEST_CASE("AM of a sine is three sines", "[modulation]") {
    const double fc = 1000.0, fm = 150.0, alpha = 0.6, rate = 44100.0;
    const auto y = modulation::am(mono(sine_samples(fc, 5000)), fm, alpha);
    for (std::size_t i = 0; i < 5000; ++i) {
        const double t = static_cast<double>(i) / rate, w = 2.0 * std::numbers::pi;
        const double want = std::sin(w * fc * t) + alpha / 2.0 * (std::cos(w * (fc - fm) * t) - std::cos(w * (fc + fm) * t));
        REQUIRE_THAT(y.samples()[i], WithinAbs(want, 1e-9));
    }
}

TEST_CASE("ADSR envelope", "[modulation]") {
    const SampleRate rate;
    for (auto mode : {EnvelopeMode::linear, EnvelopeMode::exponential}) {
        AdsrSpec s{0.1, 0.2, 0.3, 0.5, mode, 1e-3};
        const std::size_t n = 44100;
        const auto env = modulation::adsr_envelope(s, n, rate);
        const std::size_t na = 4410, nd = 8820, nr = 13230;
        CHECK_THAT(env[na - 1], WithinAbs(1.0, 1e-12));
        CHECK_THAT(env[na], WithinAbs(1.0, 1e-6));
        CHECK_THAT(env[na + nd - 1], WithinAbs(0.5, 1e-12));
        for (std::size_t i = na + nd; i < n - nr; ++i) REQUIRE(env[i] == 0.5);
        CHECK_THAT(env[n - nr], WithinAbs(0.5, 1e-6));
        if (mode == EnvelopeMode::exponential) {
            CHECK_THAT(env.back(), WithinAbs(1e-3, 1e-12));
            CHECK_THAT(env.front(), WithinAbs(1e-3, 1e-12));
        } else {
            CHECK(env.back() == 0.0);
            CHECK(env.front() == 0.0);
        }
    }
    CHECK_THROWS_AS(modulation::adsr_envelope({0.5, 0.5, 0.5, 0.5}, 44100, rate), InvalidArgument);
    CHECK_THROWS_AS(modulation::adsr_envelope({0.1, 0.1, 0.1, 0.0}, 44100, rate), InvalidArgument);

    const auto ones = mono(std::vector<double>(1000, 1.0));
    const auto shaped = modulation::adsr(ones, {0.001, 0.001, 0.001, 0.7, EnvelopeMode::linear});
    CHECK(shaped.samples()[500] == 0.7);
}

TEST_CASE("parameter linkage", "[modulation]") {
    LinkSpec link{[](double f) { return f / 100.0; }, [](double) { return 0.5; }, [](double f) { return 1200.0 / f; }};
    const auto p = modulation::link_parameters(440.0, link);
    CHECK_THAT(p.f_mod, WithinAbs(4.4, 1e-12));
    CHECK(p.nu == 0.5);
    CHECK_THAT(p.v_db, WithinAbs(2.72727, 1e-5));

    LinkSpec bad{[](double f) { return std::log(f - 500.0); }, [](double) { return 0.0; }, [](double) { return 0.0; }};
    CHECK_THROWS_AS(modulation::link_parameters(440.0, bad), InvalidArgument);
    CHECK_THROWS_AS(modulation::link_parameters(440.0, LinkSpec{}), InvalidArgument);
}

TEST_CASE("modulator sequence", "[modulation]") {
    const auto m = modulation::pattern_sequence(OscillatorPattern(build_wavetable(Shape::square, 4), 11025.0), 8, SampleRate());
    CHECK(m == std::vector<double>{1, 1, -1, -1, 1, 1, -1, -1});
    CHECK_THROWS_AS(OscillatorPattern(0.0), InvalidArgument);
}
