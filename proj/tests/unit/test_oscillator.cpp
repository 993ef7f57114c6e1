#include "helpers.hpp"
#include "oracles.hpp"

#include "tonekit/oscillator.hpp"
#include "tonekit/spectral.hpp"

using namespace tonekit;

TEST_CASE("built-in tables of length 4", "[oscillator]") {
    const auto square = build_wavetable(Shape::square, 4);
    CHECK(std::vector<double>(square.samples().begin(), square.samples().end()) == std::vector<double>{1, 1, -1, -1});
    const auto saw = build_wavetable(Shape::sawtooth, 4);
    CHECK(std::vector<double>(saw.samples().begin(), saw.samples().end()) == std::vector<double>{-1, -0.5, 0, 0.5});
    const auto sine = build_wavetable(Shape::sine, 4);
    const double expect[] = {0, 1, 0, -1};
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(sine[i], WithinAbs(expect[i], 1e-15));
    CHECK_THROWS_AS(build_wavetable(Shape::sine, 1), InvalidArgument);
    CHECK_THROWS_AS(from_sampled_period({0.5}), InvalidArgument);
}

TEST_CASE("table means and ranges", "[oscillator]") {
    for (std::size_t len : {4u, 64u, 1024u}) {
        for (Shape s : {Shape::sine, Shape::triangle, Shape::square}) {
            const auto t = build_wavetable(s, len);
            double sum = 0.0;
            for (double v : t.samples()) sum += v;
            CHECK_THAT(sum / static_cast<double>(len), WithinAbs(0.0, 1e-12));
            CHECK(t.max() <= 1.0);
            CHECK(t.min() >= -1.0);
        }
        const auto saw = build_wavetable(Shape::sawtooth, len);
        double sum = 0.0;
        for (double v : saw.samples()) sum += v;
        CHECK_THAT(sum / static_cast<double>(len), WithinAbs(-1.0 / static_cast<double>(len), 1e-12));
    }
}

TEST_CASE("shape names", "[oscillator]") {
    CHECK(parse_shape("saw") == Shape::sawtooth);
    CHECK(parse_shape("triangle") == Shape::triangle);
    CHECK(to_string(Shape::square) == "square");
    CHECK_THROWS_AS(parse_shape("pulse"), InvalidArgument);
}

TEST_CASE("synth_note follows the floored phase index", "[oscillator]") {
    const auto table = build_wavetable(Shape::sine, 128);
    const auto out = synth_note(table, 200.0, 0.5, SampleRate(44100));
    REQUIRE(out.frames() == 22050);
    for (std::size_t i = 0; i < out.frames(); ++i) {
        const auto idx = (static_cast<unsigned long long>(i) * 200ULL * 128ULL / 44100ULL) % 128ULL;
        REQUIRE(out.samples()[i] == table[idx]);
    }
}

TEST_CASE("synth_note at the natural frequency reproduces the table", "[oscillator]") {
    const auto table = from_sampled_period({0.1, 0.7, -0.3, 0.2, -0.9, 0.4, 0.0});
    const double f = table.natural_frequency(SampleRate(44100));
    const auto out = synth_note(table, f, 0.01, SampleRate(44100));
    for (std::size_t i = 0; i < out.frames(); ++i) REQUIRE(out.samples()[i] == table[i % table.size()]);
}

TEST_CASE("sampled periods", "[oscillator]") {
    const auto p = from_sampled_period(std::vector<double>(98, 0.0));
    CHECK(p.natural_frequency(SampleRate(44100)) == 450.0);
    const auto flat = synth_note(from_sampled_period({0.3, 0.3}), 1000.0, 0.01);
    for (double v : flat.samples()) CHECK(v == 0.3);

    const auto sine = build_wavetable(Shape::sine, 256);
    const auto copy = from_sampled_period(std::vector<double>(sine.samples().begin(), sine.samples().end()));
    CHECK(synth_note(sine, 441.0, 0.2) == synth_note(copy, 441.0, 0.2));
}

TEST_CASE("synth_note validates frequency", "[oscillator]") {
    const auto t = build_wavetable(Shape::sine);
    CHECK_THROWS_AS(synth_note(t, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(synth_note(t, 22050.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(synth_note(t, 440.0, -1.0), InvalidArgument);
    CHECK(synth_note(t, 440.0, 0.0).empty());
}

TEST_CASE("fundamental of synth_note", "[oscillator]") {
    for (double f : {100.0, 441.0, 1234.5, 5000.0}) {
        const auto out = synth_note(build_wavetable(Shape::sine), f, 1.0);
        const auto spec = spectral::forward(out);
        CHECK(std::fabs(spectral::peak_frequency(spec) - f) <= 1.0);
    }
}

TEST_CASE("synth_note is periodic", "[oscillator]") {
    const auto out = synth_note(build_wavetable(Shape::sine), 441.0, 0.2);
    const auto& x = out.samples();
    const std::size_t lag = 100;
    double best = -1.0;
    std::size_t best_lag = 0;
    for (std::size_t l = 50; l < 150; ++l) {
        double acc = 0.0;
        for (std::size_t i = 0; i + l < x.size(); ++i) acc += x[i] * x[i + l];
        if (acc > best) {
            best = acc;
            best_lag = l;
        }
    }
    CHECK(best_lag == lag);
}

TEST_CASE("odd-harmonic shapes have no even harmonics", "[oscillator]") {
    for (Shape s : {Shape::square, Shape::triangle}) {
        const auto spec = spectral::forward(synth_note(build_wavetable(s), 441.0, 1.0));
        const auto h = spectral::harmonic_magnitudes(spec, 441.0, 16);
        for (std::size_t k = 1; k < h.size(); k += 2) CHECK(h[k] <= h[0] * 1e-3);
    }
}

TEST_CASE("sawtooth and triangle roll-off over harmonics 1 to 15", "[oscillator]") {
    auto slope = [](Shape s, bool odd_only) {
        const auto spec = spectral::forward(synth_note(build_wavetable(s), 441.0, 1.0));
        const auto h = spectral::harmonic_magnitudes(spec, 441.0, 15);
        double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (odd_only && k % 2) continue;
            const double x = std::log2(static_cast<double>(k + 1)), y = 20.0 * std::log10(h[k]);
            sx += x, sy += y, sxx += x * x, sxy += x * y, n += 1;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    CHECK_THAT(slope(Shape::sawtooth, false), WithinAbs(-6.02, 1.0));
    CHECK_THAT(slope(Shape::triangle, true), WithinAbs(-12.04, 1.5));

    const auto spec = spectral::forward(synth_note(build_wavetable(Shape::sawtooth), 441.0, 1.0));
    const auto h = spectral::harmonic_magnitudes(spec, 441.0, 3);
    CHECK_THAT(h[2] / h[0], WithinAbs(1.0 / 3.0, 0.01));
}

TEST_CASE("constant glides equal synth_note", "[oscillator]") {
    const auto t = build_wavetable(Shape::sawtooth);
    CHECK(synth_glide(t, {330.0, 330.0, GlideMode::exponential}, 0.5) == synth_note(t, 330.0, 0.5));
    CHECK(synth_glide(t, {330.0, 330.0, GlideMode::linear}, 0.5) == synth_note(t, 330.0, 0.5));
    const auto freqs = std::vector<double>(1000, 441.0);
    CHECK(synth_from_frequencies(t, freqs, SampleRate()) == synth_note(t, 441.0, 1000.0 / 44100.0));
}

TEST_CASE("glide midpoints", "[oscillator]") {
    const auto t = build_wavetable(Shape::sine);
    const std::size_t n = 88200, w = 2048;
    const auto expo = synth_glide(t, {220.0, 880.0, GlideMode::exponential}, 2.0);
    const auto lin = synth_glide(t, {220.0, 880.0, GlideMode::linear}, 2.0);
    CHECK_THAT(spectral::window_peak_frequency(expo, n / 2 - w / 2, w), WithinRel(440.0, 0.02));
    CHECK_THAT(spectral::window_peak_frequency(lin, n / 2 - w / 2, w), WithinRel(550.0, 0.02));

    for (double q : {0.25, 0.5, 0.75}) {
        const auto centre = static_cast<std::size_t>(q * (n - 1));
        const double expected = 220.0 * std::pow(4.0, q);
        CHECK_THAT(spectral::window_peak_frequency(expo, centre - w / 2, w), WithinRel(expected, 0.02));
    }
}

TEST_CASE("glide frequency tracks", "[oscillator]") {
    const auto f = glide_frequencies({100.0, 400.0, GlideMode::exponential}, 5);
    CHECK_THAT(f[2], WithinRel(200.0, 1e-12));
    CHECK_THAT(f[4], WithinRel(400.0, 1e-12));
    const auto l = glide_frequencies({100.0, 400.0, GlideMode::linear}, 4);
    CHECK_THAT(l[1], WithinRel(200.0, 1e-12));
    CHECK(glide_frequencies({100.0, 400.0, GlideMode::linear}, 1) == std::vector<double>{100.0});
}

TEST_CASE("amplitude transitions", "[oscillator]") {
    const auto ones = mono(std::vector<double>(101, 1.0));
    CHECK(amp_transition(ones, Decibels(0.0)) == ones);
    const auto up = amp_transition(ones, Decibels(20.0 * std::log10(2.0)), 1.0);
    CHECK_THAT(up.samples().back(), WithinRel(2.0, 1e-12));
    CHECK(up.samples().front() == 1.0);
    const auto a1 = amp_transition(ones, Decibels(12.0), 1.0).samples()[50];
    const auto a2 = amp_transition(ones, Decibels(12.0), 2.0).samples()[50];
    CHECK(a2 < a1);
    CHECK_THROWS_AS(amp_transition(ones, Decibels(6.0), 0.0), InvalidArgument);

    CHECK(amp_transition_linear(ones, 1.0, 1.0) == ones);
    CHECK(amp_transition_linear(mono({1, 1, 1}), 0.0, 1.0).samples() == std::vector<double>{0.0, 0.5, 1.0});
    auto down = amp_transition_linear(ones, 1.0, 0.0).samples();
    const auto rise = amp_transition_linear(ones, 0.0, 1.0).samples();
    std::reverse(down.begin(), down.end());
    for (std::size_t i = 0; i < down.size(); ++i) CHECK_THAT(down[i], WithinAbs(rise[i], 1e-15));
}
