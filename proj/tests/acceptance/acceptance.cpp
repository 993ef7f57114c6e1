// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tonekit/demos.hpp"
#include "tonekit/filters.hpp"
#include "tonekit/modulation.hpp"
#include "tonekit/noise.hpp"
#include "tonekit/render.hpp"
#include "tonekit/spatial.hpp"
#include "tonekit/spectral.hpp"
#include "tonekit/structure.hpp"
#include "tonekit/theory.hpp"
#include "tonekit/wav.hpp"

using namespace tonekit;

namespace {

struct Check {
    std::ostringstream notes;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << "[fail] " << what << "; ";
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        const bool pass = std::fabs(got - want) <= tol;
        if (!pass) ok = false;
        notes << (pass ? "" : "[fail] ") << what << " = " << got << " (want " << want << " +/- " << tol << "); ";
    }
};

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

SampleBuffer mono(std::vector<double> v) { return SampleBuffer::mono(SampleRate(), std::move(v)); }

std::vector<double> sine(double f, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / 44100.0);
    return v;
}

void ac1(Check& c) {
    const auto x = mono(sine(441.0, 44100));
    c.near(db_difference(scale(x, 2.0), x).value(), 6.0206, 1e-4 + 1e-6, "db_difference(2x, x)");
    c.near(20.0 * std::log10(2.0), 6.0206, 1e-4, "20 log10 2");
    c.near(db_difference(scale(x, 2.0), x).value(), 20.0 * std::log10(2.0), 1e-6, "db_difference vs exact");
    c.near(db_to_gain(Decibels(10.0)), 3.16228, 1e-5, "db_to_gain(10)");
}

void ac2(Check& c) {
    for (Shape shape : {Shape::square, Shape::triangle, Shape::sawtooth}) {
        const auto s = spectral::forward(synth_note(build_wavetable(shape), 441.0, 1.0));
        const auto h = spectral::harmonic_magnitudes(s, 441.0, 49);
        const std::string name(to_string(shape));
        if (shape != Shape::sawtooth) {
            double even = 0.0;
            for (std::size_t k = 1; k < h.size(); k += 2) even += h[k] * h[k];
            c.expect(10.0 * std::log10(even / (h[0] * h[0])) <= -60.0, name + " even harmonics <= -60 dB");
        }
        std::vector<double> x, y;
        for (std::size_t k = 0; k < h.size(); ++k) {
            const std::size_t n = k + 1;
            if (shape != Shape::sawtooth && n % 2 == 0) continue;
            x.push_back(std::log2(static_cast<double>(n)));
            y.push_back(20.0 * std::log10(h[k]));
        }
        const double slope = fit_slope(x, y);
        if (shape == Shape::sawtooth) c.near(slope, -6.02, 1.0, "sawtooth slope");
        if (shape == Shape::triangle) c.near(slope, -12.04, 1.5, "triangle slope");
        if (shape == Shape::square) c.notes << "square slope = " << slope << "; ";
    }
}

void ac3(Check& c) {
    bool pairs = true;
    for (std::size_t n = 1; n <= 256; ++n) pairs = pairs && spectral::paired_count(n) == oracle::conjugate_pairs(n);
    c.expect(pairs, "paired_count vs brute force, n = 1..256");
    double worst = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        std::mt19937_64 rng(n);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> x(n);
        for (double& v : x) v = u(rng);
        const auto spec = spectral::forward(mono(x));
        const auto got = spectral::reconstruct_real(spec);
        const auto want = oracle::inverse_dft_real(spec.coeffs());
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(got.samples()[i] - want[i]));
    }
    c.near(worst, 0.0, 1e-9, "max reconstruction error, n = 1..64");
}

void ac4(Check& c) {
    const std::vector<std::pair<NoiseColor, double>> cases{{NoiseColor::white, 0.0},  {NoiseColor::pink, -3.01},
                                                           {NoiseColor::brown, -6.02}, {NoiseColor::blue, 3.01},
                                                           {NoiseColor::violet, 6.02}};
    for (const auto& [color, want] : cases) {
        NoiseSpec spec;
        spec.color = color;
        spec.length = 1u << 17;
        spec.seed = 2024;
        const auto s = spectral::forward(noise::generate(spec));
        c.near(spectral::slope_db_per_octave(s, 100.0, 10000.0), want, 0.1, std::string(to_string(color)) + " slope");
        if (color != NoiseColor::white) {
            bool zero = true;
            for (std::size_t k = 1; s.bin_frequency(k) < spec.f_min; ++k) zero = zero && s.magnitude(k) < 1e-9;
            c.expect(zero, std::string(to_string(color)) + " bins below f_min are zero");
        }
    }
}

void ac5(Check& c) {
    for (double fc : {0.01, 0.05, 0.1}) {
        const std::string tag = " fc=" + std::to_string(fc).substr(0, 4);
        c.near(20.0 * std::log10(filters::probe_magnitude(filters::design_iir(FilterKind::lowpass, fc), fc)), -3.0, 1.0,
               "lowpass" + tag + " dB");
        c.near(20.0 * std::log10(filters::probe_magnitude(filters::design_iir(FilterKind::highpass, fc), fc)), -3.0, 1.0,
               "highpass" + tag + " dB");
    }
    for (FilterKind kind : {FilterKind::bandpass}) {
        for (double bw : {0.02, 0.05}) {
            const auto co = filters::design_iir(kind, 0.25, bw);
            const double centre = filters::probe_magnitude(co, 0.25);
            const std::string tag = " bw=" + std::to_string(bw).substr(0, 4);
            c.near(filters::probe_magnitude(co, 0.25 - bw) / centre, 0.707, 0.1, "bandpass fc-bw" + tag);
            c.near(filters::probe_magnitude(co, 0.25 + bw) / centre, 0.707, 0.1, "bandpass fc+bw" + tag);
        }
    }
    const auto notch = filters::design_iir(FilterKind::bandreject, 0.25, 0.05);
    const double depth = 20.0 * std::log10(filters::probe_magnitude(notch, 0.25) / filters::probe_magnitude(notch, 0.02));
    c.expect(depth <= -26.0, "notch depth <= -26 dB");
    c.notes << "notch depth = " << depth << " dB; ";
}

void ac6(Check& c) {
    const auto t = build_wavetable(Shape::sine);
    const auto s = spectral::forward(modulation::fm(t, 2000.0, 200.0, 200.0, 1.0, SampleRate()));
    const double want = modulation::bessel_j(1, 1.0) / modulation::bessel_j(0, 1.0);
    c.near(want, oracle::bessel_quadrature(1, 1.0) / oracle::bessel_quadrature(0, 1.0), 1e-9, "series vs quadrature");
    c.near(s.magnitude(2200) / s.magnitude(2000), want, 0.05 * want, "FM k=+1 ratio");
    c.near(s.magnitude(1800) / s.magnitude(2000), want, 0.05 * want, "FM k=-1 ratio");
    const auto a = spectral::forward(modulation::am(mono(sine(2000.0, 44100)), 300.0, 0.5));
    c.near(a.magnitude(1700) / a.magnitude(2000), 0.25, 0.02, "AM lower sideband");
    c.near(a.magnitude(2300) / a.magnitude(2000), 0.25, 0.02, "AM upper sideband");
}

void ac7(Check& c) {
    const auto v = modulation::vibrato(build_wavetable(Shape::sine), 1000.0, 2.0, SampleRate(), OscillatorPattern(3.0), 12.0);
    const auto f = oracle::zero_crossing_frequencies(v.samples(), 44100.0);
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    c.near(*hi, 2000.0, 20.0, "vibrato max Hz");
    c.near(*lo, 500.0, 5.0, "vibrato min Hz");
    const auto tr = modulation::tremolo(mono(sine(40.0, 88200)), OscillatorPattern(1.5), Decibels(12.0));
    const auto peaks = oracle::half_cycle_peaks(tr.samples());
    const auto [plo, phi] = std::minmax_element(peaks.begin() + 1, peaks.end() - 1);
    const double want = std::pow(10.0, 1.2);
    c.near(*phi / *plo, want, 0.02 * want, "tremolo envelope ratio");
}

void ac8(Check& c) {
    for (auto mode : {EnvelopeMode::exponential, EnvelopeMode::linear}) {
        const AdsrSpec s{0.05, 0.1, 0.2, 0.6, mode, 1e-3};
        const auto env = modulation::adsr_envelope(s, 44100, SampleRate());
        const std::size_t na = 2205, nd = 4410, nr = 8820;
        const std::string tag = mode == EnvelopeMode::linear ? "linear " : "exponential ";
        c.expect(std::fabs(env[na - 1] - 1.0) <= 1e-6, tag + "attack end = 1");
        bool sustain = true;
        for (std::size_t i = na + nd - 1; i <= 44100 - nr; ++i) sustain = sustain && std::fabs(env[i] - 0.6) <= 1e-6;
        c.expect(sustain, tag + "sustain = a_S");
        const double end = mode == EnvelopeMode::linear ? 0.0 : 1e-3;
        c.expect(std::fabs(env.back() - end) <= 1e-6, tag + "release end");
    }
}

void ac9(Check& c) {
    const auto mid = spatial::itd_iid({0.0, 3.0});
    c.expect(mid.itd == 0.0 && mid.iid.value() == 0.0, "median plane cues exactly zero");
    const auto side = spatial::itd_iid({1.0, 0.0});
    c.near(side.itd, 6.265e-4, 1e-7, "ITD (1,0)");
    c.near(side.iid.value(), -1.874, 0.001, "IID (1,0)");
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    bool bound = true;
    for (int i = 0; i < 1000; ++i) bound = bound && std::fabs(spatial::itd_iid({u(rng), u(rng)}).itd) <= 0.215 / kSpeedOfSound;
    c.expect(bound, "|ITD| bound over 1000 positions");
    double worst = 0.0;
    for (double a : {-120.0, -10.0, 0.0, 5.0, 80.0})
        for (double b : {-60.0, 0.0, 30.0, 250.0})
            worst = std::max(worst, std::fabs(spatial::doppler_shift(spatial::doppler_shift(1000.0, a, b), b, a) - 1000.0));
    c.near(worst, 0.0, 1e-12, "Doppler reciprocity");
}

void ac10(Check& c) {
    ReverbSpec spec;
    const auto r = spatial::reverb_impulse(spec, SampleRate());
    c.expect(duration_to_samples(0.1, SampleRate()) == 4410, "first period 4410 samples");
    c.expect(r.size() == 83790, "total 83790 samples");
    c.expect(r[0] == 1.0, "r_0 = 1");
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        const auto ir = spatial::reverb_impulse(spec, SampleRate());
        std::size_t n = 0;
        for (std::size_t i = 1; i < 4410; ++i) n += ir[i] != 0.0;
        mean += static_cast<double>(n) / 20.0;
    }
    c.near(mean, 1470.0, 0.05 * 1470.0, "mean first-period impulse count");
}

void ac11(Check& c) {
    const auto wt = theory::make_scale("wholetone");
    c.near(theory::degree_frequency(Tuning::equal(12, 200.0), wt.offsets()[3]), 282.843, 0.001, "whole-tone e_3 from 200 Hz");
    const std::map<std::string, std::vector<double>> listed{
        {"chromatic", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}},
        {"wholetone", {0, 2, 4, 6, 8, 10}},
        {"minor-thirds", {0, 3, 6, 9}},
        {"major-thirds", {0, 4, 8}},
        {"tritones", {0, 6}},
        {"aeolian", {0, 2, 3, 5, 7, 8, 10}},
        {"locrian", {0, 1, 3, 5, 6, 8, 10}},
        {"ionian", {0, 2, 4, 5, 7, 9, 11}},
        {"dorian", {0, 2, 3, 5, 7, 9, 10}},
        {"phrygian", {0, 1, 3, 5, 7, 8, 10}},
        {"lydian", {0, 2, 4, 6, 7, 9, 11}},
        {"mixolydian", {0, 2, 4, 5, 7, 9, 10}},
        {"harmonic-minor", {0, 2, 3, 5, 7, 8, 11}},
        {"melodic-minor", {0, 2, 3, 5, 7, 9, 11, 12, 10, 8, 7, 5, 3, 2, 0}},
        {"harmonic-series", {0, 12, 19 + 0.02, 24, 28 - 0.14, 31 + 0.2, 34 - 0.31, 36, 38 + 0.04, 40 - 0.14,
                             42 - 0.49, 43 + 0.02, 44 + 0.41, 46 - 0.31, 47 - 0.12, 48, 49 + 0.05, 50 + 0.04,
                             51 - 0.02, 52 - 0.14}},
    };
    for (const auto& [name, want] : listed) c.expect(theory::make_scale(name).offsets() == want, "scale " + name);

    const std::map<int, IntervalClass> table1{
        {0, IntervalClass::perfect_consonance},   {1, IntervalClass::harsh_dissonance},
        {2, IntervalClass::mild_dissonance},      {3, IntervalClass::imperfect_consonance},
        {4, IntervalClass::imperfect_consonance}, {5, IntervalClass::contextual},
        {6, IntervalClass::tritone},              {7, IntervalClass::perfect_consonance},
        {8, IntervalClass::imperfect_consonance}, {9, IntervalClass::imperfect_consonance},
        {10, IntervalClass::mild_dissonance},     {11, IntervalClass::harsh_dissonance}};
    bool all = true;
    for (int s = 0; s <= 48; ++s) all = all && theory::classify_interval(s) == table1.at(s % 12);
    c.expect(all, "interval classes 0..48");
    c.expect(theory::diatonic_mode_kappa(2).offsets() == listed.at("lydian"), "kappa = 2 is lydian");
}

void ac12(Check& c) {
    const auto rows = structure::cycle_sequence(structure::hunt_peal_generators(), std::vector<int>{1, 2, 3});
    const std::vector<std::vector<int>> table3{{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {3, 2, 1}, {3, 1, 2}, {1, 3, 2}, {1, 2, 3}};
    c.expect(rows == table3, "hunt peal rows");
    std::vector<std::size_t> v{0, 1, 2, 3};
    bool orders = true;
    do {
        const Permutation p(v);
        orders = orders && structure::cycle_sequence(p, std::vector<int>{1, 2, 3, 4}).size() - 1 == structure::order(p);
    } while (std::next_permutation(v.begin(), v.end()));
    c.expect(orders, "order = cycle length - 1 over S4");
    const auto x = structure::lucas_sequence(1, 1, 31);
    c.near(x[30] / x[29], 1.61803398875, 1e-6, "Lucas ratio at term 30");
    const auto e = structure::golden_ratio_errors(1, 100, 4);
    const std::vector<double> listed{6080.33, -37.57, 23.0, -7.14};
    for (std::size_t i = 0; i < listed.size(); ++i) c.near(e[i], listed[i], 0.01, "error " + std::to_string(i + 1));
}

void ac13(Check& c) {
    for (const auto& name : demo_names()) {
        const auto s = demo_score(name);
        const auto a = oracle::fnv1a(wav::encode(render(s)).bytes);
        const auto b = oracle::fnv1a(wav::encode(render(s)).bytes);
        c.expect(a == b, "demo " + name + " hash stable");
    }
    const std::string path = std::string(TONEKIT_TEST_TMP) + "/acceptance_roundtrip.wav";
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> l(20000), r(20000);
    for (double& v : l) v = u(rng);
    for (double& v : r) v = u(rng);
    const auto x = SampleBuffer::stereo(SampleRate(), l, r);
    write_wav(x, path);
    const auto y = read_wav(path);
    double worst = 0.0;
    for (std::size_t ch = 0; ch < 2; ++ch)
        for (std::size_t i = 0; i < x.frames(); ++i) worst = std::max(worst, std::fabs(x.channel(ch)[i] - y.channel(ch)[i]));
    c.expect(y.frames() == x.frames() && y.channel_count() == 2, "round trip shape");
    c.expect(worst <= 1.0 / 32767.0, "round trip within 1/32767");
    c.notes << "round trip max error = " << worst << "; ";
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"volume algebra", ac1},     {"waveform spectra", ac2},  {"DFT pairing", ac3},
        {"noise slopes", ac4},       {"IIR recipes", ac5},       {"FM and AM sidebands", ac6},
        {"vibrato and tremolo", ac7}, {"ADSR continuity", ac8},  {"spatial cues", ac9},
        {"reverb impulse", ac10},    {"theory tables", ac11},    {"structure", ac12},
        {"end to end", ac13}};
    std::filesystem::create_directories(TONEKIT_TEST_TMP);

    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes << "[exception] " << e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!c.ok) ++failed;
        std::printf("AC%-2zu %s  %-20s %8.1f ms  %s\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), ms,
                    c.notes.str().c_str());
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("total %.2f s, %d of %zu failed\n", total, failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
