#include "tonekit/demos.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "tonekit/spectral.hpp"

namespace tonekit {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hz(double v) { return num(v) + "Hz"; }

const char* kCore = R"(# Level steps of 6 dB, then two tones mixed
meta rate=44100 seed=1
note 0 441Hz 0.5 amp=-6dB adsr=0.01,0,1,0.05
note 0.5 441Hz 0.5 amp=-12dB adsr=0.01,0,1,0.05
note 1 441Hz 0.5 amp=-18dB adsr=0.01,0,1,0.05
note 1.5 441Hz 0.5 amp=-24dB adsr=0.01,0,1,0.05
note 2 441Hz 1 amp=0.3 adsr=0.01,0,1,0.1
note 2 661.5Hz 1 amp=0.3 adsr=0.01,0,1,0.1
)";

const char* kOscillator = R"(# Basic shapes, a sampled period and two glides
meta rate=44100 seed=2
table zigzag 0 0.5 1 0.5 0 -0.25 -0.5 -1 -0.5 -0.25
note 0 220Hz 0.5 wave=sine amp=0.5
note 0.5 220Hz 0.5 wave=triangle amp=0.5
note 1 220Hz 0.5 wave=square amp=0.25
note 1.5 220Hz 0.5 wave=sawtooth amp=0.3
note 2 220Hz 0.5 wave=zigzag amp=0.4
note 2.5 220Hz 1 glide=880Hz amp=0.5
note 3.5 880Hz 1 glide=220Hz,lin wave=triangle amp=0.5
)";

const char* kFilters = R"(# White noise through a resonant band filter, then a low-pass sweep of bursts
meta rate=44100 seed=3
noise 0 white 1.5 amp=0.8
noise 1.5 white 0.2 amp=0.8
noise 2 white 0.2 amp=0.8
post bandpass fc=0.02 bw=0.002
post lowpass fc=0.1
post normalize peak=0.8
)";

const char* kNoise = R"(# One second of each noise color
meta rate=44100 seed=4
noise 0 white 1 amp=0.5
noise 1 pink 1 amp=0.5
noise 2 brown 1 amp=0.5
noise 3 blue 1 amp=0.5
noise 4 violet 1 amp=0.5
noise 5 black 1 amp=0.5
)";

const char* kModulation = R"(# Vibrato, tremolo, FM, AM and both envelope modes
meta rate=44100 seed=5
note 0 1000Hz 2 vib=3,12 amp=0.4
note 2 440Hz 2 trem=4,12 amp=0.2
note 4 2000Hz 1 fm=200,200 amp=0.4 adsr=0.02,0,1,0.1
note 5 440Hz 1 am=110,0.5 amp=0.4
note 6 440Hz 1.5 adsr=0.1,0.2,0.5,0.4 amp=0.6
note 7.5 440Hz 1.5 adsr=0.1,0.2,0.5,0.4,lin amp=0.6
note 9 220Hz 2 vib=6,0.5,triangle trem=6,3,triangle wave=sawtooth amp=0.3
)";

const char* kSpatial = R"(# Left, centre and right sources, a passing source, reverberation
meta rate=44100 seed=6
note 0 440Hz 0.8 pos=-1,0.5 amp=0.5 adsr=0.02,0,1,0.1
note 1 440Hz 0.8 pos=0,1 amp=0.5 adsr=0.02,0,1,0.1
note 2 440Hz 0.8 pos=1,0.5 amp=0.5 adsr=0.02,0,1,0.1
doppler 3 440Hz 4 vs=10 y0=-20 z0=2 amp=0.5
post reverb first=0.1 total=1.9 decay=-60 tail=brown
post normalize peak=0.9
)";

std::string spectral_demo() {
    // One 64-sample period from harmonics 1..8 with 1/k magnitudes.
    const std::size_t n = 64;
    std::vector<std::complex<double>> c(n);
    for (std::size_t k = 1; k <= 8; ++k) {
        const double mag = static_cast<double>(n) / (2.0 * static_cast<double>(k));
        const double ph = k % 2 ? 0.0 : std::numbers::pi / 2;
        c[k] = std::polar(mag, ph);
        c[n - k] = std::conj(c[k]);
    }
    const auto period = spectral::reconstruct_real(Spectrum(SampleRate(), std::move(c)));
    std::string s = "# A period built from its spectrum, played at three pitches\nmeta rate=44100 seed=7\ntable partials";
    for (double v : period.samples()) s += ' ' + num(v / 2.0);
    s += "\nnote 0 220Hz 1 wave=partials amp=0.5 adsr=0.02,0,1,0.1\n";
    s += "note 1 330Hz 1 wave=partials amp=0.5 adsr=0.02,0,1,0.1\n";
    s += "note 2 440Hz 1 wave=partials amp=0.5 adsr=0.02,0,1,0.1\n";
    return s;
}

std::string theory_demo() {
    std::string s = "# Scale run in just intervals, equal-tempered triads and quarter tones\n"
                    "meta rate=44100 seed=8 tuning=just key=2\n";
    double t = 0.0;
    for (int d = 1; d <= 8; ++d, t += 0.25)
        s += "note " + num(t) + " ionian:" + std::to_string(d) + "@4 0.25 amp=0.4 adsr=0.01,0,1,0.05\n";
    const std::pair<ChordQuality, std::size_t> chords[] = {
        {ChordQuality::major, 0}, {ChordQuality::minor, 1}, {ChordQuality::diminished, 0}, {ChordQuality::augmented, 2}};
    for (const auto& [q, inv] : chords) {
        for (int off : theory::build_chord(q, Seventh::none, inv).offsets)
            s += "note " + num(t) + " eq12:" + std::to_string(62 + off) + " 0.75 amp=0.2 adsr=0.02,0.1,0.7,0.2\n";
        t += 0.75;
    }
    for (int q = 0; q <= 4; ++q, t += 0.3)
        s += "note " + num(t) + " eq24:" + std::to_string(138 + q) + " 0.3 amp=0.4 adsr=0.01,0,1,0.05\n";
    s += "note " + num(t) + " pyth:66 0.5 amp=0.3\nnote " + num(t) + " pyth:62 0.5 amp=0.3\n";
    return s;
}

std::string structure_demo() {
    std::string s = "# Hunt peal on three bells, then a motif and its transformations on a grid\n"
                    "meta rate=44100 seed=9 pulse=0.6\ngrid -1=3\n";
    const std::vector<std::string> bells{"ionian:5@4", "ionian:3@4", "ionian:1@4"};
    const auto rows = structure::cycle_sequence(structure::hunt_peal_generators(), std::vector<std::size_t>{0, 1, 2});
    std::size_t pulse = 0;
    for (const auto& row : rows) {
        for (std::size_t b = 0; b < row.size(); ++b)
            s += "note P(0:" + std::to_string(pulse) + ",-1:" + std::to_string(b) + ") " + bells[row[b]] +
                 " 1u-1 amp=0.4 adsr=0.005,0.05,0.5,0.05\n";
        ++pulse;
    }

    // Golden-ratio durations from a Lucas sequence.
    const auto lucas = structure::lucas_sequence(2, 1, 6);
    std::vector<MotifEvent> ev;
    double on = 0.0;
    const double freqs[] = {440.0, 493.8833012561241, 554.3652619537442, 659.2551138257398, 587.3295358348151,
                            493.8833012561241};
    for (std::size_t i = 0; i < 6; ++i) {
        const double d = 0.1 * lucas[i];
        ev.push_back({freqs[i], on, d, 0.4});
        on += d;
    }
    const Motif motif(ev);
    const Scale major = theory::make_scale("ionian");
    const std::vector<MotifTransform> chain{
        transform::Translation{0.0},   transform::Retrograde{},
        transform::TonalInversion{major, 440.0}, transform::Transposition{-5.0},
        transform::Rotation{2},        transform::Stretch{0.5}};
    double start = static_cast<double>(pulse) * 0.6 + 0.3;
    for (const auto& tr : chain) {
        const Motif m = structure::translate(structure::transform_motif(motif, tr), start);
        for (const auto& e : m.events())
            s += "note " + num(e.onset) + ' ' + hz(e.frequency) + ' ' + num(e.duration) + " amp=" + num(e.amplitude) +
                 " wave=triangle adsr=0.003,0.01,0.7,0.02\n";
        double end = start;
        for (const auto& e : m.events()) end = std::max(end, e.onset + e.duration);
        start = end + 0.3;
    }
    return s;
}

const char* kPiece = R"(# A short piece touching every stage of the renderer
meta rate=44100 seed=2024 pulse=0.5 tuning=eq12 key=9
grid -1=4 1=4
table soft 0 0.6 1 0.6 0 -0.6 -1 -0.6
note P(1:0,0:0) aeolian:1@3 2u0 wave=triangle amp=0.35 adsr=0.05,0.2,0.6,0.3
note P(1:0,0:2) aeolian:3@3 2u0 wave=triangle amp=0.35 adsr=0.05,0.2,0.6,0.3
note P(1:1,0:0) aeolian:5@3 2u0 wave=triangle amp=0.35 adsr=0.05,0.2,0.6,0.3
note P(1:1,0:2) aeolian:8@3 2u0 wave=soft amp=0.35 adsr=0.05,0.2,0.6,0.3 pos=0.5,1
note P(1:0,0:0) aeolian:5@4 1u0 amp=0.3 vib=5,0.3 adsr=0.02,0.1,0.7,0.1 pos=-0.7,1
note P(1:0,0:1,-1:2) aeolian:6@4 1u-1 amp=0.3 adsr=0.01,0.02,0.7,0.02
note P(1:0,0:2) aeolian:5@4 2u0 amp=0.3 trem=6,4 adsr=0.02,0.1,0.7,0.2
note P(1:1,0:0) eq12:76 1u0 glide=eq12:81 amp=0.3 adsr=0.02,0,1,0.1
note P(1:1,0:1) 880Hz 1u0 fm=220,110 amp=0.2 adsr=0.01,0.1,0.5,0.2
note P(1:1,0:2) aeolian:1@5 2u0 am=4,0.3 amp=0.3 adsr=0.02,0.1,0.7,0.4 pos=0.7,1
noise P(1:0,0:0) pink 4 amp=0.03
doppler 0.5 just:81 3 vs=15 y0=-20 z0=3 amp=0.1
post lowpass fc=0.2
post reverb first=0.08 total=1.2 decay=-60 tail=pink
post normalize peak=0.9
)";

} // namespace

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names{"core",       "oscillator", "spectral", "filters", "noise",
                                                "modulation", "spatial",    "theory",   "structure", "piece"};
    return names;
}

std::string demo_text(std::string_view name) {
    if (name == "core") return kCore;
    if (name == "oscillator") return kOscillator;
    if (name == "spectral") return spectral_demo();
    if (name == "filters") return kFilters;
    if (name == "noise") return kNoise;
    if (name == "modulation") return kModulation;
    if (name == "spatial") return kSpatial;
    if (name == "theory") return theory_demo();
    if (name == "structure") return structure_demo();
    if (name == "piece") return kPiece;
    throw InvalidArgument("unknown demo '" + std::string(name) + "'");
}

Score demo_score(std::string_view name) { return parse_score(demo_text(name)); }

} // namespace tonekit
