#include "tonekit/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace tonekit {

Scale::Scale(std::string name, std::vector<double> offsets, bool contour)
    : name_(std::move(name)), offsets_(std::move(offsets)), contour_(contour) {
    if (offsets_.empty() || offsets_.front() != 0.0)
        throw InvalidArgument("scale '" + name_ + "' must start at offset 0");
    for (double o : offsets_)
        if (!std::isfinite(o)) throw InvalidArgument("scale offsets must be finite");
    if (!contour_)
        for (std::size_t i = 1; i < offsets_.size(); ++i)
            if (!(offsets_[i] > offsets_[i - 1]))
                throw InvalidArgument("scale '" + name_ + "' offsets must be strictly increasing");
}

std::string_view to_string(IntervalClass c) {
    switch (c) {
    case IntervalClass::perfect_consonance: return "perfect consonance";
    case IntervalClass::imperfect_consonance: return "imperfect consonance";
    case IntervalClass::harsh_dissonance: return "harsh dissonance";
    case IntervalClass::mild_dissonance: return "mild dissonance";
    case IntervalClass::contextual: return "contextual";
    case IntervalClass::tritone: return "tritone";
    }
    return "?";
}

std::string_view to_string(Motion m) {
    switch (m) {
    case Motion::direct: return "direct";
    case Motion::parallel: return "parallel";
    case Motion::oblique: return "oblique";
    case Motion::contrary: return "contrary";
    case Motion::stationary: return "stationary";
    }
    return "?";
}

std::string_view to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::direct_to_perfect: return "direct motion into perfect consonance";
    case ViolationKind::parallel_run: return "more than three parallel imperfect consonances";
    case ViolationKind::unprepared_dissonance: return "dissonance not entered and left by step";
    }
    return "?";
}

namespace theory {

const std::array<double, 12>& just_ratios() {
    static const std::array<double, 12> r{1.0,       16.0 / 15, 9.0 / 8, 6.0 / 5, 5.0 / 4, 4.0 / 3,
                                          45.0 / 32, 3.0 / 2,   8.0 / 5, 5.0 / 3, 16.0 / 9, 15.0 / 8};
    return r;
}

const std::array<double, 12>& pythagorean_ratios() {
    static const std::array<double, 12> r{1.0,         256.0 / 243, 9.0 / 8,    32.0 / 27,
                                          81.0 / 64,   4.0 / 3,     729.0 / 512, 3.0 / 2,
                                          128.0 / 81,  27.0 / 16,   16.0 / 9,    243.0 / 128};
    return r;
}

double degree_frequency(const Tuning& t, double steps) {
    if (!(t.reference_hz > 0.0) || !std::isfinite(t.reference_hz))
        throw InvalidArgument("tuning reference must be > 0");
    if (!std::isfinite(steps)) throw InvalidArgument("steps must be finite");
    if (t.kind == TuningKind::equal) {
        if (t.steps_per_octave < 1) throw InvalidArgument("equal tuning needs >= 1 step per octave");
        const double n = t.steps_per_octave;
        const double octave = std::floor(steps / n);
        const double rem = steps - octave * n;
        return std::ldexp(t.reference_hz * std::exp2(rem / n), static_cast<int>(octave));
    }
    if (steps != std::round(steps))
        throw InvalidArgument("just and Pythagorean tunings need integer steps");
    const auto s = static_cast<long long>(steps);
    const long long octave = s >= 0 ? s / 12 : -((11 - s) / 12);
    const auto idx = static_cast<std::size_t>(s - octave * 12);
    const auto& ratios = t.kind == TuningKind::just ? just_ratios() : pythagorean_ratios();
    return std::ldexp(t.reference_hz * ratios[idx], static_cast<int>(octave));
}

double cents(double ratio) {
    if (!(ratio > 0.0)) throw InvalidArgument("ratio must be > 0");
    return 1200.0 * std::log2(ratio);
}

double pitch_to_frequency(double pitch, double ref_pitch, double ref_hz) {
    return ref_hz * std::exp2((pitch - ref_pitch) / 12.0);
}

double frequency_to_pitch(double hz, double ref_pitch, double ref_hz) {
    if (!(hz > 0.0)) throw InvalidArgument("frequency must be > 0");
    return ref_pitch + 12.0 * std::log2(hz / ref_hz);
}

IntervalClass classify_interval(int semitones) {
    if (semitones < 0) throw InvalidArgument("interval must be >= 0 semitones");
    switch (semitones % 12) {
    case 0:
    case 7: return IntervalClass::perfect_consonance;
    case 3:
    case 4:
    case 8:
    case 9: return IntervalClass::imperfect_consonance;
    case 1:
    case 11: return IntervalClass::harsh_dissonance;
    case 2:
    case 10: return IntervalClass::mild_dissonance;
    case 5: return IntervalClass::contextual;
    default: return IntervalClass::tritone;
    }
}

std::string interval_name(int semitones) {
    if (semitones < 0) throw InvalidArgument("interval must be >= 0 semitones");
    static const char* names[] = {"P1", "m2", "M2", "m3", "M3", "P4", "TT", "P5", "m6", "M6", "m7", "M7"};
    if (semitones > 0 && semitones % 12 == 0) return "P8";
    return names[semitones % 12];
}

int invert_interval(int semitones) {
    if (semitones < 0 || semitones > 12) throw InvalidArgument("interval inversion needs 0..12 semitones");
    return 12 - semitones;
}

int invert_interval_degree(int degree) {
    if (degree < 1 || degree > 8) throw InvalidArgument("interval degree must be 1..8");
    return 9 - degree;
}

const std::vector<std::string>& scale_names() {
    static const std::vector<std::string> names{
        "chromatic", "wholetone", "minor-thirds", "major-thirds",   "tritones",
        "ionian",    "dorian",    "phrygian",     "lydian",         "mixolydian",
        "aeolian",   "locrian",   "harmonic-minor", "melodic-minor", "harmonic-series"};
    return names;
}

Scale make_scale(std::string_view name) {
    static const std::map<std::string, std::vector<double>, std::less<>> sets{
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
        // Harmonics 1..20 as equal-tempered semitones plus cent corrections.
        {"harmonic-series",
         {0, 12, 19 + 0.02, 24, 28 - 0.14, 31 + 0.2, 34 - 0.31, 36, 38 + 0.04, 40 - 0.14, 42 - 0.49,
          43 + 0.02, 44 + 0.41, 46 - 0.31, 47 - 0.12, 48, 49 + 0.05, 50 + 0.04, 51 - 0.02, 52 - 0.14}},
    };
    auto it = sets.find(name);
    if (it == sets.end()) throw InvalidArgument("unknown scale '" + std::string(name) + "'");
    return Scale(it->first, it->second, it->first == "melodic-minor");
}

Scale diatonic_mode_kappa(int kappa) {
    if (kappa < 0 || kappa > 6) throw InvalidArgument("kappa must lie in 0..6");
    std::vector<double> e{0.0};
    for (int i = 1; i < 7; ++i) e.push_back(kDiatonicSteps[static_cast<std::size_t>((i + kappa) % 7)] + e.back());
    for (const char* mode : {"ionian", "dorian", "phrygian", "lydian", "mixolydian", "aeolian", "locrian"}) {
        auto s = make_scale(mode);
        if (s.offsets() == e) return s;
    }
    return Scale("kappa-" + std::to_string(kappa), e);
}

Chord build_chord(ChordQuality quality, Seventh seventh, std::size_t inversion,
                  const std::vector<int>& spread) {
    std::vector<int> o;
    switch (quality) {
    case ChordQuality::major: o = {0, 4, 7}; break;
    case ChordQuality::minor: o = {0, 3, 7}; break;
    case ChordQuality::diminished: o = {0, 3, 6}; break;
    case ChordQuality::augmented: o = {0, 4, 8}; break;
    }
    if (seventh == Seventh::minor) o.push_back(10);
    if (seventh == Seventh::major) o.push_back(11);
    if (inversion >= o.size()) throw InvalidArgument("inversion must be smaller than the chord size");
    for (std::size_t i = 0; i < inversion; ++i) o[i] += 12;
    std::sort(o.begin(), o.end());
    if (spread.size() > o.size()) throw InvalidArgument("spread has more entries than chord members");
    for (std::size_t i = 0; i < spread.size(); ++i) o[i] += 12 * spread[i];
    std::sort(o.begin(), o.end());
    return {o};
}

FunctionalRelatives functional_relatives(HarmonicFunction function, Mode mode) {
    if (mode != Mode::major) throw InvalidArgument("functional relatives are tabulated for major mode only");
    switch (function) {
    case HarmonicFunction::tonic:
        return {{{{1}, {3}, {5}}}, {{{6}, {1}, {3}}}, {{{3}, {5}, {7}}}};
    case HarmonicFunction::dominant:
        return {{{{5}, {7}, {2}}}, {{{3}, {5}, {7}}}, {{{7}, {2}, {4, +1}}}};
    case HarmonicFunction::subdominant:
        return {{{{4}, {6}, {1}}}, {{{2}, {4}, {6}}}, {{{6}, {1}, {3}}}};
    }
    throw InvalidArgument("unknown harmonic function");
}

Motion classify_motion(double v1_from, double v1_to, double v2_from, double v2_to) {
    const double d1 = v1_to - v1_from;
    const double d2 = v2_to - v2_from;
    if (d1 == 0.0 && d2 == 0.0) return Motion::stationary;
    if (d1 == 0.0 || d2 == 0.0) return Motion::oblique;
    if ((d1 > 0.0) != (d2 > 0.0)) return Motion::contrary;
    return d1 == d2 ? Motion::parallel : Motion::direct;
}

std::vector<Violation> check_counterpoint(const std::vector<int>& upper, const std::vector<int>& lower) {
    if (upper.size() != lower.size()) throw InvalidArgument("voices must have equal length");
    const std::size_t n = upper.size();
    auto vclass = [&](std::size_t i) { return classify_interval(std::abs(upper[i] - lower[i])); };
    auto consonant = [&](std::size_t i) {
        const auto c = vclass(i);
        return c == IntervalClass::perfect_consonance || c == IntervalClass::imperfect_consonance;
    };
    auto dissonant = [&](std::size_t i) {
        const auto c = vclass(i);
        return c == IntervalClass::harsh_dissonance || c == IntervalClass::mild_dissonance ||
               c == IntervalClass::tritone;
    };
    auto step = [](int a, int b) { return std::abs(a - b) == 1 || std::abs(a - b) == 2; };

    std::vector<Violation> out;
    std::size_t run = n > 0 && vclass(0) == IntervalClass::imperfect_consonance ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i) {
        const auto m = classify_motion(upper[i - 1], upper[i], lower[i - 1], lower[i]);
        const auto c = vclass(i);
        if ((m == Motion::direct || m == Motion::parallel) && c == IntervalClass::perfect_consonance)
            out.push_back({ViolationKind::direct_to_perfect, i});

        if (c != IntervalClass::imperfect_consonance)
            run = 0;
        else if (m == Motion::parallel && run > 0)
            ++run;
        else
            run = 1;
        if (run > 3) out.push_back({ViolationKind::parallel_run, i});
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!dissonant(i)) continue;
        bool ok = i > 0 && i + 1 < n && consonant(i - 1) && consonant(i + 1);
        if (ok) {
            bool moved = false;
            for (const auto* v : {&upper, &lower}) {
                const auto& voice = *v;
                if (voice[i] == voice[i - 1]) continue;
                moved = true;
                ok = ok && step(voice[i - 1], voice[i]) && step(voice[i], voice[i + 1]);
            }
            ok = ok && moved;
        }
        if (!ok) out.push_back({ViolationKind::unprepared_dissonance, i});
    }
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return a.index != b.index ? a.index < b.index : a.kind < b.kind;
    });
    return out;
}

} // namespace theory
} // namespace tonekit
