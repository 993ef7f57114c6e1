#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tonekit/error.hpp"

namespace tonekit {

enum class TuningKind { equal, just, pythagorean };

struct Tuning {
    TuningKind kind = TuningKind::equal;
    int steps_per_octave = 12;
    double reference_hz = 440.0;

    static Tuning equal(int steps = 12, double ref = 440.0) { return {TuningKind::equal, steps, ref}; }
    static Tuning just(double ref = 440.0) { return {TuningKind::just, 12, ref}; }
    static Tuning pythagorean(double ref = 440.0) { return {TuningKind::pythagorean, 12, ref}; }
};

// Octave-relative pitch sets in semitones. Ascending scales are strictly
// increasing; a contour scale (melodic minor) lists its up-down path.
class Scale {
public:
    Scale(std::string name, std::vector<double> offsets, bool contour = false);

    const std::string& name() const noexcept { return name_; }
    const std::vector<double>& offsets() const noexcept { return offsets_; }
    std::size_t size() const noexcept { return offsets_.size(); }
    bool contour() const noexcept { return contour_; }

private:
    std::string name_;
    std::vector<double> offsets_;
    bool contour_;
};

enum class IntervalClass {
    perfect_consonance,
    imperfect_consonance,
    harsh_dissonance,
    mild_dissonance,
    contextual,
    tritone,
};

std::string_view to_string(IntervalClass c);

enum class ChordQuality { major, minor, diminished, augmented };
enum class Seventh { none, minor, major };

// Semitone offsets from the root, ascending. Root position starts at 0;
// inversions keep the raised members, e.g. {4, 7, 12}.
struct Chord {
    std::vector<int> offsets;
};

enum class HarmonicFunction { tonic, dominant, subdominant };
enum class Mode { major, minor };

// Degree 1..7 with an accidental (+1 sharp, -1 flat).
struct ScaleDegree {
    int degree;
    int alteration = 0;
    friend bool operator==(const ScaleDegree&, const ScaleDegree&) = default;
};
using DegreeTriad = std::array<ScaleDegree, 3>;

struct FunctionalRelatives {
    DegreeTriad main;
    DegreeTriad relative;
    DegreeTriad counter_relative;
};

enum class Motion { direct, parallel, oblique, contrary, stationary };

std::string_view to_string(Motion m);

enum class ViolationKind { direct_to_perfect, parallel_run, unprepared_dissonance };

struct Violation {
    ViolationKind kind;
    std::size_t index;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(ViolationKind k);

namespace theory {

// Twelve ratios of the octave, step 0 to 11.
const std::array<double, 12>& just_ratios();
const std::array<double, 12>& pythagorean_ratios();
inline constexpr double kPythagoreanDiminishedFifth = 1024.0 / 729.0;

double degree_frequency(const Tuning& t, double steps);
double cents(double ratio);

// Pitch numbers with a reference pitch/frequency pair (69 -> 440 Hz by default).
double pitch_to_frequency(double pitch, double ref_pitch = 69.0, double ref_hz = 440.0);
double frequency_to_pitch(double hz, double ref_pitch = 69.0, double ref_hz = 440.0);

IntervalClass classify_interval(int semitones);
// Conventional name of the reduced interval ("P1", "m2", ... "P8").
std::string interval_name(int semitones);
int invert_interval(int semitones);
// Degree-number inversion: the two numbers sum to 9.
int invert_interval_degree(int degree);

Scale make_scale(std::string_view name);
const std::vector<std::string>& scale_names();
Scale diatonic_mode_kappa(int kappa);
inline constexpr std::array<int, 7> kDiatonicSteps{2, 2, 1, 2, 2, 2, 1};

Chord build_chord(ChordQuality quality, Seventh seventh = Seventh::none, std::size_t inversion = 0,
                  const std::vector<int>& spread = {});

FunctionalRelatives functional_relatives(HarmonicFunction function, Mode mode = Mode::major);

Motion classify_motion(double v1_from, double v1_to, double v2_from, double v2_to);

// Voices are pitch numbers (semitones). Flags: direct motion into a perfect
// consonance, more than three consecutive parallel imperfect consonances,
// and dissonances whose moving voice does not enter and leave by step.
std::vector<Violation> check_counterpoint(const std::vector<int>& upper, const std::vector<int>& lower);

} // namespace theory
} // namespace tonekit
