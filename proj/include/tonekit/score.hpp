#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tonekit/core.hpp"
#include "tonekit/filters.hpp"
#include "tonekit/modulation.hpp"
#include "tonekit/noise.hpp"
#include "tonekit/oscillator.hpp"
#include "tonekit/spatial.hpp"
#include "tonekit/structure.hpp"
#include "tonekit/theory.hpp"

namespace tonekit {

struct PitchHz {
    double hz;
};

// `steps` counted from the tuning's reference frequency.
struct PitchSteps {
    Tuning tuning;
    double steps;
};

// 1-based degree on a scale whose first element sounds at `tonic_hz`.
struct PitchDegree {
    Scale scale;
    int degree;
    double tonic_hz;
    TuningKind intervals = TuningKind::equal;
};

using PitchSource = std::variant<PitchHz, PitchSteps, PitchDegree>;

double resolve_pitch(const PitchSource& p);

struct VibratoSpec {
    double freq;
    double semitones;
    Shape shape = Shape::sine;
};

struct TremoloSpec {
    double freq;
    double db;
    Shape shape = Shape::sine;
};

struct FmSpec {
    double freq;
    double deviation_hz;
};

struct AmSpec {
    double freq;
    double alpha;
};

struct NoteSpec {
    PitchSource pitch = PitchHz{440.0};
    double duration = 1.0;
    double amplitude = 1.0;
    WaveTable table = build_wavetable(Shape::sine);
    std::string waveform = "sine";
    std::optional<PitchSource> glide_to;
    GlideMode glide_mode = GlideMode::exponential;
    std::optional<AdsrSpec> envelope;
    std::optional<VibratoSpec> vibrato;
    std::optional<TremoloSpec> tremolo;
    std::optional<FmSpec> fm;
    std::optional<AmSpec> am;
    std::optional<SourcePosition> position;
};

struct NoiseEvent {
    NoiseColor color = NoiseColor::white;
    double duration = 1.0;
    double amplitude = 1.0;
    double f_min = 15.0;
    std::optional<double> f_max;
    std::optional<LoudnessCurve> loudness_curve;
};

struct DopplerEvent {
    DopplerPath path;
    double duration = 1.0;
    double amplitude = 1.0;
    WaveTable table = build_wavetable(Shape::sine);
};

struct ScoreEvent {
    double onset = 0.0;
    std::variant<NoteSpec, NoiseEvent, DopplerEvent> body;
    // Source line, 0 when built in code.
    std::size_t line = 0;
};

struct FilterStage {
    FilterKind kind;
    double fc;
    std::optional<double> bw;
};

struct ReverbStage {
    ReverbSpec spec;
};

struct NormalizeStage {
    double peak = 0.9;
};

using PostStage = std::variant<FilterStage, ReverbStage, NormalizeStage>;

struct Score {
    SampleRate rate;
    RhythmGrid grid{1.0};
    std::uint64_t seed = 0;
    std::vector<ScoreEvent> events;
    std::vector<PostStage> post;
};

struct ParseOptions {
    SampleRate default_rate;
    // Directory for relative file references (loudness curves).
    std::string base_dir;
};

// Line-oriented text format; see README.
Score parse_score(std::string_view text, const ParseOptions& opts = {});
// JSON front-end over the same model.
Score parse_score_json(std::string_view text, const ParseOptions& opts = {});
Score load_score(const std::string& path, const ParseOptions& opts = {});

} // namespace tonekit
