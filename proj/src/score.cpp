#include "tonekit/score.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tonekit {

double resolve_pitch(const PitchSource& p) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PitchHz>) {
                if (!(v.hz > 0.0) || !std::isfinite(v.hz)) throw InvalidArgument("frequency must be > 0");
                return v.hz;
            } else if constexpr (std::is_same_v<T, PitchSteps>) {
                return theory::degree_frequency(v.tuning, v.steps);
            } else {
                if (v.degree < 1) throw InvalidArgument("scale degrees start at 1");
                const auto& off = v.scale.offsets();
                const auto n = static_cast<int>(off.size());
                double offset;
                if (v.scale.contour() || off.back() >= 12.0) {
                    if (v.degree > n)
                        throw InvalidArgument("degree " + std::to_string(v.degree) + " exceeds scale '" +
                                              v.scale.name() + "'");
                    offset = off[static_cast<std::size_t>(v.degree - 1)];
                } else {
                    const int q = (v.degree - 1) / n;
                    offset = off[static_cast<std::size_t>((v.degree - 1) % n)] + 12.0 * q;
                }
                if (v.intervals == TuningKind::equal) return v.tonic_hz * std::exp2(offset / 12.0);
                return theory::degree_frequency(Tuning{v.intervals, 12, v.tonic_hz}, offset);
            }
        },
        p);
}

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

// Error inside one line; the caller adds the location.
struct LineError {
    std::size_t column;
    std::string message;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw LineError{t.column, msg}; }

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

std::optional<double> to_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long long> to_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        out.emplace_back(s.substr(start, at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

bool ends_with_ci(std::string_view s, std::string_view suffix) {
    if (s.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[s.size() - suffix.size() + i])) != suffix[i]) return false;
    return true;
}

struct KeyValue {
    std::string key;
    std::string value;
    Token token;
};

class Parser {
public:
    Parser(const ParseOptions& opts) : opts_(opts) { score_.rate = opts.default_rate; }

    void line(const std::vector<Token>& t, std::size_t lineno) {
        if (t.empty()) return;
        const std::string& kind = t[0].text;
        if (kind == "meta") meta(t);
        else if (kind == "grid") grid(t);
        else if (kind == "table") table(t);
        else if (kind == "note") note(t, lineno);
        else if (kind == "noise") noise_event(t, lineno);
        else if (kind == "doppler") doppler(t, lineno);
        else if (kind == "post") post(t);
        else fail(t[0], "unknown directive '" + kind + "'");
    }

    Score finish() { return std::move(score_); }

private:
    double number(const Token& t, std::string_view text, const char* what) const {
        auto v = to_number(text);
        if (!v) fail(t, std::string("expected a number for ") + what + ", got '" + std::string(text) + "'");
        return *v;
    }
    double number(const Token& t, const char* what) const { return number(t, t.text, what); }

    double positive(const Token& t, std::string_view text, const char* what) const {
        const double v = number(t, text, what);
        if (!(v > 0.0)) fail(t, std::string(what) + " must be > 0");
        return v;
    }

    std::vector<double> numbers(const KeyValue& kv, std::size_t min, std::size_t max) const {
        std::vector<double> out;
        for (const auto& part : split(kv.value, ',')) out.push_back(number(kv.token, part, kv.key.c_str()));
        if (out.size() < min || out.size() > max)
            fail(kv.token, kv.key + " takes " + std::to_string(min) + (min == max ? "" : ".." + std::to_string(max)) +
                               " values");
        return out;
    }

    std::vector<KeyValue> options(const std::vector<Token>& t, std::size_t from,
                                  const std::set<std::string>& allowed) const {
        std::vector<KeyValue> out;
        std::set<std::string> seen;
        for (std::size_t i = from; i < t.size(); ++i) {
            const auto eq = t[i].text.find('=');
            if (eq == std::string::npos || eq == 0) fail(t[i], "expected key=value, got '" + t[i].text + "'");
            KeyValue kv{t[i].text.substr(0, eq), t[i].text.substr(eq + 1), t[i]};
            if (!allowed.count(kv.key)) fail(t[i], "unknown key '" + kv.key + "'");
            if (!seen.insert(kv.key).second) fail(t[i], "key '" + kv.key + "' given twice");
            if (kv.value.empty()) fail(t[i], "key '" + kv.key + "' has no value");
            out.push_back(std::move(kv));
        }
        return out;
    }

    void require_header(const Token& t) const {
        if (!score_.events.empty()) fail(t, "'" + t.text + "' must precede all events");
    }

    void meta(const std::vector<Token>& t) {
        require_header(t[0]);
        for (const auto& kv : options(t, 1, {"rate", "pulse", "tuning", "ref", "key", "seed"})) {
            if (kv.key == "rate") {
                auto v = to_integer(kv.value);
                if (!v || *v < 2 || *v > 1'000'000) fail(kv.token, "rate must be an integer in 2..1000000");
                score_.rate = SampleRate(static_cast<int>(*v));
            } else if (kv.key == "pulse") {
                pulse_ = positive(kv.token, kv.value, "pulse");
                score_.grid = RhythmGrid(pulse_, factors_);
            } else if (kv.key == "tuning") {
                if (kv.value == "eq12") intervals_ = TuningKind::equal;
                else if (kv.value == "just") intervals_ = TuningKind::just;
                else if (kv.value == "pythagorean" || kv.value == "pyth") intervals_ = TuningKind::pythagorean;
                else fail(kv.token, "unknown tuning '" + kv.value + "'");
            } else if (kv.key == "ref") {
                ref_hz_ = positive(kv.token, kv.value, "ref");
            } else if (kv.key == "key") {
                auto v = to_integer(kv.value);
                if (!v || *v < 0 || *v > 11) fail(kv.token, "key must be a pitch class 0..11");
                key_ = static_cast<int>(*v);
            } else {
                auto v = to_integer(kv.value);
                if (!v || *v < 0) fail(kv.token, "seed must be a non-negative integer");
                score_.seed = static_cast<std::uint64_t>(*v);
            }
        }
    }

    void grid(const std::vector<Token>& t) {
        require_header(t[0]);
        for (std::size_t i = 1; i < t.size(); ++i) {
            const auto parts = split(t[i].text, '=');
            if (parts.size() != 2) fail(t[i], "expected level=factor");
            auto level = to_integer(parts[0]);
            auto factor = to_integer(parts[1]);
            if (!level || *level == 0) fail(t[i], "grid level must be a non-zero integer");
            if (!factor || *factor < 2) fail(t[i], "grid factor must be an integer >= 2");
            factors_[static_cast<int>(*level)] = static_cast<int>(*factor);
        }
        score_.grid = RhythmGrid(pulse_, factors_);
    }

    void table(const std::vector<Token>& t) {
        if (t.size() < 4) fail(t[0], "table needs a name and at least two values");
        const std::string& name = t[1].text;
        try {
            parse_shape(name);
            fail(t[1], "table name '" + name + "' shadows a waveform");
        } catch (const InvalidArgument&) {
        }
        if (tables_.count(name)) fail(t[1], "table '" + name + "' defined twice");
        std::vector<double> v;
        for (std::size_t i = 2; i < t.size(); ++i) v.push_back(number(t[i], "table value"));
        tables_.emplace(name, from_sampled_period(std::move(v)));
    }

    WaveTable waveform(const Token& t, const std::string& name) const {
        if (auto it = tables_.find(name); it != tables_.end()) return it->second;
        try {
            const Shape s = parse_shape(name);
            if (s == Shape::sampled) throw InvalidArgument("");
            return build_wavetable(s);
        } catch (const InvalidArgument&) {
            fail(t, "unknown waveform or table '" + name + "'");
        }
    }

    Shape modulator_shape(const Token& t, const std::string& name) const {
        try {
            const Shape s = parse_shape(name);
            if (s != Shape::sampled) return s;
        } catch (const InvalidArgument&) {
        }
        fail(t, "unknown modulator shape '" + name + "'");
    }

    PitchSource pitch(const Token& t, std::string_view text) const {
        const std::string s(text);
        if (ends_with_ci(s, "hz")) return PitchHz{positive(t, std::string_view(s).substr(0, s.size() - 2), "frequency")};
        const auto colon = s.find(':');
        if (colon == std::string::npos) fail(t, "pitch '" + s + "' is not Hz, tuning:steps or scale:degree@octave");
        const std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
        if (head.size() > 2 && head.rfind("eq", 0) == 0) {
            auto n = to_integer(std::string_view(head).substr(2));
            if (!n || *n < 1 || *n > 1200) fail(t, "bad equal division '" + head + "'");
            return PitchSteps{Tuning::equal(static_cast<int>(*n), ref_hz_), number(t, tail, "steps")};
        }
        if (head == "just" || head == "pyth") {
            auto steps = to_integer(tail);
            if (!steps) fail(t, head + " steps must be integers");
            const Tuning tu = head == "just" ? Tuning::just(ref_hz_) : Tuning::pythagorean(ref_hz_);
            return PitchSteps{tu, static_cast<double>(*steps)};
        }
        std::optional<Scale> scale;
        try {
            scale = theory::make_scale(head);
        } catch (const InvalidArgument&) {
            fail(t, "unknown scale '" + head + "'");
        }
        const auto at = tail.find('@');
        auto degree = to_integer(std::string_view(tail).substr(0, at));
        if (!degree || *degree < 1) fail(t, "scale degree must be an integer >= 1");
        long long octave = 4;
        if (at != std::string::npos) {
            auto o = to_integer(std::string_view(tail).substr(at + 1));
            if (!o) fail(t, "octave must be an integer");
            octave = *o;
        }
        const double tonic = theory::degree_frequency(Tuning::equal(12, ref_hz_),
                                                      static_cast<double>(12 * (octave + 1) + key_));
        return PitchDegree{*scale, static_cast<int>(*degree), tonic, intervals_};
    }

    double checked_pitch(const Token& t, const PitchSource& p) const {
        double f;
        try {
            f = resolve_pitch(p);
        } catch (const InvalidArgument& e) {
            fail(t, e.what());
        }
        if (!(f < score_.rate.nyquist()))
            fail(t, "pitch " + std::to_string(f) + " Hz is not below Nyquist");
        return f;
    }

    double onset(const Token& t) const {
        const std::string& s = t.text;
        if (s.rfind("P(", 0) == 0) {
            if (s.back() != ')') fail(t, "grid address must end with ')'");
            std::vector<GridAddress> address;
            for (const auto& part : split(std::string_view(s).substr(2, s.size() - 3), ',')) {
                const auto c = part.find(':');
                auto level = to_integer(std::string_view(part).substr(0, c));
                auto index = c == std::string::npos ? std::nullopt : to_integer(std::string_view(part).substr(c + 1));
                if (!level || !index) fail(t, "grid coordinates are level:index pairs");
                address.push_back({static_cast<int>(*level), *index});
            }
            try {
                return structure::resolve_grid(score_.grid, address);
            } catch (const InvalidArgument& e) {
                fail(t, e.what());
            }
        }
        const double v = number(t, "onset");
        if (v < 0.0) fail(t, "onset must be >= 0");
        return v;
    }

    double duration(const Token& t) const {
        const auto u = t.text.find('u');
        if (u != std::string::npos) {
            const double n = positive(t, std::string_view(t.text).substr(0, u), "unit count");
            auto level = to_integer(std::string_view(t.text).substr(u + 1));
            if (!level) fail(t, "unit level must be an integer");
            return n * score_.grid.unit_duration(static_cast<int>(*level));
        }
        return positive(t, t.text, "duration");
    }

    double amplitude(const KeyValue& kv) const {
        if (ends_with_ci(kv.value, "db"))
            return db_to_gain(Decibels(number(kv.token, std::string_view(kv.value).substr(0, kv.value.size() - 2), "amp")));
        return number(kv.token, kv.value, "amp");
    }

    void note(const std::vector<Token>& t, std::size_t lineno) {
        if (t.size() < 4) fail(t[0], "note needs <onset> <pitch> <duration>");
        NoteSpec n;
        const double at = onset(t[1]);
        n.pitch = pitch(t[2], t[2].text);
        const double f = checked_pitch(t[2], n.pitch);
        n.duration = duration(t[3]);
        if (duration_to_samples(n.duration, score_.rate) == 0) fail(t[3], "duration is shorter than one sample");
        for (const auto& kv : options(t, 4, {"amp", "wave", "adsr", "vib", "trem", "fm", "am", "pos", "glide"})) {
            if (kv.key == "amp") {
                n.amplitude = amplitude(kv);
            } else if (kv.key == "wave") {
                n.table = waveform(kv.token, kv.value);
                n.waveform = kv.value;
            } else if (kv.key == "adsr") {
                auto parts = split(kv.value, ',');
                AdsrSpec a;
                if (parts.size() == 5) {
                    if (parts[4] == "lin") a.mode = EnvelopeMode::linear;
                    else if (parts[4] != "exp") fail(kv.token, "adsr mode must be lin or exp");
                    parts.pop_back();
                }
                if (parts.size() != 4) fail(kv.token, "adsr takes A,D,S,R[,lin|exp]");
                a.attack = number(kv.token, parts[0], "attack");
                a.decay = number(kv.token, parts[1], "decay");
                a.sustain = number(kv.token, parts[2], "sustain");
                a.release = number(kv.token, parts[3], "release");
                try {
                    modulation::adsr_envelope(a, duration_to_samples(n.duration, score_.rate), score_.rate);
                } catch (const InvalidArgument& e) {
                    fail(kv.token, e.what());
                }
                n.envelope = a;
            } else if (kv.key == "vib" || kv.key == "trem") {
                auto parts = split(kv.value, ',');
                Shape shape = Shape::sine;
                if (parts.size() == 3) {
                    shape = modulator_shape(kv.token, parts[2]);
                    parts.pop_back();
                }
                if (parts.size() != 2) fail(kv.token, kv.key + " takes freq,depth[,shape]");
                const double rate = positive(kv.token, parts[0], "modulator frequency");
                const double depth = number(kv.token, parts[1], "depth");
                if (kv.key == "vib") n.vibrato = VibratoSpec{rate, depth, shape};
                else n.tremolo = TremoloSpec{rate, depth, shape};
            } else if (kv.key == "fm") {
                const auto v = numbers(kv, 2, 2);
                if (!(v[0] > 0.0)) fail(kv.token, "fm modulator frequency must be > 0");
                n.fm = FmSpec{v[0], v[1]};
            } else if (kv.key == "am") {
                const auto v = numbers(kv, 2, 2);
                if (!(v[0] > 0.0) || v[1] < 0.0) fail(kv.token, "am takes freq > 0, alpha >= 0");
                n.am = AmSpec{v[0], v[1]};
            } else if (kv.key == "pos") {
                const auto v = numbers(kv, 2, 2);
                n.position = SourcePosition{v[0], v[1]};
            } else {
                auto parts = split(kv.value, ',');
                if (parts.size() == 2) {
                    if (parts[1] == "lin") n.glide_mode = GlideMode::linear;
                    else if (parts[1] != "exp") fail(kv.token, "glide mode must be lin or exp");
                } else if (parts.size() != 1) {
                    fail(kv.token, "glide takes <pitch>[,lin|exp]");
                }
                n.glide_to = pitch(kv.token, parts[0]);
                checked_pitch(kv.token, *n.glide_to);
            }
        }
        const int generators = n.glide_to.has_value() + n.vibrato.has_value() + n.fm.has_value();
        if (generators > 1) fail(t[0], "glide, vib and fm are mutually exclusive");
        (void)f;
        score_.events.push_back({at, std::move(n), lineno});
    }

    void noise_event(const std::vector<Token>& t, std::size_t lineno) {
        if (t.size() < 4) fail(t[0], "noise needs <onset> <color> <duration>");
        NoiseEvent n;
        const double at = onset(t[1]);
        try {
            n.color = parse_noise_color(t[2].text);
        } catch (const InvalidArgument&) {
            fail(t[2], "unknown noise color '" + t[2].text + "'");
        }
        n.duration = duration(t[3]);
        for (const auto& kv : options(t, 4, {"amp", "fmin", "fmax", "curve"})) {
            if (kv.key == "amp") n.amplitude = amplitude(kv);
            else if (kv.key == "fmin") n.f_min = positive(kv.token, kv.value, "fmin");
            else if (kv.key == "fmax") n.f_max = positive(kv.token, kv.value, "fmax");
            else {
                std::filesystem::path p(kv.value);
                if (p.is_relative() && !opts_.base_dir.empty()) p = std::filesystem::path(opts_.base_dir) / p;
                try {
                    n.loudness_curve = noise::load_loudness_curve(p.string());
                } catch (const std::exception& e) {
                    fail(kv.token, e.what());
                }
            }
        }
        if (n.color == NoiseColor::gray && !n.loudness_curve) fail(t[2], "gray noise needs curve=<file>");
        score_.events.push_back({at, std::move(n), lineno});
    }

    void doppler(const std::vector<Token>& t, std::size_t lineno) {
        if (t.size() < 4) fail(t[0], "doppler needs <onset> <pitch> <duration>");
        DopplerEvent d;
        const double at = onset(t[1]);
        d.path.f0 = checked_pitch(t[2], pitch(t[2], t[2].text));
        d.duration = duration(t[3]);
        for (const auto& kv : options(t, 4, {"vs", "vr", "y0", "z0", "amp", "wave"})) {
            if (kv.key == "vs") d.path.v_source = number(kv.token, kv.value, "vs");
            else if (kv.key == "vr") d.path.v_receiver = number(kv.token, kv.value, "vr");
            else if (kv.key == "y0") d.path.y0 = number(kv.token, kv.value, "y0");
            else if (kv.key == "z0") d.path.z0 = positive(kv.token, kv.value, "z0");
            else if (kv.key == "amp") d.amplitude = amplitude(kv);
            else d.table = waveform(kv.token, kv.value);
        }
        score_.events.push_back({at, std::move(d), lineno});
    }

    void post(const std::vector<Token>& t) {
        if (t.size() < 2) fail(t[0], "post needs a stage name");
        const std::string& kind = t[1].text;
        if (kind == "normalize") {
            NormalizeStage s;
            for (const auto& kv : options(t, 2, {"peak"})) s.peak = positive(kv.token, kv.value, "peak");
            score_.post.push_back(s);
        } else if (kind == "reverb") {
            ReverbStage s;
            for (const auto& kv : options(t, 2, {"first", "total", "decay", "tail"})) {
                if (kv.key == "first") s.spec.first_period = positive(kv.token, kv.value, "first");
                else if (kv.key == "total") s.spec.total = positive(kv.token, kv.value, "total");
                else if (kv.key == "decay") {
                    std::string v = kv.value;
                    if (ends_with_ci(v, "db")) v.resize(v.size() - 2);
                    s.spec.decay = Decibels(number(kv.token, v, "decay"));
                } else {
                    try {
                        s.spec.tail = parse_noise_color(kv.value);
                    } catch (const InvalidArgument&) {
                        fail(kv.token, "unknown noise color '" + kv.value + "'");
                    }
                }
            }
            score_.post.push_back(s);
        } else {
            FilterStage s{};
            try {
                s.kind = parse_filter_kind(kind);
            } catch (const InvalidArgument&) {
                fail(t[1], "unknown post stage '" + kind + "'");
            }
            bool has_fc = false;
            for (const auto& kv : options(t, 2, {"fc", "bw"})) {
                if (kv.key == "fc") {
                    s.fc = positive(kv.token, kv.value, "fc");
                    has_fc = true;
                } else {
                    s.bw = positive(kv.token, kv.value, "bw");
                }
            }
            if (!has_fc) fail(t[1], "filter needs fc=");
            try {
                filters::design_iir(s.kind, s.fc, s.bw);
            } catch (const InvalidArgument& e) {
                fail(t[1], e.what());
            }
            score_.post.push_back(s);
        }
    }

    ParseOptions opts_;
    Score score_;
    double pulse_ = 1.0;
    std::map<int, int> factors_;
    TuningKind intervals_ = TuningKind::equal;
    double ref_hz_ = 440.0 * std::exp2(-69.0 / 12.0);
    int key_ = 0;
    std::map<std::string, WaveTable> tables_;
};

std::string json_scalar(const nlohmann::json& v, const std::string& where) {
    std::string s;
    if (v.is_string()) s = v.get<std::string>();
    else if (v.is_number()) s = v.dump();
    else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += json_scalar(v[i], where);
        }
        return s;
    } else {
        throw ParseError(where + ": expected a string, number or array", 0, 0);
    }
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
            throw ParseError(where + ": value must not contain spaces or '#'", 0, 0);
    return s;
}

} // namespace

Score parse_score(std::string_view text, const ParseOptions& opts) {
    Parser p(opts);
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++lineno;
        try {
            p.line(tokenize(line), lineno);
        } catch (const LineError& e) {
            throw ParseError("line " + std::to_string(lineno) + ", column " + std::to_string(e.column) + ": " +
                                 e.message,
                             lineno, e.column);
        }
        start = end + 1;
    }
    return p.finish();
}

Score parse_score_json(std::string_view text, const ParseOptions& opts) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError::at_offset(e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("score document must be a JSON object", 0, 0);

    // Each JSON element becomes one text line; errors name the element.
    std::vector<std::pair<std::string, std::string>> lines;
    auto pairs = [](const nlohmann::json& obj, const std::string& where, std::initializer_list<const char*> skip) {
        std::string s;
        for (const auto& [k, v] : obj.items()) {
            if (std::find_if(skip.begin(), skip.end(), [&](const char* x) { return k == x; }) != skip.end()) continue;
            s += ' ' + k + '=' + json_scalar(v, where + "." + k);
        }
        return s;
    };
    for (const auto& [k, v] : doc.items())
        if (k != "meta" && k != "grid" && k != "tables" && k != "events" && k != "post")
            throw ParseError("unknown top-level key '" + k + "'", 0, 0);
    if (doc.contains("meta")) lines.push_back({"meta" + pairs(doc["meta"], "meta", {}), "meta"});
    if (doc.contains("grid")) lines.push_back({"grid" + pairs(doc["grid"], "grid", {}), "grid"});
    if (doc.contains("tables")) {
        for (const auto& [name, values] : doc["tables"].items()) {
            const std::string where = "tables." + name;
            if (!values.is_array()) throw ParseError(where + ": expected an array", 0, 0);
            std::string s = "table " + name;
            for (const auto& x : values) s += ' ' + json_scalar(x, where);
            lines.push_back({s, where});
        }
    }
    if (doc.contains("events")) {
        const auto& ev = doc["events"];
        if (!ev.is_array()) throw ParseError("events: expected an array", 0, 0);
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const std::string where = "events[" + std::to_string(i) + "]";
            const auto& e = ev[i];
            if (!e.is_object() || !e.contains("type")) throw ParseError(where + ": needs a \"type\"", 0, 0);
            const std::string type = json_scalar(e["type"], where + ".type");
            const char* second = type == "noise" ? "color" : "pitch";
            for (const char* k : {"onset", second, "dur"})
                if (!e.contains(k)) throw ParseError(where + ": missing \"" + std::string(k) + "\"", 0, 0);
            std::string s = type + ' ' + json_scalar(e["onset"], where) + ' ' + json_scalar(e[second], where) + ' ' +
                            json_scalar(e["dur"], where);
            s += pairs(e, where, {"type", "onset", second, "dur"});
            lines.push_back({s, where});
        }
    }
    if (doc.contains("post")) {
        const auto& post = doc["post"];
        if (!post.is_array()) throw ParseError("post: expected an array", 0, 0);
        for (std::size_t i = 0; i < post.size(); ++i) {
            const std::string where = "post[" + std::to_string(i) + "]";
            if (!post[i].is_object() || !post[i].contains("type")) throw ParseError(where + ": needs a \"type\"", 0, 0);
            lines.push_back({"post " + json_scalar(post[i]["type"], where) + pairs(post[i], where, {"type"}), where});
        }
    }

    std::string joined;
    for (const auto& l : lines) joined += l.first + '\n';
    try {
        Score s = parse_score(joined, opts);
        for (auto& e : s.events) e.line = 0;
        return s;
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        const auto colon = msg.find(": ");
        throw ParseError(lines[e.line() - 1].second + ": " + (colon == std::string::npos ? msg : msg.substr(colon + 2)),
                         0, 0);
    }
}

Score load_score(const std::string& path, const ParseOptions& opts) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    ParseOptions o = opts;
    if (o.base_dir.empty()) o.base_dir = std::filesystem::path(path).parent_path().string();
    const std::string text = ss.str();
    if (std::filesystem::path(path).extension() == ".json") return parse_score_json(text, o);
    return parse_score(text, o);
}

} // namespace tonekit
