#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tonekit/demos.hpp"
#include "tonekit/noise.hpp"
#include "tonekit/render.hpp"
#include "tonekit/spectral.hpp"
#include "tonekit/wav.hpp"

using namespace tonekit;

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;

SampleRate default_rate() {
    const char* env = std::getenv("TONEKIT_RATE");
    if (!env || !*env) return SampleRate();
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 2 || v > 1'000'000) throw InvalidArgument("TONEKIT_RATE must be an integer sample rate");
    return SampleRate(static_cast<int>(v));
}

void write_output(const SampleBuffer& buf, const std::string& path, nlohmann::json manifest) {
    const WavFile info = write_wav(buf, path);
    if (info.clipped > 0) std::cerr << "warning: " << info.clipped << " samples clipped\n";
    manifest["tool"] = "tonekit";
    manifest["version"] = "0.1.0";
    manifest["output"] = path;
    manifest["rate"] = info.rate.hz();
    manifest["channels"] = info.channels;
    manifest["frames"] = info.frames;
    manifest["clipped"] = info.clipped;
    std::ofstream f(path + ".json");
    if (!f) throw IoError("cannot write manifest '" + path + ".json'");
    f << manifest.dump(2) << '\n';
}

nlohmann::json score_manifest(const std::string& command, const Score& s) {
    return {{"command", command}, {"seed", s.seed}, {"rng", std::string(noise::kRngAlgorithm)}};
}

struct Analysis {
    double fundamental = NAN;
    std::optional<double> slope;
    double power_db = -INFINITY;
    double peak = 0.0;
};

Analysis analyze(const SampleBuffer& buf) {
    Analysis a;
    a.peak = peak(buf);
    double p = 0.0;
    for (double v : power(buf)) p += v;
    p /= static_cast<double>(buf.channel_count());
    if (p > 0.0) a.power_db = 10.0 * std::log10(p);
    if (buf.frames() < 4 || p == 0.0) return a;

    std::vector<double> mono(buf.frames(), 0.0);
    for (std::size_t c = 0; c < buf.channel_count(); ++c)
        for (std::size_t i = 0; i < mono.size(); ++i) mono[i] += buf.channel(c)[i] / static_cast<double>(buf.channel_count());
    const auto spec = spectral::forward(SampleBuffer::mono(buf.rate(), std::move(mono)));
    a.fundamental = spectral::peak_frequency(spec);
    const double lo = 100.0, hi = std::min(10000.0, buf.rate().nyquist());
    if (hi >= 4.0 * lo) {
        try {
            a.slope = spectral::slope_db_per_octave(spec, lo, hi);
        } catch (const std::exception&) {
        }
    }
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sample-domain synthesis and analysis"};
    app.require_subcommand(1);

    std::string out;
    std::string score_path;
    auto* render_cmd = app.add_subcommand("render", "Render a score file (.score or .json) to WAV");
    render_cmd->add_option("score", score_path, "Score file")->required();
    render_cmd->add_option("-o,--output", out, "Output WAV")->required();

    double freq = 441.0, dur = 1.0, amp = 1.0;
    std::string shape = "sine", adsr_text, vib_text, trem_text;
    std::optional<int> rate_flag;
    auto* synth_cmd = app.add_subcommand("synth", "Render one note");
    synth_cmd->add_option("--freq", freq, "Frequency in Hz")->required();
    synth_cmd->add_option("--dur", dur, "Duration in seconds")->required();
    synth_cmd->add_option("--shape", shape, "sine, sawtooth, triangle or square");
    synth_cmd->add_option("--amp", amp, "Linear amplitude");
    synth_cmd->add_option("--adsr", adsr_text, "A,D,S,R[,lin|exp]");
    synth_cmd->add_option("--vibrato", vib_text, "freq,semitones[,shape]");
    synth_cmd->add_option("--tremolo", trem_text, "freq,dB[,shape]");
    synth_cmd->add_option("--rate", rate_flag, "Sample rate");
    synth_cmd->add_option("-o,--output", out, "Output WAV")->required();

    std::string color = "white";
    double seconds = 1.0, peak_level = 0.9, fmin = 15.0;
    std::optional<double> fmax;
    std::uint64_t seed = 0;
    std::string curve_path;
    auto* noise_cmd = app.add_subcommand("noise", "Render colored noise");
    noise_cmd->add_option("--color", color, "white, pink, brown, blue, violet, black or gray");
    noise_cmd->add_option("--seconds", seconds, "Duration in seconds");
    noise_cmd->add_option("--seed", seed, "RNG seed");
    noise_cmd->add_option("--peak", peak_level, "Peak level of the output");
    noise_cmd->add_option("--fmin", fmin, "Lower band edge in Hz");
    noise_cmd->add_option("--fmax", fmax, "Upper band edge in Hz (blue, violet)");
    noise_cmd->add_option("--curve", curve_path, "Equal-loudness CSV for gray noise");
    noise_cmd->add_option("--rate", rate_flag, "Sample rate");
    noise_cmd->add_option("-o,--output", out, "Output WAV")->required();

    std::string wav_path;
    bool as_json = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Report fundamental, spectral slope and power of a WAV file");
    analyze_cmd->add_option("wav", wav_path, "Input WAV")->required();
    analyze_cmd->add_flag("--json", as_json, "Machine-readable output");

    std::string demo_name;
    bool list = false, print = false;
    auto* demo_cmd = app.add_subcommand("demo", "Render a built-in showcase score");
    demo_cmd->add_option("name", demo_name, "Demo name");
    demo_cmd->add_option("-o,--output", out, "Output WAV");
    demo_cmd->add_flag("--list", list, "List demo names");
    demo_cmd->add_flag("--print", print, "Print the score text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*render_cmd) {
            ParseOptions opts;
            opts.default_rate = default_rate();
            const Score s = load_score(score_path, opts);
            write_output(render(s), out, score_manifest("render " + score_path, s));
        } else if (*synth_cmd) {
            const SampleRate rate = rate_flag ? SampleRate(*rate_flag) : default_rate();
            std::string text = "meta rate=" + std::to_string(rate.hz()) + "\nnote 0 " + nlohmann::json(freq).dump() +
                               "Hz " + nlohmann::json(dur).dump() + " wave=" + shape + " amp=" + nlohmann::json(amp).dump();
            if (!adsr_text.empty()) text += " adsr=" + adsr_text;
            if (!vib_text.empty()) text += " vib=" + vib_text;
            if (!trem_text.empty()) text += " trem=" + trem_text;
            const Score s = parse_score(text + "\n");
            write_output(render(s), out, score_manifest("synth", s));
        } else if (*noise_cmd) {
            NoiseSpec spec;
            spec.color = parse_noise_color(color);
            spec.rate = rate_flag ? SampleRate(*rate_flag) : default_rate();
            spec.length = duration_to_samples(seconds, spec.rate);
            spec.seed = seed;
            spec.f_min = fmin;
            spec.f_max = fmax;
            if (!curve_path.empty()) spec.loudness_curve = noise::load_loudness_curve(curve_path);
            auto buf = noise::generate(spec);
            if (peak(buf) > 0.0) buf = normalize(buf, peak_level);
            write_output(buf, out,
                         {{"command", "noise"},
                          {"color", std::string(to_string(spec.color))},
                          {"seed", seed},
                          {"rng", std::string(noise::kRngAlgorithm)},
                          {"peak", peak_level}});
        } else if (*analyze_cmd) {
            const auto buf = read_wav(wav_path);
            const auto a = analyze(buf);
            if (as_json) {
                nlohmann::json j{{"rate", buf.rate().hz()},
                                 {"channels", buf.channel_count()},
                                 {"frames", buf.frames()},
                                 {"peak", a.peak}};
                j["fundamental_hz"] = std::isfinite(a.fundamental) ? nlohmann::json(a.fundamental) : nlohmann::json();
                j["slope_db_per_octave"] = a.slope ? nlohmann::json(*a.slope) : nlohmann::json();
                j["power_db"] = std::isfinite(a.power_db) ? nlohmann::json(a.power_db) : nlohmann::json();
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "rate: " << buf.rate().hz() << "\nchannels: " << buf.channel_count()
                          << "\nframes: " << buf.frames() << "\nduration_s: " << buf.seconds()
                          << "\nfundamental_hz: " << a.fundamental << "\nslope_db_per_octave: ";
                if (a.slope) std::cout << *a.slope << " (100 Hz to " << std::min(10000.0, buf.rate().nyquist()) << " Hz)";
                else std::cout << "n/a";
                std::cout << "\npower_db: " << a.power_db << "\npeak: " << a.peak << '\n';
            }
        } else if (*demo_cmd) {
            if (list) {
                for (const auto& n : demo_names()) std::cout << n << '\n';
                return 0;
            }
            if (demo_name.empty()) {
                std::cerr << "demo: a name is required (see --list)\n";
                return kUsage;
            }
            if (print) {
                std::cout << demo_text(demo_name);
                return 0;
            }
            if (out.empty()) {
                std::cerr << "demo: --output is required\n";
                return kUsage;
            }
            const Score s = demo_score(demo_name);
            write_output(render(s), out, score_manifest("demo " + demo_name, s));
        }
    } catch (const std::exception& e) {
        std::cerr << "tonekit: " << e.what() << '\n';
        return kDataError;
    }
    return 0;
}
