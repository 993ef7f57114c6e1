#include "tonekit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fft.hpp"

namespace tonekit {

namespace {

void validate(const NoiseSpec& s) {
    if (s.length < 2) throw InvalidArgument("noise length must be >= 2");
    const double nyq = s.rate.nyquist();
    if (s.color != NoiseColor::white && !(s.f_min > 0.0 && s.f_min < nyq))
        throw InvalidArgument("f_min must lie in (0, Nyquist)");
    if (s.f_max && !(*s.f_max > s.f_min && *s.f_max < nyq))
        throw InvalidArgument("f_max must lie in (f_min, Nyquist)");
    if (s.color == NoiseColor::black && !(s.beta > 6.0))
        throw InvalidArgument("black noise needs beta > 6 dB/octave");
    if (s.color == NoiseColor::gray) {
        if (!s.loudness_curve || s.loudness_curve->empty())
            throw MissingData("gray noise requires an equal-loudness curve");
    }
}

double octave_slope(const NoiseSpec& s) {
    switch (s.color) {
    case NoiseColor::pink: return -3.0;
    case NoiseColor::brown: return -6.0;
    case NoiseColor::blue: return 3.0;
    case NoiseColor::violet: return 6.0;
    case NoiseColor::black: return -s.beta;
    default: return 0.0;
    }
}

double curve_floor(const LoudnessCurve& curve) {
    double m = curve.front().second;
    for (const auto& p : curve) m = std::min(m, p.second);
    return m;
}

} // namespace

std::string_view to_string(NoiseColor c) {
    switch (c) {
    case NoiseColor::white: return "white";
    case NoiseColor::pink: return "pink";
    case NoiseColor::brown: return "brown";
    case NoiseColor::blue: return "blue";
    case NoiseColor::violet: return "violet";
    case NoiseColor::black: return "black";
    case NoiseColor::gray: return "gray";
    }
    return "?";
}

NoiseColor parse_noise_color(std::string_view name) {
    for (auto c : {NoiseColor::white, NoiseColor::pink, NoiseColor::brown, NoiseColor::blue,
                   NoiseColor::violet, NoiseColor::black, NoiseColor::gray})
        if (name == to_string(c)) return c;
    if (name == "grey") return NoiseColor::gray;
    throw InvalidArgument("unknown noise color '" + std::string(name) + "'");
}

namespace noise {

double bin_magnitude(const NoiseSpec& spec, std::size_t k) {
    if (k == 0) return 0.0;
    const double f = static_cast<double>(k) * spec.rate.hz() / static_cast<double>(spec.length);
    if (spec.color == NoiseColor::white) return 1.0;
    if (f < spec.f_min) return 0.0;
    const bool rising = spec.color == NoiseColor::blue || spec.color == NoiseColor::violet;
    if (rising && spec.f_max && f > *spec.f_max) return 0.0;
    if (spec.color == NoiseColor::gray) {
        const auto& curve = *spec.loudness_curve;
        return std::pow(10.0, (curve_db(curve, f) - curve_floor(curve)) / 20.0);
    }
    return std::pow(std::pow(10.0, octave_slope(spec) / 20.0), std::log2(f / spec.f_min));
}

Spectrum coefficients(const NoiseSpec& spec) {
    validate(spec);
    const std::size_t n = spec.length;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<std::complex<double>> c(n);
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const double x = angle(rng);
        c[k] = std::polar(bin_magnitude(spec, k), x);
        c[n - k] = std::conj(c[k]);
    }
    if (n % 2 == 0) c[n / 2] = bin_magnitude(spec, n / 2);
    return Spectrum(spec.rate, std::move(c));
}

SampleBuffer generate(const NoiseSpec& spec) {
    const auto coeffs = coefficients(spec);
    const auto raw = detail::ifft(coeffs.coeffs());
    if (imaginary_residual(raw) > 1e-9 * static_cast<double>(spec.length))
        throw DegenerateSignal("noise synthesis produced a complex signal");
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i].real();
    return SampleBuffer::mono(spec.rate, std::move(out));
}

double imaginary_residual(std::span<const std::complex<double>> samples) {
    double m = 0.0;
    for (const auto& z : samples) m = std::max(m, std::fabs(z.imag()));
    return m;
}

LoudnessCurve parse_loudness_curve(std::string_view text) {
    LoudnessCurve curve;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double hz = 0, db = 0;
        if (!(row >> hz >> db) || !(hz > 0.0) || !std::isfinite(db))
            throw ParseError("loudness curve: expected 'hz,db' on line " + std::to_string(line_no),
                             line_no, 1);
        curve.emplace_back(hz, db);
    }
    if (curve.empty()) throw MissingData("loudness curve is empty");
    std::sort(curve.begin(), curve.end());
    return curve;
}

LoudnessCurve load_loudness_curve(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open loudness curve '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_loudness_curve(ss.str());
}

double curve_db(const LoudnessCurve& curve, double hz) {
    if (curve.empty()) throw MissingData("loudness curve is empty");
    if (hz <= curve.front().first) return curve.front().second;
    if (hz >= curve.back().first) return curve.back().second;
    auto hi = std::upper_bound(curve.begin(), curve.end(), hz,
                               [](double v, const auto& p) { return v < p.first; });
    auto lo = hi - 1;
    const double u = std::log(hz / lo->first) / std::log(hi->first / lo->first);
    return lo->second + u * (hi->second - lo->second);
}

} // namespace noise
} // namespace tonekit
