#include "tonekit/filters.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"

namespace tonekit {

namespace {

void require_finite_all(std::span<const double> xs, const char* what) {
    for (double x : xs)
        if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite value");
}

} // namespace

ImpulseResponse::ImpulseResponse(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw InvalidArgument("impulse response must not be empty");
    require_finite_all(samples_, "impulse response");
}

FilterKind parse_filter_kind(std::string_view name) {
    if (name == "lowpass") return FilterKind::lowpass;
    if (name == "highpass") return FilterKind::highpass;
    if (name == "bandpass") return FilterKind::bandpass;
    if (name == "bandreject" || name == "notch") return FilterKind::bandreject;
    throw InvalidArgument("unknown filter kind '" + std::string(name) + "'");
}

namespace filters {

SampleBuffer convolve(const SampleBuffer& x, const ImpulseResponse& h) {
    if (x.empty()) throw InvalidArgument("convolve: empty input");
    const std::size_t nx = x.frames(), nh = h.size();
    SampleBuffer out(x.rate(), x.channel_count(), nx + nh - 1);
    for (std::size_t c = 0; c < x.channel_count(); ++c) {
        auto src = x.channel(c);
        auto dst = out.channel(c);
        for (std::size_t i = 0; i < nx; ++i) {
            const double v = src[i];
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < nh; ++j) dst[i + j] += v * h[j];
        }
    }
    return out;
}

SampleBuffer convolve_fft(const SampleBuffer& x, const ImpulseResponse& h) {
    if (x.empty()) throw InvalidArgument("convolve: empty input");
    SampleBuffer out(x.rate(), x.channel_count(), x.frames() + h.size() - 1);
    for (std::size_t c = 0; c < x.channel_count(); ++c) {
        auto y = detail::fft_convolve(x.channel(c), h.samples());
        std::copy(y.begin(), y.end(), out.channel(c).begin());
    }
    return out;
}

SampleBuffer apply_iir(const SampleBuffer& x, const IIRCoefficients& coef) {
    if (coef.feedforward.empty()) throw InvalidArgument("apply_iir: feedforward coefficients empty");
    require_finite_all(coef.feedforward, "apply_iir");
    require_finite_all(coef.feedback, "apply_iir");
    const auto& a = coef.feedforward;
    const auto& b = coef.feedback;
    SampleBuffer out(x.rate(), x.channel_count(), x.frames());
    for (std::size_t c = 0; c < x.channel_count(); ++c) {
        auto in = x.channel(c);
        auto y = out.channel(c);
        for (std::size_t i = 0; i < in.size(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < a.size() && j <= i; ++j) acc += a[j] * in[i - j];
            for (std::size_t k = 1; k <= b.size() && k <= i; ++k) acc += b[k - 1] * y[i - k];
            if (!std::isfinite(acc)) throw DegenerateSignal("apply_iir: output diverged");
            y[i] = acc;
        }
    }
    return out;
}

IIRCoefficients design_iir(FilterKind kind, double fc, std::optional<double> bw) {
    if (!(fc > 0.0 && fc < 0.5)) throw InvalidArgument("cutoff must lie in (0, 0.5)");
    const bool band = kind == FilterKind::bandpass || kind == FilterKind::bandreject;
    if (!band && bw) throw InvalidArgument("bandwidth given for a single-pole filter");
    if (band && !bw) throw InvalidArgument("band filters require a bandwidth");
    if (band && !(*bw > 0.0 && *bw < 0.5)) throw InvalidArgument("bandwidth must lie in (0, 0.5)");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    switch (kind) {
    case FilterKind::lowpass: {
        const double x = std::exp(-two_pi * fc);
        return {{1.0 - x}, {x}};
    }
    case FilterKind::highpass: {
        const double x = std::exp(-two_pi * fc);
        return {{(1.0 + x) / 2.0, -(1.0 + x) / 2.0}, {x}};
    }
    case FilterKind::bandpass:
    case FilterKind::bandreject: {
        const double r = 1.0 - 3.0 * *bw;
        const double cw = std::cos(two_pi * fc);
        const double k = (1.0 - 2.0 * r * cw + r * r) / (2.0 - 2.0 * cw);
        const std::vector<double> fb{2.0 * r * cw, -r * r};
        if (kind == FilterKind::bandpass) return {{1.0 - k, 2.0 * (k - r) * cw, r * r - k}, fb};
        return {{k, -2.0 * k * cw, k}, fb};
    }
    }
    throw InvalidArgument("unknown filter kind");
}

double probe_magnitude(const IIRCoefficients& c, double f, SampleRate rate) {
    if (!(f > 0.0 && f < 0.5)) throw InvalidArgument("probe frequency must lie in (0, 0.5)");
    const std::size_t n = static_cast<std::size_t>(rate.hz());
    std::vector<double> probe(n);
    for (std::size_t i = 0; i < n; ++i)
        probe[i] = std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i));
    const auto in = SampleBuffer::mono(rate, probe);
    const auto out = apply_iir(in, c);
    const std::size_t skip = n / 10;
    const std::span<const double> tail_in = in.channel(0).subspan(skip);
    const std::span<const double> tail_out = out.channel(0).subspan(skip);
    return std::sqrt(power(tail_out) / power(tail_in));
}

} // namespace filters
} // namespace tonekit
