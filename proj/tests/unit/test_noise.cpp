#include "helpers.hpp"

#include <algorithm>

#include "tonekit/noise.hpp"
#include "tonekit/spectral.hpp"

using namespace tonekit;

namespace {

NoiseSpec spec_of(NoiseColor c, std::size_t n = 1u << 17, std::uint64_t seed = 1) {
    NoiseSpec s;
    s.color = c;
    s.length = n;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("color names", "[noise]") {
    for (auto c : {NoiseColor::white, NoiseColor::pink, NoiseColor::brown, NoiseColor::blue, NoiseColor::violet,
                   NoiseColor::black, NoiseColor::gray})
        CHECK(parse_noise_color(to_string(c)) == c);
    CHECK_THROWS_AS(parse_noise_color("purple"), InvalidArgument);
}

TEST_CASE("white magnitudes are one above DC", "[noise]") {
    const auto c = noise::coefficients(spec_of(NoiseColor::white, 1000, 5));
    CHECK(std::abs(c[0]) == 0.0);
    for (std::size_t k = 1; k < 1000; ++k) REQUIRE_THAT(c.magnitude(k), WithinAbs(1.0, 1e-12));
}

TEST_CASE("pink halves power per octave", "[noise]") {
    const auto s = spec_of(NoiseColor::pink, 44100);
    CHECK_THAT(noise::bin_magnitude(s, 2000) / noise::bin_magnitude(s, 1000), WithinAbs(std::pow(10.0, -3.0 / 20.0), 1e-12));
}

TEST_CASE("slopes per color", "[noise]") {
    const std::vector<std::pair<NoiseColor, double>> cases{{NoiseColor::white, 0.0},    {NoiseColor::pink, -3.0103},
                                                           {NoiseColor::brown, -6.0206}, {NoiseColor::blue, 3.0103},
                                                           {NoiseColor::violet, 6.0206}};
    for (const auto& [color, want] : cases) {
        const auto sig = noise::generate(spec_of(color));
        const double slope = spectral::slope_db_per_octave(spectral::forward(sig), 100.0, 10000.0);
        INFO(to_string(color));
        CHECK_THAT(slope, WithinAbs(want, 0.1));
    }
    const auto black = noise::generate(spec_of(NoiseColor::black));
    CHECK_THAT(spectral::slope_db_per_octave(spectral::forward(black), 100.0, 10000.0), WithinAbs(-12.0, 0.2));
}

TEST_CASE("band edges carry no energy", "[noise]") {
    for (auto color : {NoiseColor::pink, NoiseColor::brown, NoiseColor::blue, NoiseColor::violet, NoiseColor::black}) {
        auto s = spec_of(color, 44100);
        s.f_min = 40.0;
        if (color == NoiseColor::blue || color == NoiseColor::violet) s.f_max = 8000.0;
        const auto c = noise::coefficients(s);
        for (std::size_t k = 1; k < 40; ++k) REQUIRE(c.magnitude(k) == 0.0);
        CHECK(c.magnitude(40) > 0.0);
        if (s.f_max) {
            for (std::size_t k = 8001; k < 22050; ++k) REQUIRE(c.magnitude(k) == 0.0);
        }
    }
}

TEST_CASE("real output with zero mean", "[noise]") {
    const auto sig = noise::generate(spec_of(NoiseColor::pink, 4097, 3));
    double sum = 0.0;
    for (double v : sig.samples()) sum += v;
    CHECK(std::fabs(sum) <= 1e-9 * 4097);
}

TEST_CASE("seeded determinism", "[noise]") {
    const auto a = noise::generate(spec_of(NoiseColor::brown, 8192, 42));
    CHECK(a == noise::generate(spec_of(NoiseColor::brown, 8192, 42)));
    const auto b = noise::generate(spec_of(NoiseColor::brown, 8192, 43));
    CHECK_FALSE(a == b);

    const auto ca = spectral::forward(a), cb = spectral::forward(b);
    for (std::size_t k = 0; k < 8192; ++k) REQUIRE_THAT(ca.magnitude(k), WithinAbs(cb.magnitude(k), 1e-9));
}

TEST_CASE("imaginary residual", "[noise]") {
    const auto c = noise::coefficients(spec_of(NoiseColor::pink, 1024, 8));
    const auto raw = spectral::inverse_complex(c.coeffs());
    CHECK(noise::imaginary_residual(raw) <= 1e-9 * 1024);

    auto broken = c.coeffs();
    broken[5] = std::complex<double>(broken[5].real(), broken[5].imag() + 4.0);
    CHECK(noise::imaginary_residual(spectral::inverse_complex(broken)) > 1e-3);

    const std::vector<std::complex<double>> zeros(16);
    CHECK(noise::imaginary_residual(spectral::inverse_complex(zeros)) == 0.0);
}

TEST_CASE("invalid specs", "[noise]") {
    CHECK_THROWS_AS(noise::generate(spec_of(NoiseColor::gray, 1024)), MissingData);
    CHECK_THROWS_AS(noise::generate(spec_of(NoiseColor::white, 1)), InvalidArgument);
    auto s = spec_of(NoiseColor::blue, 1024);
    s.f_max = 5.0;
    CHECK_THROWS_AS(noise::generate(s), InvalidArgument);
    s = spec_of(NoiseColor::black, 1024);
    s.beta = 6.0;
    CHECK_THROWS_AS(noise::generate(s), InvalidArgument);
}

TEST_CASE("gray noise follows the loudness curve", "[noise]") {
    const auto curve = noise::parse_loudness_curve("# hz,db\n100,60\n1000,40\n10000,50\n");
    CHECK_THAT(noise::curve_db(curve, 1000.0), WithinAbs(40.0, 1e-12));
    CHECK_THAT(noise::curve_db(curve, std::sqrt(1000.0 * 10000.0)), WithinAbs(45.0, 1e-9));
    CHECK_THAT(noise::curve_db(curve, 20.0), WithinAbs(60.0, 1e-12));

    auto s = spec_of(NoiseColor::gray, 44100);
    s.loudness_curve = curve;
    CHECK(noise::bin_magnitude(s, 100) > noise::bin_magnitude(s, 1000));
    CHECK(noise::bin_magnitude(s, 10000) > noise::bin_magnitude(s, 1000));
    CHECK_NOTHROW(noise::generate(s));

    CHECK_THROWS_AS(noise::parse_loudness_curve("100;60\n"), ParseError);
    CHECK_THROWS_AS(noise::parse_loudness_curve("# nothing\n"), MissingData);
    CHECK_THROWS_AS(noise::load_loudness_curve("/nonexistent/curve.csv"), IoError);
}

TEST_CASE("bundled loudness contour", "[noise]") {
    const auto curve = noise::load_loudness_curve(std::string(TONEKIT_SOURCE_DIR) + "/assets/equal_loudness_40phon.csv");
    REQUIRE(curve.size() == 29);
    CHECK(std::is_sorted(curve.begin(), curve.end()));
    CHECK_THAT(noise::curve_db(curve, 1000.0), WithinAbs(40.01, 1e-9));
    auto s = spec_of(NoiseColor::gray, 44100);
    s.loudness_curve = curve;
    CHECK(noise::bin_magnitude(s, 100) > noise::bin_magnitude(s, 3150));
}
