#include "tonekit/wav.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>

namespace tonekit {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(tag[i]));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    void need(std::size_t n, const char* what) const {
        if (remaining() < n) throw ParseError::at_offset(std::string("truncated ") + what, pos_);
    }
    std::uint16_t u16(const char* what) {
        need(2, what);
        const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return v;
    }
    std::string tag(const char* what) {
        need(4, what);
        std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
        pos_ += 4;
        return t;
    }
    void skip(std::size_t n) { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

struct Layout {
    WavFile info;
    std::size_t data_offset = 0;
};

Layout parse_layout(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (r.tag("RIFF header") != "RIFF") throw ParseError::at_offset("missing RIFF tag", 0);
    const std::uint32_t riff_size = r.u32("RIFF size");
    if (r.tag("WAVE tag") != "WAVE") throw ParseError::at_offset("missing WAVE tag", 8);
    if (static_cast<std::uint64_t>(riff_size) + 8 > bytes.size())
        throw ParseError::at_offset("RIFF size exceeds file length", 4);
    const std::size_t end = static_cast<std::size_t>(riff_size) + 8;

    std::optional<WavFile> fmt;
    while (r.pos() + 8 <= end) {
        const std::size_t chunk_at = r.pos();
        const std::string id = r.tag("chunk id");
        const std::uint32_t size = r.u32("chunk size");
        if (r.pos() + size > end) throw ParseError::at_offset("chunk '" + id + "' overruns the file", chunk_at);
        if (id == "fmt ") {
            if (size < 16) throw ParseError::at_offset("fmt chunk shorter than 16 bytes", chunk_at);
            const std::size_t body = r.pos();
            const std::uint16_t format = r.u16("format");
            if (format != 1) throw ParseError::at_offset("unsupported codec " + std::to_string(format), body);
            const std::uint16_t channels = r.u16("channels");
            if (channels != 1 && channels != 2)
                throw ParseError::at_offset("unsupported channel count " + std::to_string(channels), body + 2);
            const std::uint32_t rate = r.u32("sample rate");
            if (rate < 2 || rate > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
                throw ParseError::at_offset("invalid sample rate", body + 4);
            const std::uint32_t byte_rate = r.u32("byte rate");
            const std::uint16_t align = r.u16("block align");
            const std::uint16_t bits = r.u16("bits per sample");
            if (bits != 16) throw ParseError::at_offset("only 16-bit samples are supported", body + 14);
            if (align != channels * 2) throw ParseError::at_offset("block align inconsistent", body + 12);
            if (byte_rate != rate * align) throw ParseError::at_offset("byte rate inconsistent", body + 8);
            WavFile w;
            w.rate = SampleRate(static_cast<int>(rate));
            w.channels = channels;
            fmt = w;
            r.skip(size - 16);
        } else if (id == "data") {
            if (!fmt) throw ParseError::at_offset("data chunk before fmt chunk", chunk_at);
            const std::size_t align = fmt->channels * 2;
            if (size % align != 0) throw ParseError::at_offset("data size not a whole number of frames", chunk_at + 4);
            Layout l{*fmt, r.pos()};
            l.info.frames = size / align;
            return l;
        } else {
            r.skip(size);
        }
        if (size % 2 == 1) r.skip(1);
    }
    throw ParseError::at_offset(fmt ? "missing data chunk" : "missing fmt chunk", r.pos());
}

} // namespace

namespace wav {

std::int16_t quantize(double s, bool& clipped) {
    if (std::isnan(s)) throw InvalidArgument("cannot quantize NaN");
    const double v = std::round(s * kScale);
    clipped = v > 32767.0 || v < -32768.0;
    if (v > 32767.0) return 32767;
    if (v < -32768.0) return -32768;
    return static_cast<std::int16_t>(v);
}

double dequantize(std::int16_t v) { return static_cast<double>(v) / kScale; }

EncodedWav encode(const SampleBuffer& buf) {
    const std::size_t ch = buf.channel_count();
    const std::size_t frames = buf.frames();
    const std::uint64_t data_size = static_cast<std::uint64_t>(frames) * ch * 2;
    if (data_size + 36 > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("buffer too long for a RIFF file");

    EncodedWav out;
    out.info.rate = buf.rate();
    out.info.channels = ch;
    out.info.frames = frames;
    auto& b = out.bytes;
    b.reserve(44 + data_size);
    put_tag(b, "RIFF");
    put_u32(b, static_cast<std::uint32_t>(36 + data_size));
    put_tag(b, "WAVE");
    put_tag(b, "fmt ");
    put_u32(b, 16);
    put_u16(b, 1);
    put_u16(b, static_cast<std::uint16_t>(ch));
    put_u32(b, static_cast<std::uint32_t>(buf.rate().hz()));
    put_u32(b, static_cast<std::uint32_t>(buf.rate().hz() * ch * 2));
    put_u16(b, static_cast<std::uint16_t>(ch * 2));
    put_u16(b, 16);
    put_tag(b, "data");
    put_u32(b, static_cast<std::uint32_t>(data_size));
    for (std::size_t i = 0; i < frames; ++i) {
        for (std::size_t c = 0; c < ch; ++c) {
            bool clipped = false;
            const auto q = quantize(buf.channel(c)[i], clipped);
            if (clipped) ++out.info.clipped;
            put_u16(b, static_cast<std::uint16_t>(q));
        }
    }
    return out;
}

WavFile inspect(std::span<const std::uint8_t> bytes) { return parse_layout(bytes).info; }

SampleBuffer decode(std::span<const std::uint8_t> bytes) {
    const Layout l = parse_layout(bytes);
    const std::size_t ch = l.info.channels;
    SampleBuffer out(l.info.rate, ch, l.info.frames);
    std::size_t at = l.data_offset;
    for (std::size_t i = 0; i < l.info.frames; ++i) {
        for (std::size_t c = 0; c < ch; ++c, at += 2) {
            const auto raw = static_cast<std::uint16_t>(bytes[at] | (bytes[at + 1] << 8));
            out.channel(c)[i] = dequantize(static_cast<std::int16_t>(raw));
        }
    }
    return out;
}

} // namespace wav

WavFile write_wav(const SampleBuffer& buf, const std::string& path) {
    const auto enc = wav::encode(buf);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(enc.bytes.data()), static_cast<std::streamsize>(enc.bytes.size()));
    if (!f) throw IoError("write to '" + path + "' failed");
    return enc.info;
}

SampleBuffer read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return wav::decode(bytes);
}

} // namespace tonekit
