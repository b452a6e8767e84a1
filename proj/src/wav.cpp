#include "laughtrack/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>

#include "laughtrack/error.hpp"

namespace laughtrack::wav {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr int kMinSampleRate = 8000;

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

[[noreturn]] void reject(const std::string& why) { throw ValidationError("ingest", "wav: " + why); }

struct Format {
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
};

}  // namespace

AudioTrack decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        reject("not a RIFF/WAVE file");

    std::optional<Format> fmt;
    std::span<const std::uint8_t> data;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const auto* chunk = bytes.data() + pos;
        std::uint32_t size = read_u32(chunk + 4);
        std::size_t body = pos + 8;
        std::size_t avail = bytes.size() - body;
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (size < 16 || size > avail) reject("truncated fmt chunk");
            const auto* f = bytes.data() + body;
            std::uint16_t tag = read_u16(f);
            Format parsed{read_u16(f + 2), read_u32(f + 4), read_u16(f + 14)};
            if (tag == kFormatExtensible) {
                if (size < 40) reject("truncated extensible fmt chunk");
                tag = read_u16(f + 24);  // first two bytes of the subformat GUID
            }
            if (tag != kFormatPcm) reject("unsupported encoding (format tag " + std::to_string(tag) + ")");
            fmt = parsed;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            // Streaming writers sometimes leave the size unset; take what is there.
            data = bytes.subspan(body, std::min<std::size_t>(size, avail));
            have_data = true;
        }
        pos = body + size + (size & 1u);
    }

    if (!fmt) reject("missing fmt chunk");
    if (!have_data) reject("missing data chunk");
    if (fmt->bits != 16) reject("unsupported bit depth " + std::to_string(fmt->bits) + " (need 16)");
    if (fmt->channels == 0) reject("zero channels");
    if (fmt->sample_rate < kMinSampleRate)
        reject("sample rate " + std::to_string(fmt->sample_rate) + " below 8000 Hz");

    const std::size_t frame_bytes = 2u * fmt->channels;
    const std::size_t frames = data.size() / frame_bytes;
    AudioTrack track;
    track.sample_rate = static_cast<int>(fmt->sample_rate);
    track.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const auto* frame = data.data() + i * frame_bytes;
        double acc = 0.0;
        for (std::uint16_t c = 0; c < fmt->channels; ++c)
            acc += static_cast<std::int16_t>(read_u16(frame + 2 * c)) / 32768.0;
        track.samples[i] = static_cast<float>(acc / fmt->channels);
    }
    return track;
}

AudioTrack decode(const std::string& bytes) {
    return decode(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(bytes.data()),
                                                bytes.size()));
}

std::vector<std::uint8_t> encode(const AudioTrack& track) {
    const auto data_bytes = static_cast<std::uint32_t>(track.samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_bytes);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1);
    put_u32(out, static_cast<std::uint32_t>(track.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(track.sample_rate) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, data_bytes);
    for (float s : track.samples) {
        double scaled = std::round(static_cast<double>(s) * 32768.0);
        auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
        put_u16(out, static_cast<std::uint16_t>(v));
    }
    return out;
}

std::string encode_string(const AudioTrack& track) {
    auto bytes = encode(track);
    return std::string(bytes.begin(), bytes.end());
}

}  // namespace laughtrack::wav
