#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "laughtrack/types.hpp"

namespace laughtrack::wav {

// Decodes RIFF/WAVE linear PCM, 16-bit, any channel count (downmixed by
// averaging), sample rate >= 8 kHz. Anything else is rejected with a
// ValidationError from stage "ingest".
AudioTrack decode(std::span<const std::uint8_t> bytes);
AudioTrack decode(const std::string& bytes);

// Mono 16-bit PCM encoding of a track.
std::vector<std::uint8_t> encode(const AudioTrack& track);
std::string encode_string(const AudioTrack& track);

}  // namespace laughtrack::wav
