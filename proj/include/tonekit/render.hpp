#pragma once

#include <cstddef>
#include <string>

#include "tonekit/score.hpp"

namespace tonekit {

// Failure while rendering one event; `index` is its position in the score.
class RenderError : public InvalidArgument {
public:
    RenderError(std::size_t index, std::size_t line, const std::string& what)
        : InvalidArgument("event " + std::to_string(index) + (line ? " (line " + std::to_string(line) + ")" : "") +
                          ": " + what),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// One event without placement or post processing. Noise events draw from
// `seed` + `index` and are scaled so their peak equals the event amplitude.
SampleBuffer render_event(const ScoreEvent& event, std::size_t index, SampleRate rate, std::uint64_t seed);

// Events summed in score order at their onsets, then the post chain. Output is
// stereo when any note carries a position.
SampleBuffer render(const Score& score);

} // namespace tonekit
