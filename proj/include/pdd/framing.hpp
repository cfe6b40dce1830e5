#pragma once

#include <string>
#include <vector>

#include "pdd/candle.hpp"

namespace pdd {

// Selection of candle columns to concatenate, in the fixed order
// (open, low, high, close, volume).
struct FeatureSet {
    bool open = true;
    bool low = true;
    bool high = true;
    bool close = true;
    bool volume = true;

    static FeatureSet all() { return {}; }

    std::size_t count() const {
        return std::size_t(open) + low + high + close + volume;
    }

    // Appends the selected features of one candle, in canonical order.
    void append(const Candle& c, std::vector<double>& out) const;

    // Parses a comma-separated list like "close,volume". Throws DataError on
    // an unknown feature name or an empty selection.
    static FeatureSet parse(const std::string& spec);

    std::string to_string() const;
};

struct Frame {
    std::size_t index = 0;
    std::vector<Candle> candles;  // exactly W of them
};

struct FrameVector {
    std::size_t frame_index = 0;
    std::vector<double> values;  // dimension = |features| * W, candle-major
};

// Non-overlapping framing: floor(N/W) frames, trailing remainder discarded.
// Throws DataError when the series is shorter than one window.
std::vector<Frame> extract_frames(const CandleSeries& series, std::size_t window);

FrameVector flatten_frame(const Frame& frame, const FeatureSet& features);

// Optional z-score mode: standardizes each of the five columns across the
// whole series (columns with zero spread are left centered at 0).
CandleSeries zscore_series(const CandleSeries& series);

}  // namespace pdd
