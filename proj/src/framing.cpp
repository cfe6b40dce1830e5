#include "pdd/framing.hpp"

#include <cmath>
#include <sstream>

namespace pdd {

void FeatureSet::append(const Candle& c, std::vector<double>& out) const {
    if (open) out.push_back(c.open);
    if (low) out.push_back(c.low);
    if (high) out.push_back(c.high);
    if (close) out.push_back(c.close);
    if (volume) out.push_back(c.volume);
}

FeatureSet FeatureSet::parse(const std::string& spec) {
    FeatureSet fs;
    fs.open = fs.low = fs.high = fs.close = fs.volume = false;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "open") fs.open = true;
        else if (tok == "low") fs.low = true;
        else if (tok == "high") fs.high = true;
        else if (tok == "close") fs.close = true;
        else if (tok == "volume") fs.volume = true;
        else if (!tok.empty())
            throw DataError("unknown feature '" + tok + "'");
    }
    if (fs.count() == 0) throw DataError("empty feature selection");
    return fs;
}

std::string FeatureSet::to_string() const {
    std::string s;
    auto add = [&s](const char* name) {
        if (!s.empty()) s += ',';
        s += name;
    };
    if (open) add("open");
    if (low) add("low");
    if (high) add("high");
    if (close) add("close");
    if (volume) add("volume");
    return s;
}

std::vector<Frame> extract_frames(const CandleSeries& series,
                                  std::size_t window) {
    if (window == 0) throw DataError("window size must be positive");
    const std::size_t n = series.candles.size();
    if (n < window) throw DataError("series shorter than one window");
    const std::size_t frame_count = n / window;
    std::vector<Frame> frames;
    frames.reserve(frame_count);
    for (std::size_t f = 0; f < frame_count; ++f) {
        Frame frame;
        frame.index = f;
        frame.candles.assign(series.candles.begin() + long(f * window),
                             series.candles.begin() + long((f + 1) * window));
        frames.push_back(std::move(frame));
    }
    return frames;
}

FrameVector flatten_frame(const Frame& frame, const FeatureSet& features) {
    if (features.count() == 0) throw DataError("empty feature selection");
    FrameVector fv;
    fv.frame_index = frame.index;
    fv.values.reserve(features.count() * frame.candles.size());
    for (const Candle& c : frame.candles) features.append(c, fv.values);
    return fv;
}

CandleSeries zscore_series(const CandleSeries& series) {
    const std::size_t n = series.candles.size();
    if (n == 0) return series;
    double mean[5] = {};
    for (const Candle& c : series.candles) {
        mean[0] += c.open;
        mean[1] += c.low;
        mean[2] += c.high;
        mean[3] += c.close;
        mean[4] += c.volume;
    }
    for (double& m : mean) m /= double(n);
    double var[5] = {};
    for (const Candle& c : series.candles) {
        const double d[5] = {c.open - mean[0], c.low - mean[1],
                             c.high - mean[2], c.close - mean[3],
                             c.volume - mean[4]};
        for (int k = 0; k < 5; ++k) var[k] += d[k] * d[k];
    }
    double sd[5];
    for (int k = 0; k < 5; ++k)
        sd[k] = n > 1 ? std::sqrt(var[k] / double(n - 1)) : 0.0;

    CandleSeries out = series;
    for (Candle& c : out.candles) {
        auto z = [&](double v, int k) {
            return sd[k] > 0 ? (v - mean[k]) / sd[k] : 0.0;
        };
        c.open = z(c.open, 0);
        c.low = z(c.low, 1);
        c.high = z(c.high, 2);
        c.close = z(c.close, 3);
        c.volume = z(c.volume, 4);
    }
    return out;
}

}  // namespace pdd
