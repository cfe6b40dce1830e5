#include "pdd/predictor.hpp"

#include <cmath>

namespace pdd {

StreamPredictor::StreamPredictor(PredictorConfig config)
    : config_(config) {
    if (config_.window == 0) throw DataError("window size must be positive");
    if (config_.shift == 0 || config_.shift > config_.window)
        throw DataError("shift size must satisfy 1 <= Sh <= W");
    if (config_.warmup_frames < 3)
        throw DataError("need at least 3 warm-up frames");
    if (config_.features.count() == 0)
        throw DataError("empty feature selection");
}

std::vector<DistanceSample> StreamPredictor::push(const Candle& candle) {
    buffer_.push_back(candle);
    std::vector<DistanceSample> out;

    if (!basis_) {
        const std::size_t needed = config_.warmup_frames * config_.window;
        if (buffer_.size() < needed) return out;
        CandleSeries warmup;
        warmup.candles.assign(buffer_.begin(), buffer_.begin() + long(needed));
        std::vector<FrameVector> vectors;
        for (const Frame& f : extract_frames(warmup, config_.window))
            vectors.push_back(flatten_frame(f, config_.features));
        basis_ = fit_pca(vectors);
        initial_ = project(*basis_, vectors.front());
    }

    while (next_start_ + config_.window <= buffer_.size()) {
        Frame frame;
        frame.index = next_start_;
        frame.candles.assign(buffer_.begin() + long(next_start_),
                             buffer_.begin() +
                                 long(next_start_ + config_.window));
        const Point2D p = project(*basis_, flatten_frame(frame, config_.features));
        out.push_back({next_start_,
                       std::hypot(p.x - initial_.x, p.y - initial_.y)});
        next_start_ += config_.shift;
    }
    return out;
}

std::optional<PredictionAlert> StreamPredictor::to_alert(
    const DistanceSample& s, double threshold) {
    if (s.distance > threshold)
        return PredictionAlert{s.frame_start_index, s.distance, threshold};
    return std::nullopt;
}

namespace {

std::vector<DistanceSample> run_batch(const CandleSeries& series,
                                      const PredictorConfig& config) {
    StreamPredictor predictor(config);
    const std::size_t min_len =
        std::max(config.window + config.shift,
                 config.warmup_frames * config.window);
    if (series.candles.size() < min_len)
        throw DataError("series too short: need at least " +
                        std::to_string(min_len) + " candles");
    std::vector<DistanceSample> samples;
    for (const Candle& c : series.candles) {
        std::vector<DistanceSample> chunk = predictor.push(c);
        samples.insert(samples.end(), chunk.begin(), chunk.end());
    }
    return samples;
}

}  // namespace

std::vector<PredictionAlert> predict_stream(const CandleSeries& series,
                                            const PredictorConfig& config) {
    if (!(config.threshold > 0))
        throw DataError("prediction threshold must be positive");
    std::vector<PredictionAlert> alerts;
    for (const DistanceSample& s : run_batch(series, config)) {
        if (auto alert = StreamPredictor::to_alert(s, config.threshold)) {
            alerts.push_back(*alert);
            if (config.first_only) break;
        }
    }
    return alerts;
}

std::vector<DistanceSample> predict_distances(const CandleSeries& series,
                                              const PredictorConfig& config) {
    return run_batch(series, config);
}

}  // namespace pdd
