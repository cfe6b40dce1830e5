#pragma once

#include <optional>
#include <vector>

#include "pdd/framing.hpp"
#include "pdd/projection.hpp"

namespace pdd {

struct PredictorConfig {
    std::size_t window = 24;       // W, candles per frame
    std::size_t shift = 1;         // Sh, 1 <= Sh <= W
    double threshold = 0.0;        // T, manual
    std::size_t warmup_frames = 10;  // non-overlapping frames for the basis fit
    FeatureSet features = FeatureSet::all();
    bool first_only = false;       // stop after the first alert
};

// Distance of one shifted frame's projection to the initial frame's.
struct DistanceSample {
    std::size_t frame_start_index = 0;  // candle ordinal of the frame start
    double distance = 0.0;
};

struct PredictionAlert {
    std::size_t frame_start_index = 0;
    double distance = 0.0;
    double threshold = 0.0;
};

// Incremental predictor: candles pushed one at a time produce exactly the
// distance samples a batch run over the same data would. The projection
// basis is fit once, on the first warmup_frames non-overlapping frames, and
// frozen; nothing is emitted until that many candles have arrived.
class StreamPredictor {
public:
    explicit StreamPredictor(PredictorConfig config);

    // Returns the samples that became computable with this candle (possibly
    // several right after warm-up completes, usually zero or one after).
    std::vector<DistanceSample> push(const Candle& candle);

    const PredictorConfig& config() const { return config_; }

    // True once the basis is fit and samples are flowing.
    bool warmed_up() const { return basis_.has_value(); }

    static std::optional<PredictionAlert> to_alert(const DistanceSample& s,
                                                   double threshold);

private:
    PredictorConfig config_;
    std::vector<Candle> buffer_;
    std::optional<PcaBasis> basis_;
    Point2D initial_;               // projection of the first frame
    std::size_t next_start_ = 0;    // next frame start to emit
};

// Batch run. Throws DataError when the series is shorter than W + Sh or than
// the warm-up requirement (warmup_frames * W candles), or when T <= 0.
std::vector<PredictionAlert> predict_stream(const CandleSeries& series,
                                            const PredictorConfig& config);

// The full distance diagram (independent of T).
std::vector<DistanceSample> predict_distances(const CandleSeries& series,
                                              const PredictorConfig& config);

}  // namespace pdd
