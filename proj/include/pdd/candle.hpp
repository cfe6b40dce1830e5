#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdd {

// Raised for malformed input data (bad CSV rows, invariant violations,
// missing files). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// One OHLCV record. Timestamps are stored as minutes since the Unix epoch,
// in whatever local time the exchange export used.
struct Candle {
    std::int64_t timestamp_min = 0;
    double open = 0.0;
    double low = 0.0;
    double high = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

struct CandleSeries {
    std::string exchange;
    std::string symbol_pair;
    std::vector<Candle> candles;

    std::size_t size() const { return candles.size(); }
};

// Parses "M/D/YYYY H:MM" or ISO-8601 ("YYYY-MM-DD HH:MM[:SS]", 'T' separator
// accepted) into epoch minutes. Throws DataError on anything else.
std::int64_t parse_timestamp(const std::string& text);

// Epoch minutes -> "YYYY-MM-DD HH:MM".
std::string format_timestamp(std::int64_t epoch_minutes);

}  // namespace pdd
