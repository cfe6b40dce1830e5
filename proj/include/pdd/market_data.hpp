#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdd/candle.hpp"

namespace pdd {

struct SeriesMeta {
    std::string exchange;
    std::string symbol_pair;
};

struct Violation {
    std::size_t index = 0;  // candle index within the series
    std::string message;
};

// Reads a headered CSV with columns {Timestamp, Open, Low, High, Close,
// Trading Volume} in any order (header names matched case-insensitively).
// Throws DataError on a malformed row (naming the row index) or an empty file.
CandleSeries parse_candles(std::istream& in, const SeriesMeta& meta);

// Convenience wrapper; derives exchange/symbol from a filename shaped
// {exchange}_{base}-{quote}.csv when meta fields are left empty.
CandleSeries parse_candles_file(const std::string& path, SeriesMeta meta = {});

// Checks every candle invariant (low <= min(open, close), high >= max(open,
// close), low <= high, volume >= 0) plus strict timestamp monotonicity.
// Empty result means the series is valid.
std::vector<Violation> validate_series(const CandleSeries& series);

// Canonical CSV re-serialization (round-trips through parse_candles).
void serialize_candles(const CandleSeries& series, std::ostream& out);

}  // namespace pdd
