#include "pdd/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pdd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::int64_t civil_to_epoch_minutes(int year, int month, int day, int hour,
                                    int minute) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                       std::chrono::day{unsigned(day)}};
    if (!ymd.ok()) throw DataError("invalid calendar date");
    sys_days d{ymd};
    return d.time_since_epoch().count() * std::int64_t{1440} + hour * 60 + minute;
}

double parse_number(const std::string& text, const char* what,
                    std::size_t row) {
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw DataError("row " + std::to_string(row) + ": unparseable " +
                        what + " '" + text + "'");
    }
    return v;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text) {
    const std::string t = trim(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    // Table-1 style: M/D/YYYY H:MM
    if (std::sscanf(t.c_str(), "%d/%d/%d %d:%d", &mo, &d, &y, &h, &mi) == 5) {
        if (h < 0 || h > 23 || mi < 0 || mi > 59)
            throw DataError("invalid time of day in '" + t + "'");
        return civil_to_epoch_minutes(y, mo, d, h, mi);
    }
    // ISO-8601, space or 'T' separator, optional seconds (truncated).
    if (std::sscanf(t.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s) >= 5 ||
        std::sscanf(t.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s) >= 5) {
        if (h < 0 || h > 23 || mi < 0 || mi > 59)
            throw DataError("invalid time of day in '" + t + "'");
        return civil_to_epoch_minutes(y, mo, d, h, mi);
    }
    throw DataError("unrecognized timestamp '" + t + "'");
}

std::string format_timestamp(std::int64_t epoch_minutes) {
    using namespace std::chrono;
    std::int64_t days = epoch_minutes / 1440;
    std::int64_t rem = epoch_minutes % 1440;
    if (rem < 0) {
        rem += 1440;
        days -= 1;
    }
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u %02d:%02d",
                  int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                  int(rem / 60), int(rem % 60));
    return buf;
}

CandleSeries parse_candles(std::istream& in, const SeriesMeta& meta) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file");
    if (!line.empty() && line.front() == '\xEF' && line.size() >= 3)
        line = line.substr(3);  // strip UTF-8 BOM

    const std::vector<std::string> header = split_csv_line(line);
    int col_ts = -1, col_o = -1, col_l = -1, col_h = -1, col_c = -1, col_v = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "timestamp") col_ts = int(i);
        else if (name == "open") col_o = int(i);
        else if (name == "low") col_l = int(i);
        else if (name == "high") col_h = int(i);
        else if (name == "close") col_c = int(i);
        else if (name == "trading volume" || name == "volume") col_v = int(i);
    }
    if (col_ts < 0 || col_o < 0 || col_l < 0 || col_h < 0 || col_c < 0 ||
        col_v < 0) {
        throw DataError("header missing required columns (need Timestamp, "
                        "Open, Low, High, Close, Trading Volume)");
    }

    CandleSeries series;
    series.exchange = meta.exchange;
    series.symbol_pair = meta.symbol_pair;

    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError("row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(fields.size()));
        }
        Candle c;
        try {
            c.timestamp_min = parse_timestamp(fields[std::size_t(col_ts)]);
        } catch (const DataError& e) {
            throw DataError("row " + std::to_string(row) + ": " + e.what());
        }
        c.open = parse_number(fields[std::size_t(col_o)], "open", row);
        c.low = parse_number(fields[std::size_t(col_l)], "low", row);
        c.high = parse_number(fields[std::size_t(col_h)], "high", row);
        c.close = parse_number(fields[std::size_t(col_c)], "close", row);
        c.volume = parse_number(fields[std::size_t(col_v)], "volume", row);
        series.candles.push_back(c);
    }
    if (series.candles.empty()) throw DataError("empty series");
    return series;
}

CandleSeries parse_candles_file(const std::string& path, SeriesMeta meta) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    if (meta.exchange.empty() && meta.symbol_pair.empty()) {
        // {exchange}_{base}-{quote}.csv
        std::string stem = path;
        if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos)
            stem = stem.substr(pos + 1);
        if (auto pos = stem.rfind(".csv"); pos != std::string::npos)
            stem = stem.substr(0, pos);
        if (auto pos = stem.find('_'); pos != std::string::npos) {
            meta.exchange = stem.substr(0, pos);
            std::string pair = stem.substr(pos + 1);
            std::replace(pair.begin(), pair.end(), '-', '/');
            meta.symbol_pair = pair;
        } else {
            meta.symbol_pair = stem;
        }
    }
    return parse_candles(in, meta);
}

std::vector<Violation> validate_series(const CandleSeries& series) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < series.candles.size(); ++i) {
        const Candle& c = series.candles[i];
        if (c.volume < 0) out.push_back({i, "negative volume"});
        if (c.low > c.high) out.push_back({i, "low exceeds high"});
        if (c.low > std::min(c.open, c.close))
            out.push_back({i, "low exceeds open/close"});
        if (c.high < std::max(c.open, c.close))
            out.push_back({i, "high below open/close"});
        if (c.open < 0 || c.low < 0 || c.high < 0 || c.close < 0)
            out.push_back({i, "negative price"});
        if (i > 0 &&
            c.timestamp_min <= series.candles[i - 1].timestamp_min) {
            out.push_back(
                {i, "non-increasing timestamp at index " + std::to_string(i)});
        }
    }
    return out;
}

void serialize_candles(const CandleSeries& series, std::ostream& out) {
    out << "Timestamp,Open,Low,High,Close,Trading Volume\n";
    char buf[160];
    for (const Candle& c : series.candles) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      format_timestamp(c.timestamp_min).c_str(), c.open, c.low,
                      c.high, c.close, c.volume);
        out << buf;
    }
}

}  // namespace pdd
