#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "volcusum/panel.hpp"

namespace volcusum {

/// Reads the wide price format: a header `date,p0,p1,...,pK` followed by one
/// row per trading day with all K+1 prices present and positive, dates
/// strictly increasing. Any violation is an Error(Parse) carrying the 1-based
/// line number; nothing is imputed.
PricePanel read_price_csv(std::istream& in);
PricePanel ingest_prices(const std::filesystem::path& path);

/// Writes the same format with shortest round-trip number formatting, so
/// reading the output back yields an identical panel.
void write_price_csv(std::ostream& out, const PricePanel& panel);
void write_price_csv(const std::filesystem::path& path, const PricePanel& panel);

}  // namespace volcusum
