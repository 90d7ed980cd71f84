#include "volcusum/price_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  Error err(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message);
  err.line = line;
  throw err;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

PricePanel read_price_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) fail(1, "empty file, expected header date,p0,...,pK");
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "date") {
    fail(line_no, "header must be date,p0,p1,...,pK with K >= 1");
  }
  for (std::size_t k = 1; k < header.size(); ++k) {
    if (header[k] != "p" + std::to_string(k - 1)) {
      fail(line_no, "header column " + std::to_string(k + 1) + " must be p" +
                        std::to_string(k - 1) + ", got '" + std::string(header[k]) + "'");
    }
  }
  const std::size_t width = header.size() - 1;

  std::vector<std::string> days;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != width + 1) {
      fail(line_no, "expected " + std::to_string(width + 1) + " fields, found " +
                        std::to_string(fields.size()));
    }
    if (fields[0].empty()) fail(line_no, "missing date");
    std::string day(fields[0]);
    if (!days.empty() && !day_less(days.back(), day)) {
      fail(line_no, "date '" + day + "' is not after '" + days.back() + "'");
    }
    for (std::size_t k = 1; k <= width; ++k) {
      const auto field = fields[k];
      if (field.empty()) fail(line_no, "missing price p" + std::to_string(k - 1));
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        fail(line_no, "cannot parse price p" + std::to_string(k - 1) + " '" +
                          std::string(field) + "'");
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        fail(line_no, "price p" + std::to_string(k - 1) + " must be positive, got " +
                          std::string(field));
      }
      values.push_back(v);
    }
    days.push_back(std::move(day));
  }
  if (days.empty()) fail(line_no, "no data rows");

  PricePanel panel;
  panel.days = std::move(days);
  panel.prices = Eigen::Map<const Matrix>(values.data(),
                                          static_cast<Eigen::Index>(panel.days.size()),
                                          static_cast<Eigen::Index>(width));
  return panel;
}

PricePanel ingest_prices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    Error err(ErrorKind::Parse, "cannot open '" + path.string() + "'");
    throw err;
  }
  return read_price_csv(in);
}

void write_price_csv(std::ostream& out, const PricePanel& panel) {
  out << "date";
  for (std::size_t k = 0; k <= panel.intervals(); ++k) out << ",p" << k;
  out << '\n';
  for (std::size_t i = 0; i < panel.num_days(); ++i) {
    out << panel.days[i];
    for (Eigen::Index k = 0; k < panel.prices.cols(); ++k) {
      out << ',' << format_double(panel.prices(static_cast<Eigen::Index>(i), k));
    }
    out << '\n';
  }
}

void write_price_csv(const std::filesystem::path& path, const PricePanel& panel) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
  write_price_csv(out, panel);
}

}  // namespace volcusum
