#include "volcusum/panel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

bool is_unsigned_integer(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool day_less(const std::string& a, const std::string& b) {
  if (is_unsigned_integer(a) && is_unsigned_integer(b)) {
    const auto strip = [](const std::string& s) {
      const auto nz = s.find_first_not_of('0');
      return nz == std::string::npos ? std::string("0") : s.substr(nz);
    };
    const std::string x = strip(a);
    const std::string y = strip(b);
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
  return a < b;
}

void PricePanel::validate() const {
  if (days.size() != num_days()) {
    throw Error(ErrorKind::Config, "price panel has " + std::to_string(num_days()) +
                                       " rows but " + std::to_string(days.size()) +
                                       " day labels");
  }
  if (prices.cols() < 2) {
    throw Error(ErrorKind::Config, "price panel needs at least two prices per day");
  }
  for (Eigen::Index i = 0; i < prices.rows(); ++i) {
    for (Eigen::Index k = 0; k < prices.cols(); ++k) {
      const double p = prices(i, k);
      if (!(p > 0.0) || !std::isfinite(p)) {
        Error err(ErrorKind::Config, "nonpositive or non-finite price on day '" +
                                         days[static_cast<std::size_t>(i)] + "' (row " +
                                         std::to_string(i) + ", column " +
                                         std::to_string(k) + ")");
        err.row = static_cast<std::size_t>(i);
        err.column = static_cast<std::size_t>(k);
        throw err;
      }
    }
  }
  for (std::size_t i = 1; i < days.size(); ++i) {
    if (!day_less(days[i - 1], days[i])) {
      Error err(ErrorKind::Config, "day labels not strictly increasing at '" + days[i] + "'");
      err.row = i;
      throw err;
    }
  }
}

PricePanel PricePanel::slice(std::size_t first, std::size_t count) const {
  PricePanel out;
  out.days.assign(days.begin() + static_cast<std::ptrdiff_t>(first),
                  days.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.prices = prices.middleRows(static_cast<Eigen::Index>(first),
                                 static_cast<Eigen::Index>(count));
  return out;
}

}  // namespace volcusum
