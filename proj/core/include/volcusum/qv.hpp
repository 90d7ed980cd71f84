#pragma once

#include "volcusum/panel.hpp"

namespace volcusum {

/// Log-price curves relative to the opening price of each day.
/// Throws Error(Config) naming row and column on a nonpositive price.
ReturnPanel cidr_curves(const PricePanel& prices);

/// Running sums of squared intraday increments, accumulated left to right.
/// Requires K >= 2.
QVPanel realized_qv(const ReturnPanel& returns);

/// Divides each row by its final entry. A day with zero total variation is a
/// hard Error(Degenerate) whose `row` names the day.
StdQVPanel standardized_qv(const QVPanel& qv);

/// log of the last column; same zero-variation error as standardized_qv.
LogTotalQV log_total_qv(const QVPanel& qv);

}  // namespace volcusum
