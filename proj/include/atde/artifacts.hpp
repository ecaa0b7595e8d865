#pragma once

#include <string>
#include <vector>

#include "atde/clock.hpp"
#include "atde/extractor.hpp"
#include "atde/scaling.hpp"

namespace atde {

/// Shortest decimal that round-trips the value ("100", "0.25", "1e-05").
std::string format_number(double value);

std::string scores_csv(const ClockSeries& series);        // t,score
std::string changepoints_csv(const ClockSeries& series);  // t
std::string histogram_csv(const std::vector<HistogramBin>& bins);  // bin_lo,bin_hi,count
std::string year_index_csv(const YearIndex& index);      // year,frame

std::string series_csv(const YearSeries& series);  // year,count
std::string series_json(const YearSeries& series);
YearSeries parse_series_json(const std::string& document);

std::string scales_csv(const std::vector<ScaleRecord>& records);  // label,water_pixels,factor
std::vector<ScaleRecord> parse_scales_csv(const std::string& text);

/// Filesystem-safe form of a series label.
std::string slugify(const std::string& label);

}  // namespace atde
