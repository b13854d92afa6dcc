#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sg/experiment.hpp"

namespace sg::csv {

inline constexpr std::string_view kSeriesHeader =
    "t_s,coherence,entropy_paper,entropy_purity,sep_position,sep_momentum";
inline constexpr std::string_view kProfileHeader = "z_m,density_plus,density_minus,density_total";

/// Locale-independent scientific notation with 17 significant digits
/// (round-trips every double).
std::string format_number(double v);

void write_series(std::ostream& os, const TimeSeries& s);
void write_profile(std::ostream& os, const Profile& p);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a header line plus numeric rows. Throws std::runtime_error on a
/// malformed field or ragged row.
Table parse(std::istream& is);

}  // namespace sg::csv
