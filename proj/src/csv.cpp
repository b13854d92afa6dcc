#include "sg/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sg::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_series(std::ostream& os, const TimeSeries& s) {
  os << kSeriesHeader << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    write_row(os, {s.times[i], s.coherence[i], s.entropy_paper[i], s.entropy_purity[i],
                   s.sep_position[i], s.sep_momentum[i]});
  }
}

void write_profile(std::ostream& os, const Profile& p) {
  os << kProfileHeader << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    write_row(os, {p.z[i], p.density_plus[i], p.density_minus[i], p.density_total[i]});
  }
}

Table parse(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw std::runtime_error("csv: bad number '" + f + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace sg::csv
