#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace qwalk::testkit {

inline constexpr std::uint64_t kSeed = 20240611;

/// Seeded triples spread over the full parameter box, endpoints excluded.
inline std::vector<CoinParameters> random_triples(std::size_t count, std::uint64_t seed = kSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> quarter(0.0, half_pi);
  std::uniform_real_distribution<double> half(0.0, pi);
  std::vector<CoinParameters> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = quarter(rng);
    const double varphi = half(rng);
    const double eta = quarter(rng);
    out.emplace_back(theta, varphi, eta);
  }
  return out;
}

/// Numeric table from a simulate CSV: '#' lines skipped, header row kept apart.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::out_of_range("no column " + name);
  }
};

inline CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (table.header.empty()) {
      table.header = fields;
      continue;
    }
    std::vector<double> row;
    for (const auto& v : fields) row.push_back(std::stod(v));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_csv(in);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qwalk::testkit
