#include "padic/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const GridFunction& u) {
  const BallModel& m = u.model();
  out << "# padic-grid p=" << m.prime() << " N=" << m.ball_exponent() << " M=" << m.resolution() << '\n';
  out << "n,valuation,value\n";
  for (std::int64_t n = 0; n < m.order(); ++n) {
    out << n << ',';
    if (n == 0) {
      out << "inf";
    } else {
      out << -m.point_level(n);
    }
    out << ',' << format_double(u[n]) << '\n';
  }
}

namespace {

double parse_double(const std::string& s) {
  // strtod handles inf/nan and every %.17g output exactly
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw DomainError("malformed number '" + s + "' in grid CSV");
  return v;
}

}  // namespace

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty grid CSV");
  long long p = 0;
  int big_n = 0;
  int big_m = 0;
  if (std::sscanf(line.c_str(), "# padic-grid p=%lld N=%d M=%d", &p, &big_n, &big_m) != 3) {
    throw DomainError("grid CSV is missing the '# padic-grid' header");
  }
  BallModel model(p, big_n, big_m);
  if (!std::getline(in, line) || line != "n,valuation,value") throw DomainError("grid CSV column header mismatch");
  std::vector<double> values(static_cast<std::size_t>(model.order()));
  std::vector<bool> seen(values.size(), false);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, val, value;
    if (!std::getline(row, idx, ',') || !std::getline(row, val, ',') || !std::getline(row, value)) {
      throw DomainError("grid CSV row '" + line + "' does not have three columns");
    }
    long long n = -1;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), n);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || n < 0 || n >= model.order()) {
      throw DomainError("grid CSV index '" + idx + "' out of range");
    }
    if (seen[static_cast<std::size_t>(n)]) throw DomainError("grid CSV repeats index " + idx);
    seen[static_cast<std::size_t>(n)] = true;
    values[static_cast<std::size_t>(n)] = parse_double(value);
    ++rows;
  }
  if (rows != values.size()) throw DomainError("grid CSV has the wrong number of rows");
  return {model, std::move(values)};
}

nlohmann::json to_json(const GridFunction& u) {
  const BallModel& m = u.model();
  return {{"p", m.prime()},
          {"N", m.ball_exponent()},
          {"M", m.resolution()},
          {"values", std::vector<double>(u.values().begin(), u.values().end())}};
}

GridFunction grid_from_json(const nlohmann::json& j) {
  try {
    BallModel model(j.at("p").get<std::int64_t>(), j.at("N").get<int>(), j.at("M").get<int>());
    return {model, j.at("values").get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed grid JSON: ") + e.what());
  }
}

}  // namespace padic
