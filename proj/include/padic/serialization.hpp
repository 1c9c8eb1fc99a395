#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "padic/grid_function.hpp"

namespace padic {

// CSV layout:
//   # padic-grid p=<p> N=<N> M=<M>
//   n,valuation,value
//   0,inf,<value>
//   1,<v_p(p^{-N} n)>,<value>
// Values are written with 17 significant digits, which round-trips every double.
void write_csv(std::ostream& out, const GridFunction& u);
GridFunction read_csv(std::istream& in);

// {"p":..,"N":..,"M":..,"values":[..]}
nlohmann::json to_json(const GridFunction& u);
GridFunction grid_from_json(const nlohmann::json& j);

/// Shortest-safe decimal for a double (17 significant digits).
std::string format_double(double x);

}  // namespace padic
