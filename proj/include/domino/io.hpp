#pragma once

#include <string>

#include "json.hpp"

#include "domino/enumerate.hpp"
#include "domino/sample.hpp"
#include "domino/tension.hpp"
#include "domino/varsolve.hpp"

namespace domino {

using nlohmann::json;

// Domain file: {"squares": [[x,y],...]} with squares sorted lexicographically;
// the generated cut system rides along for reproducibility.
json domain_to_json(const LatticeDomain& d);
DomainPtr domain_from_json(const json& j);

json tiling_to_json(const LatticeDomain& d, const Tiling& t);
Tiling tiling_from_json(const LatticeDomain& d, const json& j);

json height_to_json(const HeightFunction& h);

/// All floats in CSV artifacts carry 17 significant digits.
std::string format_double(double x);

std::string field_csv(const EmpiricalField& field);               // vertex, mean, variance
std::string r_histogram_csv(const EmpiricalField& field);         // R..., count
std::string census_csv(const LatticeDomain& d, const TilingCensus& c);
std::string tension_csv(int grid_n);                              // s, t, p_a..p_d, sigma
std::string solution_csv(const Mesh& mesh, const std::vector<double>& values);  // x, y, value
std::string frozen_csv(const Mesh& mesh, const std::vector<char>& mask);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace domino
