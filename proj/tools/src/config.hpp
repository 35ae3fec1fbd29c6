#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "kslab/apriori.hpp"
#include "kslab/exponents.hpp"
#include "kslab/interpolation.hpp"
#include "kslab/solver.hpp"

namespace kslab::cli {

using json = nlohmann::json;

/// Reads a config document and checks its "schema" field against
/// "kslab/<command>/1".
json load_config(const std::filesystem::path& path, const std::string& command);
void check_schema(const json& cfg, const std::string& command);

double get_number(const json& j, const std::string& key);
double get_number(const json& j, const std::string& key, double fallback);
int get_int(const json& j, const std::string& key, int fallback);
bool get_bool(const json& j, const std::string& key, bool fallback);
std::string get_string(const json& j, const std::string& key, const std::string& fallback);
std::vector<double> get_numbers(const json& j, const std::string& key, const std::vector<double>& fallback);
/// Number, or the strings "inf" / "infinity".
double get_extended(const json& j, const std::string& key, double fallback);

InterpParams parse_params(const json& j);
GeometrySpec parse_geometry(const json& j);
Bump parse_bump(const json& j);
EigenSum parse_eigen_sum(const json& j);
InitialData parse_initial(const json& j, const std::filesystem::path& base);
SolverConfig parse_solver_config(const json& cfg, const std::filesystem::path& base);

/// {"file": path} | {"grid": ..., "bump": ...} | {"grid": ..., "eigen": ...}
/// | {"grid": ..., "constant": c}. Relative paths resolve against `base`.
ScalarField parse_field(const json& j, const std::filesystem::path& base);

json to_json(const ExponentSet& e);
json to_json(const SolverConfig& cfg);

}  // namespace kslab::cli
