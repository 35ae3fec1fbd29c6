#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "kslab/solver.hpp"

namespace kslab::cli {

/// State shared by one subcommand invocation.
struct Context {
  json config;
  std::filesystem::path out_dir;
  std::filesystem::path base;  // directory relative config paths resolve against
  std::uint64_t seed = 0;
  std::ostream* out = nullptr;
  std::vector<std::string> artifacts;  // relative to out_dir
  json summary = json::object();
  int exit_code = 0;

  std::filesystem::path artifact(const std::string& name);
};

void run_exponents(Context& ctx);
void run_verify_ineq(Context& ctx);
void run_modulus(Context& ctx);
void run_extend(Context& ctx);
void run_simulate(Context& ctx);
void run_linear_v(Context& ctx);
void run_regularity(Context& ctx);
void run_embedding(Context& ctx);
void run_concentration(Context& ctx);

/// Prints the summary recorded in dir/manifest.json. Throws IoFailure when
/// the manifest is missing or unreadable.
void print_report(const std::filesystem::path& dir, std::ostream& out);

/// Rebuilds series, halt and snapshots of a simulate output directory.
RunReport load_run(const std::filesystem::path& dir);

/// "4h,8h,2.5e-2": a trailing h scales by the cell size.
std::vector<double> parse_radii(const std::string& text, double h);

void write_json(const std::filesystem::path& path, const json& j);
std::string g17(double v);

}  // namespace kslab::cli
