#include "cli.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "kslab/error.hpp"
#include "kslab/exponents.hpp"

namespace kslab::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string config;
  std::string out;
  // exponents flags
  std::optional<int> N;
  std::optional<double> r, q, theta;
  // concentration flags
  std::string run;
  std::string radii;
  // modulus / extend flags
  std::string field;
  std::optional<double> p, margin;
  std::string report;
  // report
  std::string dir;
};

void prepare_output(const fs::path& dir, bool overwrite) {
  std::error_code ec;
  if (!overwrite && fs::exists(dir / "manifest.json", ec)) {
    throw IoFailure("output directory " + dir.string() + " already holds results (overwrite is false)");
  }
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create output directory " + dir.string() + ": " + ec.message());
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  using Runner = std::function<void(Context&)>;
  static const std::map<std::string, Runner> runners = {
      {"exponents", run_exponents},       {"verify-ineq", run_verify_ineq},
      {"modulus", run_modulus},           {"extend", run_extend},
      {"simulate", run_simulate},         {"linear-v", run_linear_v},
      {"regularity-check", run_regularity}, {"embedding-check", run_embedding},
      {"concentration", run_concentration}};

  if (command == "report") {
    print_report(o.dir, out);
    return kOk;
  }

  Context ctx;
  ctx.out = &out;
  if (!o.config.empty()) {
    ctx.config = load_config(o.config, command);
    ctx.base = fs::absolute(o.config).parent_path();
  } else {
    ctx.config = {{"schema", "kslab/" + command + "/1"}};
    ctx.base = fs::current_path();
  }
  // Flags override config entries.
  if (command == "exponents") {
    json& p = ctx.config;
    if (o.N) p["N"] = *o.N;
    if (o.r) p["r"] = *o.r;
    if (o.q) p["q"] = *o.q;
    if (o.theta) p["theta"] = *o.theta;
  }
  if (command == "concentration") {
    if (!o.run.empty()) ctx.config["run"] = fs::absolute(o.run).string();
    if (!o.radii.empty()) ctx.config["radii"] = o.radii;
  }
  std::string out_flag = o.out;
  if (command == "modulus" || command == "extend") {
    if (!o.field.empty()) {
      const json field_ref = {{"file", fs::absolute(o.field).string()}};
      if (command == "modulus") {
        ctx.config["fields"] = json::array({field_ref});
      } else {
        ctx.config["field"] = field_ref;
      }
    }
    if (o.p) ctx.config["p"] = *o.p;
    if (o.margin) ctx.config["margin"] = *o.margin;
    if (!o.report.empty()) ctx.config["report_name"] = fs::absolute(o.report).string();
    // A file-like --out names the primary artifact; its directory receives the rest.
    const fs::path of(out_flag);
    if (!out_flag.empty() && of.has_extension()) {
      ctx.config[command == "modulus" ? "curve_name" : "extended_name"] = of.filename().string();
      out_flag = of.has_parent_path() ? of.parent_path().string() : ".";
    }
  }
  ctx.seed = static_cast<std::uint64_t>(get_number(ctx.config, "seed", 0.0));

  std::string out_dir = out_flag.empty() ? get_string(ctx.config, "output_dir", "") : out_flag;
  if (out_dir.empty() && command == "concentration") out_dir = (fs::path(get_string(ctx.config, "run", "")) / "concentration").string();
  if (out_dir.empty() && command == "exponents") {
    // Flags only: print, write nothing.
    *ctx.out << to_key_value(compute_exponents(parse_params(ctx.config)));
    return kOk;
  }
  if (out_dir.empty()) throw InvalidInput(command + ": no output directory (set output_dir or pass --out)");
  ctx.out_dir = fs::path(out_dir).is_absolute() || !out_flag.empty() ? fs::path(out_dir) : ctx.base / out_dir;
  prepare_output(ctx.out_dir, get_bool(ctx.config, "overwrite", true));

  const auto start = std::chrono::steady_clock::now();
  runners.at(command)(ctx);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const json manifest = {{"tool", "kslab"},
                         {"version", kVersion},
                         {"command", command},
                         {"config", ctx.config},
                         {"seed", ctx.seed},
                         {"wall_time_s", wall},
                         {"artifacts", ctx.artifacts},
                         {"summary", ctx.summary},
                         {"exit_code", ctx.exit_code}};
  write_json(ctx.out_dir / "manifest.json", manifest);
  return ctx.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kslab: Keller-Segel equi-integrability laboratory", "kslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  const auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--out", o.out, "output directory (overrides output_dir)");
  };
  auto* exps = app.add_subcommand("exponents", "derived exponents of the interpolation inequality");
  with_config(exps);
  exps->add_option("--N", o.N, "dimension");
  exps->add_option("--r", o.r, "gradient exponent");
  exps->add_option("--q", o.q, "target exponent");
  exps->add_option("--theta", o.theta, "base exponent (required when q <= r)");
  auto* mod = app.add_subcommand("modulus", "equi-integrability modulus curves and family profile");
  with_config(mod);
  mod->add_option("--field", o.field, "snapshot file")->check(CLI::ExistingFile);
  mod->add_option("--p", o.p, "exponent");
  auto* ext = app.add_subcommand("extend", "first-order reflection extension");
  with_config(ext);
  ext->add_option("--field", o.field, "snapshot file")->check(CLI::ExistingFile);
  ext->add_option("--margin", o.margin, "padding width");
  ext->add_option("--report", o.report, "report CSV path");
  const std::pair<const char*, const char*> config_only[] = {
      {"verify-ineq", "interpolation inequality terms and fitted C_eps over a family"},
      {"simulate", "Keller-Segel run with series, snapshots and halt record"},
      {"linear-v", "linear v-equation with prescribed forcing"},
      {"regularity-check", "weighted maximal regularity constant over a forcing battery"},
      {"embedding-check", "Neumann embedding constant over a smooth battery"}};
  for (const auto& [name, help] : config_only) {
    auto* sub = app.add_subcommand(name, help);
    with_config(sub);
    sub->get_option("--config")->required();
  }
  auto* conc = app.add_subcommand("concentration", "concentration function and verdict of a simulate run");
  with_config(conc);
  conc->add_option("--run", o.run, "simulate output directory");
  conc->add_option("--radii", o.radii, "radius ladder, e.g. 4h,8h,16h,32h");
  auto* rep = app.add_subcommand("report", "print the summary of an artifact directory");
  rep->add_option("dir", o.dir, "artifact directory")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "kslab: " << e.what() << '\n';
    return kConfigInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o, out);
  } catch (const InvalidInput& e) {
    err << "kslab " << command << ": " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "kslab " << command << ": config: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const IoFailure& e) {
    err << "kslab " << command << ": " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "kslab " << command << ": " << e.what() << '\n';
    return kIoFailure;
  } catch (const NumericalFault& e) {
    err << "kslab " << command << ": numerical halt: " << e.what() << '\n';
    return kNumericalHalt;
  } catch (const std::exception& e) {
    err << "kslab " << command << ": " << e.what() << '\n';
    return kNumericalHalt;
  }
}

}  // namespace kslab::cli
