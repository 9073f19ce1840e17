// Command-line driver: configuration in, artifacts out.  Each subcommand
// runs one stage of the pipeline and serializes its results under the
// configured output directory; exit codes follow the error taxonomy in
// errors.hpp (config 2, precondition 3, numeric 4, resource 5).

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinboson/config.hpp"
#include "spinboson/closed_form.hpp"
#include "spinboson/hamiltonian.hpp"
#include "spinboson/io.hpp"
#include "spinboson/oracle.hpp"
#include "spinboson/perturbation.hpp"
#include "spinboson/verdict.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spinboson;

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
  return dir;
}

std::ofstream open_artifact(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write artifact '" + path.string() + "'");
  return out;
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  auto out = open_artifact(path);
  out << doc.dump(2) << '\n';
}

ordered_json vec3_json(const Eigen::Vector3d& v) {
  return ordered_json::array({v[0], v[1], v[2]});
}

EigenOptions eigen_options(const RunConfig& cfg) {
  EigenOptions opts;
  opts.tol = cfg.eig_tol;
  opts.dense_threshold = cfg.dense_threshold;
  opts.max_restarts = cfg.max_restarts;
  opts.seed = cfg.seed;
  return opts;
}

ordered_json series_json(const SeriesFit& series) {
  ordered_json j;
  j["name"] = series.name;
  j["deviations"] = series.deviations;
  j["slope"] = series.fit.slope;
  j["intercept"] = series.fit.intercept;
  j["points_used"] = series.fit.points_used;
  j["degenerate"] = series.fit.degenerate;
  return j;
}

int cmd_expand(const RunConfig& cfg) {
  validate_expansion_request(cfg);
  const MomentumGrid grid = build_grid(cfg.chi, cfg.radial_order,
                                       cfg.angular_order,
                                       cfg.effective_r_max());
  const ModelOperators ops =
      assemble(grid, cfg.chi, cfg.spins, cfg.n_max, cfg.state_budget);
  const ExpansionResult res = expand(ops, cfg.order_p);

  const auto dir = ensure_out_dir(cfg);
  {
    auto out = open_artifact(dir / "grid.csv");
    write_grid_csv(out, grid);
  }
  ordered_json vectors = ordered_json::array();
  for (int j = 0; j <= res.max_step; ++j) {
    const std::string file = "u_" + std::to_string(j) + ".csv";
    auto out = open_artifact(dir / file);
    write_vector_csv(out, res.u[j]);
    ordered_json entry;
    entry["step"] = j;
    entry["file"] = file;
    entry["norm"] = res.u[j].norm();
    vectors.push_back(std::move(entry));
  }

  ordered_json doc;
  doc["generated_at"] = timestamp_utc();
  doc["config"] = config_to_json(cfg);
  doc["dimension"] = static_cast<std::int64_t>(ops.dim());
  doc["modes"] = grid.mode_count();
  doc["p"] = res.order;
  doc["capped"] = res.capped;
  doc["max_step"] = res.max_step;
  doc["lambdas"] = res.lambda;
  doc["relation_residuals"] = res.relation_residual;
  doc["solvability_imag_defects"] = res.lambda_imag_defect;
  doc["remainder"] = {{"constant", res.remainder_constant},
                      {"exponent", res.remainder_exponent}};
  doc["grid_file"] = "grid.csv";
  doc["vectors"] = std::move(vectors);
  write_json(dir / "expansion.json", doc);

  std::printf("expansion to order p = %d on %d modes (dimension %lld)%s\n",
              res.order, grid.mode_count(),
              static_cast<long long>(ops.dim()),
              res.capped ? " [infrared-open, capped]" : "");
  for (std::size_t j = 1; j <= res.lambda.size(); ++j)
    std::printf("  lambda_%zu = %s\n", j,
                format_double(res.lambda[j - 1]).c_str());
  double worst = 0.0;
  for (double r : res.relation_residual) worst = std::max(worst, r);
  std::printf("  worst relation residual %.3e\n", worst);
  std::printf("  artifacts in %s\n", dir.string().c_str());
  return 0;
}

int cmd_closedform(const RunConfig& cfg) {
  QuadratureControl ctrl;
  ctrl.rel_tol = cfg.quad_rel_tol;
  ctrl.max_intervals = cfg.quad_max_intervals;

  const double c_value =
      self_energy_constant(cfg.chi, cfg.spins.beta_norm(), ctrl);
  const double lambda2 = lambda2_closed(cfg.chi, cfg.spins, ctrl);

  ordered_json pairs = ordered_json::array();
  const int n = cfg.spins.count();
  for (int l = 0; l < n; ++l)
    for (int m = l; m < n; ++m) {
      const Eigen::Vector3d dx =
          cfg.spins.positions[l] - cfg.spins.positions[m];
      ordered_json entry;
      entry["l"] = l;
      entry["m"] = m;
      entry["separation"] = dx.norm();
      entry["value"] =
          pair_interaction(cfg.chi, dx, cfg.spins.beta_direction(), ctrl);
      pairs.push_back(std::move(entry));
    }

  ordered_json points = ordered_json::array();
  for (const auto& x : cfg.field_points) {
    ordered_json entry;
    entry["x"] = vec3_json(x);
    entry["magnetic"] = vec3_json(magnetic_field(cfg.chi, cfg.spins, x,
                                                 cfg.field_h, ctrl));
    entry["vector_potential"] = vec3_json(
        vector_potential(cfg.chi, cfg.spins, x, cfg.field_h, ctrl));
    entry["current"] = vec3_json(current_density(cfg.chi, cfg.spins, x,
                                                 cfg.field_h, ctrl));
    entry["electric"] = vec3_json(electric_field(x, cfg.field_h));
    entry["density"] = smeared_density(cfg.chi, cfg.spins, x, ctrl);
    points.push_back(std::move(entry));
  }

  ordered_json doc;
  doc["generated_at"] = timestamp_utc();
  doc["config"] = config_to_json(cfg);
  doc["beta_norm"] = cfg.spins.beta_norm();
  doc["self_energy_constant"] = c_value;
  doc["lambda2"] = lambda2;
  doc["pair_interactions"] = std::move(pairs);
  doc["field_points"] = std::move(points);

  const auto dir = ensure_out_dir(cfg);
  write_json(dir / "closedform.json", doc);

  std::printf("self-energy constant C = %s\n",
              format_double(c_value).c_str());
  std::printf("closed-form lambda_2  = %s\n", format_double(lambda2).c_str());
  std::printf("  %d spins, %zu field points; artifacts in %s\n", n,
              cfg.field_points.size(), dir.string().c_str());
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  validate_expansion_request(cfg);
  const MomentumGrid grid = build_grid(cfg.chi, cfg.radial_order,
                                       cfg.angular_order,
                                       cfg.effective_r_max());
  const ModelOperators ops =
      assemble(grid, cfg.chi, cfg.spins, cfg.n_max, cfg.state_budget);
  const ExpansionResult res = expand(ops, cfg.order_p);
  const ConvergenceReport report = convergence_study(
      ops, res, cfg.h_list, {}, eigen_options(cfg), cfg.threads);

  const auto dir = ensure_out_dir(cfg);
  {
    auto out = open_artifact(dir / "oracle.csv");
    out << "h,energy,gap,iterations,overlap_abs,overlap_rate,photon_number\n";
    for (const auto& row : report.rows)
      out << format_double(row.h) << ',' << format_double(row.energy) << ','
          << format_double(row.gap) << ',' << row.iterations << ','
          << format_double(row.overlap_abs) << ','
          << format_double(row.overlap_rate) << ','
          << format_double(row.number_expectation) << '\n';
  }

  ordered_json doc;
  doc["generated_at"] = timestamp_utc();
  doc["config"] = config_to_json(cfg);
  doc["h_list"] = report.h_list;
  doc["lambdas"] = res.lambda;
  ordered_json energy = ordered_json::array();
  for (const auto& series : report.energy_series)
    energy.push_back(series_json(series));
  doc["energy_series"] = std::move(energy);
  doc["overlap_series"] = series_json(report.overlap_series);
  doc["overlap_rate_spread"] = report.overlap_rate_spread;
  doc["table_file"] = "oracle.csv";
  write_json(dir / "slopes.json", doc);

  std::printf("convergence study over %zu h values (dimension %lld)\n",
              report.h_list.size(), static_cast<long long>(ops.dim()));
  for (const auto& series : report.energy_series)
    std::printf("  %s: slope %.3f over %d points\n", series.name.c_str(),
                series.fit.slope, series.fit.points_used);
  std::printf("  state_minus_u0: slope %.3f, rate spread %.4f\n",
              report.overlap_series.fit.slope, report.overlap_rate_spread);
  std::printf("  artifacts in %s\n", dir.string().c_str());
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  VerdictBattery battery(eigen_options(cfg), cfg.threads);
  const std::vector<VerdictRow> rows = battery.run(cfg.compare_rows);

  ordered_json table = ordered_json::array();
  int passed = 0;
  for (const auto& row : rows) {
    ordered_json entry;
    entry["id"] = row.id;
    entry["name"] = row.name;
    entry["statement"] = row.statement;
    entry["measured"] = row.measured;
    entry["threshold"] = row.threshold;
    entry["comparator"] = row.comparator;
    entry["pass"] = row.pass;
    entry["detail"] = row.detail;
    table.push_back(std::move(entry));
    if (row.pass) ++passed;
  }

  // No timestamp here: identical config and seed must reproduce this file
  // byte for byte.
  ordered_json doc;
  doc["config"] = config_to_json(cfg);
  doc["rows"] = std::move(table);
  doc["passed"] = passed;
  doc["total"] = static_cast<int>(rows.size());

  const auto dir = ensure_out_dir(cfg);
  write_json(dir / "verdict.json", doc);

  std::fputs(format_verdict_table(rows).c_str(), stdout);
  std::printf("  artifacts in %s\n", dir.string().c_str());
  return passed == static_cast<int>(rows.size()) ? 0 : 1;
}

int cmd_fieldmap(const RunConfig& cfg) {
  QuadratureControl ctrl;
  ctrl.rel_tol = cfg.quad_rel_tol;
  ctrl.max_intervals = cfg.quad_max_intervals;

  const auto dir = ensure_out_dir(cfg);
  ordered_json samples = ordered_json::array();
  double max_norm = 0.0;
  {
    auto out = open_artifact(dir / "fieldmap.csv");
    out << "x,y,z,Bx,By,Bz\n";
    for (const auto& x : cfg.field_points) {
      const Eigen::Vector3d b =
          magnetic_field(cfg.chi, cfg.spins, x, cfg.field_h, ctrl);
      out << format_double(x[0]) << ',' << format_double(x[1]) << ','
          << format_double(x[2]) << ',' << format_double(b[0]) << ','
          << format_double(b[1]) << ',' << format_double(b[2]) << '\n';
      max_norm = std::max(max_norm, b.norm());

      ordered_json entry;
      entry["x"] = vec3_json(x);
      entry["magnetic"] = vec3_json(b);
      entry["vector_potential"] = vec3_json(
          vector_potential(cfg.chi, cfg.spins, x, cfg.field_h, ctrl));
      entry["current"] = vec3_json(current_density(cfg.chi, cfg.spins, x,
                                                   cfg.field_h, ctrl));
      entry["electric"] = vec3_json(electric_field(x, cfg.field_h));
      samples.push_back(std::move(entry));
    }
  }

  ordered_json doc;
  doc["generated_at"] = timestamp_utc();
  doc["config"] = config_to_json(cfg);
  doc["h"] = cfg.field_h;
  doc["rows"] = static_cast<int>(cfg.field_points.size());
  doc["max_field_norm"] = max_norm;
  doc["table_file"] = "fieldmap.csv";
  doc["samples"] = std::move(samples);
  write_json(dir / "fieldmap.json", doc);

  std::printf("sampled %zu points, max |B| = %s; artifacts in %s\n",
              cfg.field_points.size(), format_double(max_norm).c_str(),
              dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-boson ground-state toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::int64_t seed_override = -1;
  int threads_override = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (JSON)");
    sub->add_option("--out", out_override, "output directory override");
    sub->add_option("--seed", seed_override, "seed override (nonnegative)");
    sub->add_option("--threads", threads_override,
                    "worker thread override (positive)");
  };

  CLI::App* expand_cmd = app.add_subcommand(
      "expand", "run the coefficient recursion and dump the expansion");
  CLI::App* closed_cmd = app.add_subcommand(
      "closedform", "evaluate the closed-form constants and fields");
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "diagonalize across the h list and fit convergence rates");
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "run the verification battery and write the verdict table");
  CLI::App* fieldmap_cmd = app.add_subcommand(
      "fieldmap", "sample the classical magnetic field at the configured "
                  "points");
  for (CLI::App* sub :
       {expand_cmd, closed_cmd, oracle_cmd, compare_cmd, fieldmap_cmd})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg =
        config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (threads_override > 0) cfg.threads = threads_override;

    if (expand_cmd->parsed()) return cmd_expand(cfg);
    if (closed_cmd->parsed()) return cmd_closedform(cfg);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg);
    if (compare_cmd->parsed()) return cmd_compare(cfg);
    if (fieldmap_cmd->parsed()) return cmd_fieldmap(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
