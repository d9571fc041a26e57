// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/experiments.hpp"

#include <zlib.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "marcinlab/bilinear.hpp"
#include "marcinlab/counterexamples.hpp"
#include "marcinlab/csv.hpp"
#include "marcinlab/grid.hpp"
#include "marcinlab/lorentz.hpp"
#include "marcinlab/maximal.hpp"
#include "marcinlab/rng.hpp"
#include "marcinlab/serialize.hpp"
#include "marcinlab/symbol_tools.hpp"

namespace marcinlab::cli {

namespace {

double param_double(const RunContext& ctx, const std::string& key, double fallback) {
  auto it = ctx.parameters.find(key);
  return it == ctx.parameters.end() ? fallback : std::stod(it->second);
}

long long param_int(const RunContext& ctx, const std::string& key, long long fallback) {
  auto it = ctx.parameters.find(key);
  return it == ctx.parameters.end() ? fallback : std::stoll(it->second);
}

std::string param_string(const RunContext& ctx, const std::string& key,
                         const std::string& fallback) {
  auto it = ctx.parameters.find(key);
  return it == ctx.parameters.end() ? fallback : it->second;
}

std::vector<double> param_double_list(const RunContext& ctx, const std::string& key,
                                      const std::string& fallback) {
  const std::string raw = param_string(ctx, key, fallback);
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t next = raw.find(',', pos);
    if (next == std::string::npos) next = raw.size();
    out.push_back(std::stod(raw.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list for --" + key);
  return out;
}

EstimateOptions estimate_options(const RunContext& ctx) {
  EstimateOptions opts;
  opts.restarts = static_cast<int>(param_int(ctx, "restarts", 12));
  opts.max_alternations = static_cast<int>(param_int(ctx, "alternations", 40));
  opts.max_power_iterations = static_cast<int>(param_int(ctx, "iters", 400));
  opts.tolerance = param_double(ctx, "tol", 1e-11);
  opts.seed = ctx.seed;
  return opts;
}

MultiplierOptions multiplier_options(const RunContext& ctx) {
  MultiplierOptions opts;
  opts.restarts = static_cast<int>(param_int(ctx, "mult-restarts", 4));
  opts.max_sweeps = static_cast<int>(param_int(ctx, "sweeps", 12));
  opts.max_inner_iterations = static_cast<int>(param_int(ctx, "inner", 20));
  opts.tolerance = param_double(ctx, "mult-tol", 1e-9);
  opts.seed = ctx.seed;
  return opts;
}

Matrix load_matrix(const RunContext& ctx) {
  const std::string path = param_string(ctx, "matrix", "");
  if (path.empty()) throw std::invalid_argument("--matrix FILE is required");
  return matrix_from_json(Json::parse(read_text_file(path)));
}

Symbol build_symbol(const RunContext& ctx, const PeriodicGrid& grid) {
  const std::string file = param_string(ctx, "symbol-file", "");
  if (!file.empty()) return symbol_table_from_json(Json::parse(read_text_file(file)));
  const std::string family = param_string(ctx, "family", "log");
  const double theta = param_double(ctx, "theta", 2.0);
  const int n = static_cast<int>(param_int(ctx, "n", 2));
  return marcinkiewicz_symbol(symbol_family_from_name(family), theta, n, &grid);
}

GridFunction load_or_make_function(const RunContext& ctx, const PeriodicGrid& grid,
                                   const std::string& key, std::uint64_t stream) {
  const std::string path = param_string(ctx, key, "");
  if (!path.empty()) {
    GridFunction f = grid_function_from_json(Json::parse(read_text_file(path)));
    if (!(f.grid() == grid)) throw std::invalid_argument(key + " grid does not match --grid");
    return f;
  }
  Rng rng(derive_seed(ctx.seed, stream));
  ComplexVector v(static_cast<std::size_t>(grid.points));
  for (Complex& x : v) x = rng.normal_complex();
  return GridFunction(grid, std::move(v));
}

std::string json_payload(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

void RunContext::emit(const std::string& name, const std::string& contents) {
  const std::filesystem::path path = std::filesystem::path(out_dir) / name;
  write_text_file(path.string(), contents);
  files.push_back(name);
}

void write_manifest(RunContext& ctx, int status, const std::string& error) {
  Json manifest;
  manifest["command"] = ctx.command;
  manifest["seed"] = ctx.seed;
  manifest["format"] = ctx.format;
  Json params = Json::object();
  for (const auto& [k, v] : ctx.parameters) params[k] = v;
  manifest["parameters"] = params;
  Json files = Json::array();
  for (const std::string& name : ctx.files) {
    const std::filesystem::path path = std::filesystem::path(ctx.out_dir) / name;
    const std::string contents = read_text_file(path.string());
    const unsigned long crc =
        crc32(0L, reinterpret_cast<const Bytef*>(contents.data()), contents.size());
    Json f;
    f["name"] = name;
    f["bytes"] = contents.size();
    f["crc32"] = crc;
    files.push_back(std::move(f));
  }
  manifest["files"] = std::move(files);
  manifest["status"] = status == kOk ? "ok" : "failed";
  if (!error.empty()) manifest["error"] = error;
  const std::filesystem::path path = std::filesystem::path(ctx.out_dir) / "manifest.json";
  write_text_file(path.string(), json_payload(manifest));
}

int run_h_estimate(RunContext& ctx) {
  const Matrix a = load_matrix(ctx);
  EstimateOptions opts = estimate_options(ctx);
  opts.attach_bv_upper = param_int(ctx, "bv-upper", 1) != 0;
  opts.attach_trivial_upper = param_int(ctx, "trivial-upper", 0) != 0;
  WeightSequence weights;
  if (ctx.parameters.count("weight-kind")) {
    const std::size_t len = static_cast<std::size_t>(
        std::max<long long>(param_int(ctx, "weight-length", 0),
                            std::max(a.rows, a.cols) + 1));
    weights = make_weight(weight_kind_from_name(param_string(ctx, "weight-kind", "log")),
                          param_double(ctx, "weight-theta", 2.0), len);
    opts.lorentz_weights = &weights;
  }
  const std::string mode_name = param_string(ctx, "mode", "strong");
  EstimateMode mode = EstimateMode::strong;
  if (mode_name == "weak") mode = EstimateMode::weak;
  else if (mode_name == "mixed") mode = EstimateMode::mixed;
  else if (mode_name != "strong") throw std::invalid_argument("unknown mode: " + mode_name);
  const double p = param_double(ctx, "p", 2.0);
  const double q = param_double(ctx, "q", 0.0);

  const long long t_low = param_int(ctx, "truncate-from", 0);
  const long long t_high = param_int(ctx, "truncate-to", 0);
  CsvTable table;
  if (t_high > 0) {
    // monotone sequence of centered truncations for offset-supported blocks
    table.header = {"truncation", "lower_bound", "converged"};
    for (long long t = std::max<long long>(1, t_low); t <= t_high; ++t) {
      const NormEstimate est =
          estimate_h(centered_truncation(a, static_cast<int>(t)), mode, p, q, opts);
      table.add_row({format_int(t), format_double(est.lower_bound),
                     est.converged ? "true" : "false"});
    }
    ctx.emit("h_estimate_truncations.csv", table.serialize());
    return kOk;
  }

  const NormEstimate est = estimate_h(a, mode, p, q, opts);
  ctx.emit("h_estimate.json", json_payload(norm_estimate_to_json(est)));
  table.header = {"quantity", "p", "q", "lower_bound", "upper_bound", "upper_provenance",
                  "converged"};
  table.add_row({est.quantity, format_double(est.p), format_double(est.q),
                 format_double(est.lower_bound),
                 est.upper_bound ? format_double(*est.upper_bound) : "",
                 est.upper_provenance, est.converged ? "true" : "false"});
  ctx.emit("h_estimate.csv", table.serialize());
  return kOk;
}

int run_oracle_check(RunContext& ctx) {
  const int trials = static_cast<int>(param_int(ctx, "trials", 20));
  const int levels = static_cast<int>(param_int(ctx, "levels", 3));
  const int max_rows = static_cast<int>(param_int(ctx, "rows-max", 3));
  const int max_cols = static_cast<int>(std::min<long long>(param_int(ctx, "cols-max", 3), levels));
  const double tol = param_double(ctx, "quality-tol", 1e-6);
  EstimateOptions opts = estimate_options(ctx);
  opts.restarts = static_cast<int>(param_int(ctx, "restarts", 24));
  opts.max_power_iterations = static_cast<int>(param_int(ctx, "iters", 2000));
  opts.tolerance = param_double(ctx, "tol", 1e-12);

  CsvTable table;
  table.header = {"trial", "rows", "cols", "estimate", "oracle", "abs_diff", "ok"};
  bool all_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(trial)));
    const int rows = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rows)));
    const int cols = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_cols)));
    Matrix a(rows, levels);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) a.at(r, c) = Complex{rng.normal(), 0.0};
    }
    EstimateOptions topts = opts;
    topts.seed = derive_seed(ctx.seed, 1000 + static_cast<std::uint64_t>(trial));
    const double oracle = exact_h2_oracle(a, DyadicSpace(levels));
    const NormEstimate est = estimate_h_strong(a, 2.0, topts);
    const double diff = std::abs(est.lower_bound - oracle);
    const bool ok = diff <= tol;
    all_ok = all_ok && ok;
    table.add_row({format_int(trial), format_int(rows), format_int(cols),
                   format_double(est.lower_bound), format_double(oracle), format_double(diff),
                   ok ? "true" : "false"});
  }
  ctx.emit("oracle_check.csv", table.serialize());
  return all_ok ? kOk : kQualityFailure;
}

int run_counterexample(RunContext& ctx) {
  const int n_min = static_cast<int>(param_int(ctx, "n-min", 2));
  const int n_max = static_cast<int>(param_int(ctx, "n-max", 10));
  const std::vector<double> thetas = param_double_list(ctx, "theta", "0,0.25,0.4");
  CsvTable table;
  table.header = {"n", "theta", "rows", "cols", "ratio", "target", "match"};
  Json reports = Json::array();
  bool all_match = true;
  for (double theta : thetas) {
    for (int n = n_min; n <= n_max; ++n) {
      const CounterexampleReport r = verify_counterexample(n, theta);
      all_match = all_match && r.exact_match;
      table.add_row({format_int(n), format_double(theta), format_int(r.rows),
                     format_int(r.cols), format_double(r.ratio), format_double(r.target),
                     r.exact_match ? "true" : "false"});
      reports.push_back(counterexample_report_to_json(r));
    }
  }
  ctx.emit("counterexample.csv", table.serialize());
  if (ctx.format == "json") ctx.emit("counterexample.json", json_payload(reports));
  return all_match ? kOk : kQualityFailure;
}

int run_band_bound(RunContext& ctx) {
  const int size_min = static_cast<int>(param_int(ctx, "size-min", 4));
  const int size_max = static_cast<int>(param_int(ctx, "size-max", 12));
  const double theta = param_double(ctx, "theta", 2.0);
  const WeightKind kind = weight_kind_from_name(param_string(ctx, "kind", "log"));
  const WeightSequence w = make_weight(kind, theta, static_cast<std::size_t>(size_max) + 1);
  EstimateOptions opts = estimate_options(ctx);

  CsvTable table;
  table.header = {"size", "h_lower", "bv_upper", "trivial_upper", "lorentz_column",
                  "lorentz_crude", "converged"};
  for (int size = size_min; size <= size_max; ++size) {
    const Matrix a = band_matrix(w, size);
    EstimateOptions sopts = opts;
    sopts.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(size));
    const NormEstimate est = estimate_h_strong(a, 2.0, sopts);
    const ColumnBoundReport cb = lorentz_column_bound(a, w);
    table.add_row({format_int(size), format_double(est.lower_bound),
                   format_double(bv_upper_bound(a)), format_double(column_sup_upper_bound(a)),
                   format_double(cb.column_bound), format_double(cb.crude_bound),
                   est.converged ? "true" : "false"});
  }
  ctx.emit("band_bound.csv", table.serialize());
  return kOk;
}

int run_lorentz(RunContext& ctx) {
  const std::size_t horizon = static_cast<std::size_t>(param_int(ctx, "horizon", 1 << 20));
  const WeightKind kind = weight_kind_from_name(param_string(ctx, "kind", "log"));
  WeightSequence w;
  if (kind == WeightKind::explicit_values) {
    w = make_weight_explicit(param_double_list(ctx, "values", "1"));
  } else {
    w = make_weight(kind, param_double(ctx, "theta", 2.0), horizon);
  }
  const ConditionReport report = check_conditions(w, std::min(horizon, w.length()));
  Json j;
  j["weight"] = weight_spec_to_json(w);
  j["cdn1_empirical_constant"] = report.cdn1_empirical_constant;
  j["cdn2_partial_sum"] = report.cdn2_partial_sum;
  j["cdn2_convergent"] = report.cdn2_convergent;
  ctx.emit("lorentz_conditions.json", json_payload(j));
  CsvTable table;
  table.header = {"block", "block_sum", "scaled_block_sum"};
  for (std::size_t m = 0; m < report.block_sums.size(); ++m) {
    table.add_row({format_int(static_cast<long long>(m)), format_double(report.block_sums[m]),
                   format_double(static_cast<double>(m + 1) * report.block_sums[m])});
  }
  ctx.emit("lorentz_blocks.csv", table.serialize());
  return kOk;
}

int run_lp_decay(RunContext& ctx) {
  const int points = static_cast<int>(param_int(ctx, "grid", 1024));
  const int base = static_cast<int>(param_int(ctx, "base", 2));
  const int max_offset = static_cast<int>(param_int(ctx, "max-offset", 5));
  PeriodicGrid grid(points);
  PowerIterationOptions opts;
  opts.seed = ctx.seed;
  opts.max_iterations = static_cast<int>(param_int(ctx, "iters", 4000));
  CsvTable table;
  table.header = {"j", "norm", "log2_norm", "converged"};
  for (int j = 0; j <= max_offset; ++j) {
    const OperatorNormResult r = cross_norm_mart_lp(grid, base, base + j, opts);
    table.add_row({format_int(j), format_double(r.value), format_double(std::log2(r.value)),
                   r.converged ? "true" : "false"});
  }
  ctx.emit("lp_decay.csv", table.serialize());
  return kOk;
}

int run_vr_decay(RunContext& ctx) {
  const int points = static_cast<int>(param_int(ctx, "grid", 1024));
  const int max_shift = static_cast<int>(param_int(ctx, "max-shift", 5));
  const bool adjoint = param_int(ctx, "adjoint", 0) != 0;
  PeriodicGrid grid(points);
  PowerIterationOptions opts;
  opts.seed = ctx.seed;
  opts.max_iterations = static_cast<int>(param_int(ctx, "iters", 4000));
  CsvTable table;
  table.header = {"r", "norm", "log2_norm", "converged"};
  for (int r = -max_shift; r <= max_shift; ++r) {
    const OperatorNormResult res = cross_norm_vr(grid, r, adjoint, opts);
    table.add_row({format_int(r), format_double(res.value), format_double(std::log2(res.value)),
                   res.converged ? "true" : "false"});
  }
  ctx.emit("vr_decay.csv", table.serialize());
  return kOk;
}

int run_bilinear_apply(RunContext& ctx) {
  const int points = static_cast<int>(param_int(ctx, "grid", 256));
  PeriodicGrid grid(points);
  const Symbol sigma = build_symbol(ctx, grid);
  const GridFunction f = load_or_make_function(ctx, grid, "f", 11);
  const GridFunction g = load_or_make_function(ctx, grid, "g", 12);
  const GridFunction w = apply_bilinear(sigma, f, g);
  ctx.emit("bilinear_output.json", json_payload(grid_function_to_json(w)));
  CsvTable table;
  table.header = {"x", "re", "im"};
  for (int i = 0; i < points; ++i) {
    table.add_row({format_double(grid.period * i / points),
                   format_double(w.values()[static_cast<std::size_t>(i)].real()),
                   format_double(w.values()[static_cast<std::size_t>(i)].imag())});
  }
  ctx.emit("bilinear_output.csv", table.serialize());
  if (param_int(ctx, "reference", 0) != 0) {
    const GridFunction slow = apply_bilinear_reference(sigma, f, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      worst = std::max(worst, std::abs(w.values()[i] - slow.values()[i]));
    }
    Json j;
    j["max_abs_difference"] = worst;
    ctx.emit("bilinear_reference_check.json", json_payload(j));
    if (worst > 1e-10 * std::max(1.0, slow.norm_inf())) return kQualityFailure;
  }
  return kOk;
}

int run_equivalence(RunContext& ctx) {
  const std::string family = param_string(ctx, "family", "sign");
  const double p1 = param_double(ctx, "p1", 2.0);
  const double p2 = param_double(ctx, "p2", 2.0);
  MultiplierOptions mopts = multiplier_options(ctx);
  EstimateOptions eopts = estimate_options(ctx);
  eopts.attach_bv_upper = true;

  CsvTable table;
  table.header = {"parameter", "grid_points", "h_lower", "h_upper", "certificate", "ratio",
                  "log2_parameter", "log2_h_lower", "log2_certificate"};
  auto add = [&table](const EquivalenceRow& row) {
    table.add_row({format_double(row.parameter), format_int(row.grid_points),
                   format_double(row.h_lower),
                   row.h_upper ? format_double(*row.h_upper) : "",
                   format_double(row.certificate), format_double(row.ratio),
                   format_double(std::log2(row.parameter)), format_double(std::log2(row.h_lower)),
                   format_double(std::log2(row.certificate))});
  };

  if (family == "sign") {
    const double theta = param_double(ctx, "theta", 0.25);
    const int n_min = static_cast<int>(param_int(ctx, "n-min", 2));
    const int n_max = static_cast<int>(param_int(ctx, "n-max", 4));
    for (int n = n_min; n <= n_max; ++n) {
      const Matrix a = sign_matrix(n, theta);
      // every row needs its own dyadic band: 2^n rows, products must not wrap
      const int rows = 1 << n;
      if (rows + 3 > 22) throw std::length_error("sign family member exceeds the grid budget");
      PeriodicGrid grid(1 << (rows + 3));
      MultiplierOptions nm = mopts;
      nm.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(n));
      EstimateOptions ne = eopts;
      ne.seed = nm.seed;
      add(equivalence_row(a, grid, static_cast<double>(n), p1, p2, nm, ne));
    }
  } else if (family == "diag") {
    const int bands = static_cast<int>(param_int(ctx, "bands", 2));
    const std::vector<double> scales = param_double_list(ctx, "scales", "1,2,4,8");
    PeriodicGrid grid(static_cast<int>(param_int(ctx, "grid", 128)));
    for (double c : scales) {
      Matrix a(bands, bands, 1, 1);
      for (int i = 0; i < bands; ++i) a.at(i, i) = Complex{c, 0.0};
      add(equivalence_row(a, grid, c, p1, p2, mopts, eopts));
    }
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }
  ctx.emit("equivalence.csv", table.serialize());
  return kOk;
}

int run_resynth(RunContext& ctx) {
  const double theta = param_double(ctx, "theta", 2.0);
  const int quadrature = static_cast<int>(param_int(ctx, "quadrature", 256));
  const int band_low = static_cast<int>(param_int(ctx, "band-low", 0));
  const int band_high = static_cast<int>(param_int(ctx, "band-high", 3));
  const int samples = static_cast<int>(param_int(ctx, "samples", 5));
  const std::vector<double> cutoff_list = param_double_list(ctx, "cutoffs", "0,1,2,4,8,16");
  int max_cutoff = 0;
  for (double c : cutoff_list) max_cutoff = std::max(max_cutoff, static_cast<int>(c));

  const Symbol sigma = marcinkiewicz_symbol(SymbolFamily::log_theta, theta);
  const CoefficientTable table = fourier_coefficients(sigma, band_low - 3, band_high + 3,
                                                      band_low - 3, band_high + 3, max_cutoff,
                                                      quadrature);
  CsvTable out;
  out.header = {"cutoff", "sup_error", "samples"};
  for (double c : cutoff_list) {
    const ResynthesisReport r = resynthesis_error(sigma, table, static_cast<int>(c), band_low,
                                                  band_high, samples);
    out.add_row({format_int(static_cast<long long>(c)), format_double(r.sup_error),
                 format_int(r.samples)});
  }
  ctx.emit("resynth.csv", out.serialize());
  if (param_int(ctx, "dump-table", 0) != 0) {
    ctx.emit("coefficients.json", json_payload(coefficient_table_to_json(table)));
  }
  return kOk;
}

int run_paraproduct(RunContext& ctx) {
  const int points = static_cast<int>(param_int(ctx, "grid", 256));
  PeriodicGrid grid(points);
  const ParaproductSide side = param_string(ctx, "side", "lower") == "upper"
                                   ? ParaproductSide::upper
                                   : ParaproductSide::lower;
  // band-limited random inputs keep every partition identity in range
  const BandRange range = paraproduct_band_range(grid);
  const BumpKit bumps;
  auto band_limited = [&](std::uint64_t stream) {
    Rng local(derive_seed(ctx.seed, stream));
    ComplexVector coeffs(static_cast<std::size_t>(grid.points), Complex{0.0, 0.0});
    for (int m = 0; m < grid.points; ++m) {
      const double xi = std::abs(grid.frequency(m));
      double weight = 0.0;
      for (int j = range.low + 1; j <= range.high; ++j) {
        weight += bumps.phi_hat(std::pow(2.0, -j) * xi);
      }
      if (weight >= 1.0 - 1e-12) {
        coeffs[static_cast<std::size_t>(m)] = local.unit_phase();
      }
    }
    return GridFunction::from_coefficients(grid, std::move(coeffs));
  };
  const GridFunction f = band_limited(21);
  const GridFunction g = band_limited(22);

  const GridFunction via_bands = paraproduct(f, g, side);
  const GridFunction via_symbol = apply_bilinear(paraproduct_symbol(grid, side), f, g);
  double path_diff = 0.0;
  for (std::size_t i = 0; i < via_bands.size(); ++i) {
    path_diff = std::max(path_diff, std::abs(via_bands.values()[i] - via_symbol.values()[i]));
  }

  CsvTable table;
  table.header = {"band", "summand_norm", "annulus_ok"};
  bool spectrum_ok = true;
  for (int j = range.low + 3; j <= range.high; ++j) {
    const GridFunction s = paraproduct_summand(f, g, j);
    const ComplexVector& sc = s.coefficients();
    bool ok = true;
    const double top = s.norm_inf();
    for (int m = 0; m < grid.points; ++m) {
      const double z = std::abs(grid.frequency(m));
      if (z >= std::pow(2.0, j - 2) && z <= std::pow(2.0, j + 2)) continue;
      if (std::abs(sc[static_cast<std::size_t>(m)]) > 1e-12 * std::max(1.0, top)) ok = false;
    }
    spectrum_ok = spectrum_ok && ok;
    table.add_row({format_int(j), format_double(s.norm_p(2.0)), ok ? "true" : "false"});
  }
  ctx.emit("paraproduct_summands.csv", table.serialize());
  Json j;
  j["path_difference"] = path_diff;
  j["spectrum_confined"] = spectrum_ok;
  ctx.emit("paraproduct_check.json", json_payload(j));
  const bool ok = spectrum_ok && path_diff <= 1e-9 * std::max(1.0, via_bands.norm_inf());
  return ok ? kOk : kQualityFailure;
}

int run_symbol_h(RunContext& ctx) {
  const std::vector<double> ranges = param_double_list(ctx, "scale-ranges", "2,4");
  HNormOptions opts;
  opts.samples_per_axis = static_cast<int>(param_int(ctx, "samples", 2));
  opts.derivative_order = static_cast<int>(param_int(ctx, "deriv-order", 0));
  opts.estimate = estimate_options(ctx);
  opts.estimate.restarts = static_cast<int>(param_int(ctx, "restarts", 3));
  opts.estimate.max_alternations = 10;

  PeriodicGrid grid(static_cast<int>(param_int(ctx, "grid", 256)));
  const Symbol sigma = build_symbol(ctx, grid);
  CsvTable table;
  table.header = {"scale_range", "value", "base_term"};
  for (double jr : ranges) {
    HNormOptions o = opts;
    o.scale_range = static_cast<int>(jr);
    const HNormReport r = h_norm_estimate(sigma, o);
    table.add_row({format_int(static_cast<long long>(jr)), format_double(r.value),
                   format_double(r.base_term)});
  }
  ctx.emit("symbol_h.csv", table.serialize());
  return kOk;
}

}  // namespace marcinlab::cli
