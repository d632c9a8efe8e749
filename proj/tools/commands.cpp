#include "commands.hpp"

#include "alr/core_shell.hpp"
#include "alr/plane.hpp"
#include "config.hpp"
#include "iohelp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <thread>

namespace alr::cli {

namespace {

ModalCoefficients inverse_square_data(int order) {
  ModalCoefficients h(order);
  for (int n = 1; n <= order; ++n) {
    h.plus[n - 1] = cplx(1.0 / (static_cast<double>(n) * n), 0.0);
  }
  return h;
}

// -------- parallel map over delta values --------

void parallel_over(int threads, int n_jobs, const std::function<void(int)>& job) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, n_jobs));
  if (workers == 1) {
    for (int i = 0; i < n_jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n_jobs) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// -------- data specs --------

struct Problem1Data {
  std::string name;
  int natural_order = 0;
  DataGenerator generate;  // data at any requested truncation
  TailDescriptor tail;
};

TailDescriptor parse_tail(const std::string& text) {
  if (text == "none") return {};
  if (text == "finite") return TailDescriptor::finite();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    char* end = nullptr;
    const double value = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() + arg.size() && !arg.empty()) {
      if (kind == "geometric") return TailDescriptor::geometric(value);
      if (kind == "power") return TailDescriptor::power(value);
    }
  }
  throw ConfigError("data.tail must be none, finite, geometric:RATIO, or power:P", 0);
}

Problem1Data resolve_data1(const KeyValueConfig& cfg, double R, RunManifest* manifest) {
  Problem1Data spec;
  const int modes = cfg.get_int("data.modes", 100);
  if (modes < 1) throw ConfigError("data.modes must be positive", 0);

  if (cfg.has("data.file")) {
    const std::string path = cfg.get_string("data.file");
    const std::string csv = read_text_file(path);
    if (manifest) manifest->add_input(path, csv);
    ModalCoefficients h = coefficients_from_csv(csv, "data");
    spec.name = "file:" + path;
    spec.natural_order = h.order();
    spec.generate = [h](int order) { return h.resized(order); };
    spec.tail = {};  // unknown unless data.tail says otherwise
  } else {
    const std::string gen = cfg.get_string("data.generator", "inverse_square");
    spec.name = gen;
    spec.natural_order = modes;
    if (gen == "inverse_square") {
      spec.generate = [modes](int order) {
        return inverse_square_data(std::min(order, modes)).resized(order);
      };
      spec.tail = TailDescriptor::power(2.0);
    } else if (gen == "designer") {
      const double alpha = cfg.get_double("data.alpha", 0.25);
      if (!(alpha > 0.0) || !(alpha < 0.5)) {
        throw ConfigError("data.alpha must lie in (0, 0.5)", 0);
      }
      spec.name += "(alpha=" + format_double(alpha) + ")";
      spec.generate = [alpha, R, modes](int order) {
        return design_incompatible_data(alpha, R, std::min(order, modes)).resized(order);
      };
      // |h_n| ~ R^{-n(1-2 alpha)} up to the 1/sqrt(n) factor.
      spec.tail = TailDescriptor::geometric(std::pow(R, -(1.0 - 2.0 * alpha)));
    } else if (gen == "finite_trig") {
      const int trig_modes = cfg.get_int("data.modes", 3);
      spec.natural_order = trig_modes;
      spec.generate = [trig_modes](int order) {
        ModalCoefficients h(order);
        for (int n = 1; n <= std::min(order, trig_modes); ++n) {
          h.plus[n - 1] = cplx(std::pow(0.5, n), 0.0);
        }
        return h;
      };
      spec.tail = TailDescriptor::finite();
    } else if (gen == "geometric") {
      const double ratio = cfg.get_double("data.ratio");
      if (!(ratio > 0.0) || !(ratio < 1.0)) {
        throw ConfigError("data.ratio must lie in (0, 1)", 0);
      }
      spec.name += "(ratio=" + format_double(ratio) + ")";
      spec.generate = [ratio, modes](int order) {
        ModalCoefficients h(order);
        double power = 1.0;
        for (int n = 1; n <= std::min(order, modes); ++n) {
          power *= ratio;
          h.plus[n - 1] = cplx(power, 0.0);
        }
        return h;
      };
      spec.tail = TailDescriptor::geometric(ratio);
    } else {
      throw ConfigError("unknown data.generator '" + gen + "'", 0);
    }
  }

  if (cfg.has("data.tail")) spec.tail = parse_tail(cfg.get_string("data.tail"));
  return spec;
}

struct Problem2Data {
  std::string name;
  std::shared_ptr<const RadialProfiles> profiles;
};

Problem2Data resolve_data2(const KeyValueConfig& cfg) {
  Problem2Data spec;
  const std::string gen = cfg.get_string("data.generator", "cutoff_harmonic");
  const int modes = cfg.get_int("data.modes", 100);
  const int nodes = cfg.get_int("data.nodes", 256);
  if (modes < 1) throw ConfigError("data.modes must be positive", 0);
  if (gen == "cutoff_harmonic") {
    spec.name = "cutoff_harmonic";
    const SourceProfiles folded = pushforward_source(cutoff_harmonic_source(modes), modes);
    spec.profiles = std::make_shared<RadialProfiles>(solve_disk_neumann(folded, nodes));
  } else if (gen == "vanishing_trace") {
    spec.name = "vanishing_trace";
    spec.profiles = std::make_shared<RadialProfiles>(solve_disk_neumann(vanishing_trace_profiles(), nodes));
  } else {
    throw ConfigError("unknown data.generator '" + gen + "' for the source problem", 0);
  }
  return spec;
}

KeyValueConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  KeyValueConfig cfg = path.empty() ? KeyValueConfig::parse_text("") : KeyValueConfig::parse_file(path);
  for (const std::string& assignment : overrides) cfg.apply_override(assignment);
  return cfg;
}

json config_echo(const KeyValueConfig& cfg) {
  json echo = json::object();
  for (const std::string& key : cfg.keys()) echo[key] = cfg.get_string(key);
  return echo;
}

json fit_to_json(const RateFit& fit, double delta_min, double delta_max) {
  json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["max_residual"] = fit.max_residual;
  j["points_used"] = fit.points_used;
  j["points_excluded"] = fit.points_excluded;
  j["reliable"] = fit.reliable;
  j["delta_window"] = {delta_min, delta_max};
  return j;
}

// -------- grid generation --------

struct GridResult {
  std::string csv;
  std::vector<double> magnitudes;  // |u| row-major, NaN outside the domain
  json quantiles;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
  return xs;
}

// evaluate(x, y) returns the field value; region(r) labels the point. Points
// with region "exterior" are outside the solution domain and emit nan.
GridResult make_grid(const std::vector<double>& xs,
                     const std::function<cplx(double, double)>& evaluate,
                     const std::function<const char*(double)>& region) {
  GridResult out;
  const int n = static_cast<int>(xs.size());
  out.magnitudes.reserve(static_cast<std::size_t>(n) * n);
  std::string& csv = out.csv;
  csv.reserve(static_cast<std::size_t>(n) * n * 48);
  csv += "# manifest: manifest.json\n";
  csv += "x,y,re_u,im_u,region\n";
  for (int j = 0; j < n; ++j) {
    const double y = xs[j];
    for (int i = 0; i < n; ++i) {
      const double x = xs[i];
      const double r = std::hypot(x, y);
      const char* label = region(r);
      csv += format_double(x);
      csv += ',';
      csv += format_double(y);
      csv += ',';
      if (std::string_view(label) == "exterior") {
        csv += "nan,nan,exterior\n";
        out.magnitudes.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        const cplx v = evaluate(x, y);
        csv += format_double(v.real());
        csv += ',';
        csv += format_double(v.imag());
        csv += ',';
        csv += label;
        csv += '\n';
        out.magnitudes.push_back(std::abs(v));
      }
    }
  }
  json q;
  q["q50"] = quantile(out.magnitudes, 0.50);
  q["q90"] = quantile(out.magnitudes, 0.90);
  q["q99"] = quantile(out.magnitudes, 0.99);
  q["max"] = quantile(out.magnitudes, 1.0);
  out.quantiles = std::move(q);
  return out;
}

void maybe_render(const GlobalOptions& opt, const std::filesystem::path& dir,
                  const std::string& stem, const GridResult& grid, int n) {
  if (!opt.render) return;
  const double hi = grid.quantiles["q99"].get<double>();
  write_magnitude_ppm(dir / (stem + ".ppm"), grid.magnitudes, n, n, 0.0, hi);
}

std::string grid_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "grid_%02d.csv", index);
  return buf;
}

}  // namespace

// -------- coefficient tables --------

std::string coefficients_to_csv(
    const std::vector<std::pair<std::string, const ModalCoefficients*>>& families) {
  std::string csv;
  csv += "# manifest: manifest.json\n";
  csv += "family,n,re,im\n";
  for (const auto& [family, coeffs] : families) {
    auto row = [&](int n, cplx v) {
      csv += family;
      csv += ',';
      csv += std::to_string(n);
      csv += ',';
      csv += format_double(v.real());
      csv += ',';
      csv += format_double(v.imag());
      csv += '\n';
    };
    row(0, coeffs->zero_mode);
    for (int n = 1; n <= coeffs->order(); ++n) {
      row(n, coeffs->plus[n - 1]);
      row(-n, coeffs->minus[n - 1]);
    }
  }
  return csv;
}

ModalCoefficients coefficients_from_csv(const std::string& csv, const std::string& family) {
  std::istringstream in(csv);
  std::string line;
  struct Entry {
    int n;
    cplx value;
  };
  std::vector<Entry> entries;
  int max_order = 0;
  bool header_seen = false;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "family,n,re,im") {
        throw std::runtime_error("coefficient table has unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string fam, n_text, re_text, im_text;
    if (!std::getline(row, fam, ',') || !std::getline(row, n_text, ',') ||
        !std::getline(row, re_text, ',') || !std::getline(row, im_text)) {
      throw std::runtime_error("malformed coefficient row at line " + std::to_string(line_number));
    }
    if (fam != family) continue;
    const int n = std::stoi(n_text);
    entries.push_back({n, cplx(std::strtod(re_text.c_str(), nullptr),
                               std::strtod(im_text.c_str(), nullptr))});
    max_order = std::max(max_order, std::abs(n));
  }
  if (!header_seen) throw std::runtime_error("coefficient table has no header");
  ModalCoefficients out(max_order);
  for (const Entry& e : entries) {
    if (e.n == 0) {
      out.zero_mode = e.value;
    } else if (e.n > 0) {
      out.plus[e.n - 1] = e.value;
    } else {
      out.minus[-e.n - 1] = e.value;
    }
  }
  return out;
}

// -------- figure commands --------

int cmd_figure1(const GlobalOptions& opt) {
  const double R = 3.0;
  const int modes = 100;
  const int n_grid = 400;
  const std::vector<double> deltas = {1e-14, 1e-18, 1e-20};
  const ModalCoefficients h = inverse_square_data(modes);
  const std::vector<double> xs = linspace(-R, R, n_grid);
  const std::filesystem::path dir = opt.out / "figure1";

  std::vector<GridResult> grids(deltas.size());
  std::vector<json> entries(deltas.size());
  parallel_over(opt.threads, static_cast<int>(deltas.size()), [&](int k) {
    SolverConfig config;
    config.R = R;
    config.delta = deltas[k];
    config.truncation = modes;
    const CoreShellSolution sol = solve_modes(config, h);
    const HarmonicField field = sol.field();
    grids[k] = make_grid(
        xs,
        [&](double x, double y) { return field.evaluate(PolarPoint{std::hypot(x, y), std::atan2(y, x)}); },
        [&](double r) -> const char* {
          if (r > R) return "exterior";
          if (r < 1.0 / R) return "core";
          if (r < 1.0) return "shell";
          return "matrix";
        });
    json entry;
    entry["delta"] = deltas[k];
    entry["N"] = modes;
    entry["grid"] = grid_name(k);
    entry["E_delta"] = sol.power();
    entry["grad_energy"] = sol.grad_energy();
    entry["gap_h_half"] = localized_resonance_gap(h, deltas[k], R);
    entry["abs_u"] = grids[k].quantiles;
    entries[k] = std::move(entry);
  });

  json config;
  config["R"] = R;
  config["modes"] = modes;
  config["window"] = {-R, R};
  config["grid_points"] = n_grid;
  config["deltas"] = deltas;
  RunManifest manifest("figure1", config);

  json summary;
  summary["command"] = "figure1";
  summary["verdict"] =
      to_string(classify_compatibility(h, R, TailDescriptor::power(2.0)).verdict);
  summary["runs"] = json::array();
  for (const json& entry : entries) summary["runs"].push_back(entry);
  summary["manifest"] = "manifest.json";

  for (std::size_t k = 0; k < grids.size(); ++k) {
    const std::string name = grid_name(static_cast<int>(k));
    write_text_file(dir / name, grids[k].csv);
    manifest.add_output(name, grids[k].csv);
    maybe_render(opt, dir, name.substr(0, name.size() - 4), grids[k], n_grid);
  }
  const std::string summary_text = summary.dump(2) + "\n";
  write_text_file(dir / "summary.json", summary_text);
  manifest.add_output("summary.json", summary_text);
  manifest.write(dir);
  return kExitOk;
}

int cmd_figure2(const GlobalOptions& opt) {
  const int modes = 100;
  const int n_grid = 400;
  const double half_window = 4.0;
  const std::vector<double> deltas = {1e-10, std::pow(10.0, -10.4), std::pow(10.0, -10.8)};
  const std::vector<double> xs = linspace(-half_window, half_window, n_grid);
  const std::filesystem::path dir = opt.out / "figure2";

  const SourceProfiles folded = pushforward_source(cutoff_harmonic_source(modes), modes);
  const auto profiles = std::make_shared<const RadialProfiles>(solve_disk_neumann(folded));
  const TraceReport trace_report = classify_trace(*profiles);

  std::vector<GridResult> grids(deltas.size());
  std::vector<json> entries(deltas.size());
  std::vector<double> grad_energies(deltas.size());
  parallel_over(opt.threads, static_cast<int>(deltas.size()), [&](int k) {
    const PlaneSolution sol = solve_plane_modes(profiles, deltas[k]);
    const PlaneField field(sol);
    grids[k] = make_grid(
        xs,
        [&](double x, double y) { return field.evaluate(PolarPoint{std::hypot(x, y), std::atan2(y, x)}); },
        [](double r) -> const char* { return r <= 1.0 ? "core" : "matrix"; });
    const double grad = grad_energy_disk(sol.a, 1.0);
    grad_energies[k] = grad;
    json entry;
    entry["delta"] = deltas[k];
    entry["N"] = modes;
    entry["grid"] = grid_name(k);
    entry["E_delta"] = deltas[k] * grad;
    entry["grad_energy"] = grad;
    entry["abs_u"] = grids[k].quantiles;
    entries[k] = std::move(entry);
  });

  json config;
  config["modes"] = modes;
  config["window"] = {-half_window, half_window};
  config["grid_points"] = n_grid;
  config["deltas"] = deltas;
  RunManifest manifest("figure2", config);

  const RateFit fit = fit_loglog(deltas, grad_energies);
  json summary;
  summary["command"] = "figure2";
  summary["verdict"] = to_string(trace_report.verdict);
  summary["dominant_mode"] = trace_report.dominant_mode;
  summary["runs"] = json::array();
  for (const json& entry : entries) summary["runs"].push_back(entry);
  json ratios = json::array();
  for (std::size_t k = 0; k + 1 < grad_energies.size(); ++k) {
    ratios.push_back(grad_energies[k + 1] / grad_energies[k]);
  }
  summary["grad_energy_ratios"] = ratios;
  summary["rate_fits"] = {{"grad_energy", fit_to_json(fit, deltas.back(), deltas.front())}};
  summary["manifest"] = "manifest.json";

  for (std::size_t k = 0; k < grids.size(); ++k) {
    const std::string name = grid_name(static_cast<int>(k));
    write_text_file(dir / name, grids[k].csv);
    manifest.add_output(name, grids[k].csv);
    maybe_render(opt, dir, name.substr(0, name.size() - 4), grids[k], n_grid);
  }
  const std::string summary_text = summary.dump(2) + "\n";
  write_text_file(dir / "summary.json", summary_text);
  manifest.add_output("summary.json", summary_text);
  manifest.write(dir);
  return kExitOk;
}

// -------- solve commands --------

int cmd_solve1(const GlobalOptions& opt, const std::string& config_path,
               const std::vector<std::string>& overrides) {
  const KeyValueConfig cfg = load_config(config_path, overrides);
  const double R = cfg.get_double("R", 3.0);
  const double delta = cfg.get_double("delta", 1e-6);
  RunManifest manifest("solve1", config_echo(cfg));
  const Problem1Data data = resolve_data1(cfg, R, &manifest);
  int order = cfg.get_int("N", 0);
  if (order == 0) order = std::max(data.natural_order, working_truncation(delta, R));

  SolverConfig config;
  config.R = R;
  config.delta = delta;
  config.truncation = order;
  const ModalCoefficients h = data.generate(order);
  const CoreShellSolution sol = solve_modes(config, h);
  const CompatibilityReport verdict = classify_compatibility(h, R, data.tail);

  const std::filesystem::path dir = opt.out / "solve1";
  const std::string csv = coefficients_to_csv({{"data", &sol.data},
                                               {"core", &sol.core},
                                               {"ring_inner", &sol.ring_inner},
                                               {"ring_outer", &sol.ring_outer}});
  json summary;
  summary["command"] = "solve1";
  summary["R"] = R;
  summary["delta"] = delta;
  summary["N"] = order;
  summary["data"] = data.name;
  summary["E_delta"] = sol.power();
  summary["grad_energy"] = sol.grad_energy();
  summary["gap_h_half"] = localized_resonance_gap(h, delta, R);
  summary["h_half_norm"] = h_half_norm(h);
  summary["verdict"] = to_string(verdict.verdict);
  summary["verdict_detail"] = verdict.detail;
  summary["manifest"] = "manifest.json";
  const std::string summary_text = summary.dump(2) + "\n";

  write_text_file(dir / "coefficients.csv", csv);
  manifest.add_output("coefficients.csv", csv);
  write_text_file(dir / "summary.json", summary_text);
  manifest.add_output("summary.json", summary_text);
  manifest.write(dir);
  std::printf("solve1: N=%d E_delta=%s grad_energy=%s verdict=%s\n", order,
              format_double(sol.power()).c_str(), format_double(sol.grad_energy()).c_str(),
              to_string(verdict.verdict));
  return kExitOk;
}

int cmd_solve2(const GlobalOptions& opt, const std::string& config_path,
               const std::vector<std::string>& overrides) {
  const KeyValueConfig cfg = load_config(config_path, overrides);
  const double delta = cfg.get_double("delta", 1e-6);
  RunManifest manifest("solve2", config_echo(cfg));
  const Problem2Data data = resolve_data2(cfg);
  const PlaneSolution sol = solve_plane_modes(data.profiles, delta);
  const TraceReport report = classify_trace(*data.profiles);
  const double grad = grad_energy_disk(sol.a, 1.0);

  const std::filesystem::path dir = opt.out / "solve2";
  const ModalCoefficients trace = data.profiles->trace();
  const std::string csv = coefficients_to_csv(
      {{"trace", &trace}, {"interior", &sol.a}, {"exterior", &sol.b}});
  json summary;
  summary["command"] = "solve2";
  summary["delta"] = delta;
  summary["N"] = data.profiles->order();
  summary["data"] = data.name;
  summary["E_delta"] = delta * grad;
  summary["grad_energy"] = grad;
  summary["verdict"] = to_string(report.verdict);
  summary["dominant_mode"] = report.dominant_mode;
  summary["dominant_magnitude"] = report.dominant_magnitude;
  summary["clamp_tol"] = sol.clamp_tol;
  summary["manifest"] = "manifest.json";
  const std::string summary_text = summary.dump(2) + "\n";

  write_text_file(dir / "coefficients.csv", csv);
  manifest.add_output("coefficients.csv", csv);
  write_text_file(dir / "summary.json", summary_text);
  manifest.add_output("summary.json", summary_text);
  manifest.write(dir);
  std::printf("solve2: N=%d E_delta=%s grad_energy=%s verdict=%s\n", data.profiles->order(),
              format_double(delta * grad).c_str(), format_double(grad).c_str(),
              to_string(report.verdict));
  return kExitOk;
}

// -------- rate command --------

namespace {

std::vector<double> log_spaced(double lo, double hi, int points) {
  std::vector<double> out(points);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    out[i] = std::pow(10.0, llo + (lhi - llo) * i / static_cast<double>(points - 1));
  }
  return out;
}

void print_fit_row(const char* quantity, const RateFit& fit) {
  std::printf("%-12s slope=%+.6f intercept=%+.6f max_residual=%.3g %s\n", quantity, fit.slope,
              fit.intercept, fit.max_residual, fit.reliable ? "ok" : "UNRELIABLE");
}

}  // namespace

int cmd_rate(const GlobalOptions& opt, int problem, const std::string& config_path,
             const std::vector<std::string>& overrides, double delta_min, double delta_max,
             int points) {
  if (points < 4) throw std::invalid_argument("need at least 4 fit points");
  if (!(delta_min > 0.0) || !(delta_max < 1.0) || !(delta_min < delta_max)) {
    throw std::invalid_argument("need 0 < delta_min < delta_max < 1");
  }
  if (delta_max / delta_min < 1e3) {
    throw std::invalid_argument("delta window must span at least three decades");
  }
  const KeyValueConfig cfg = load_config(config_path, overrides);
  const std::vector<double> deltas = log_spaced(delta_min, delta_max, points);

  json summary;
  summary["command"] = "rate";
  summary["problem"] = problem;
  summary["delta_window"] = {delta_min, delta_max};
  summary["points"] = points;
  json fits = json::object();
  bool all_reliable = true;
  RunManifest manifest("rate", config_echo(cfg));

  if (problem == 1) {
    const double R = cfg.get_double("R", 3.0);
    const Problem1Data data = resolve_data1(cfg, R, &manifest);
    summary["R"] = R;
    summary["data"] = data.name;
    for (const Quantity q : {Quantity::GradEnergy, Quantity::Power, Quantity::Gap}) {
      const SweepResult sweep = delta_sweep(R, data.generate, q, deltas);
      fits[to_string(q)] = fit_to_json(sweep.fit, delta_min, delta_max);
      json points_json = json::array();
      for (const SweepPoint& p : sweep.points) points_json.push_back({p.delta, p.value});
      fits[to_string(q)]["points"] = points_json;
      if (!sweep.warnings.empty()) fits[to_string(q)]["warnings"] = sweep.warnings;
      print_fit_row(to_string(q), sweep.fit);
      all_reliable = all_reliable && sweep.fit.reliable;
    }
  } else if (problem == 2) {
    const Problem2Data data = resolve_data2(cfg);
    summary["data"] = data.name;
    std::vector<double> grads(deltas.size()), powers(deltas.size());
    parallel_over(opt.threads, static_cast<int>(deltas.size()), [&](int k) {
      const PlaneSolution sol = solve_plane_modes(data.profiles, deltas[k]);
      grads[k] = grad_energy_disk(sol.a, 1.0);
      powers[k] = deltas[k] * grads[k];
    });
    const auto emit = [&](const char* name, const std::vector<double>& values) {
      const auto usable = std::count_if(values.begin(), values.end(),
                                        [](double v) { return std::isfinite(v) && v > 0.0; });
      if (usable < 2) {
        // e.g. a source whose traces all vanish: the field is zero and there
        // is no slope to fit
        json empty;
        empty["slope"] = nullptr;
        empty["intercept"] = nullptr;
        empty["max_residual"] = nullptr;
        empty["points_used"] = static_cast<int>(usable);
        empty["points_excluded"] = static_cast<int>(values.size()) - static_cast<int>(usable);
        empty["reliable"] = false;
        empty["delta_window"] = {delta_min, delta_max};
        empty["warnings"] = {"fewer than 2 positive values; nothing to fit"};
        fits[name] = empty;
        std::printf("%-12s no fit (%d of %zu points positive)\n", name, static_cast<int>(usable),
                    values.size());
        all_reliable = false;
        return;
      }
      const RateFit fit = fit_loglog(deltas, values);
      fits[name] = fit_to_json(fit, delta_min, delta_max);
      json points_json = json::array();
      for (std::size_t k = 0; k < deltas.size(); ++k) points_json.push_back({deltas[k], values[k]});
      fits[name]["points"] = points_json;
      print_fit_row(name, fit);
      all_reliable = all_reliable && fit.reliable;
    };
    emit("grad_energy", grads);
    emit("power", powers);
  } else {
    throw std::invalid_argument("problem must be 1 or 2");
  }

  summary["rate_fits"] = fits;
  summary["manifest"] = "manifest.json";
  const std::string summary_text = summary.dump(2) + "\n";
  const std::filesystem::path dir = opt.out / "rate";
  write_text_file(dir / "rate.json", summary_text);
  manifest.add_output("rate.json", summary_text);
  manifest.write(dir);

  if (!all_reliable) {
    std::fprintf(stderr, "rate: at least one fit is unreliable (max residual above 0.1)\n");
    if (opt.strict) return kExitRuntime;
  }
  return kExitOk;
}

// -------- check-compat command --------

int cmd_check_compat(const GlobalOptions& opt, int problem, const std::string& config_path,
                     const std::vector<std::string>& overrides) {
  const KeyValueConfig cfg = load_config(config_path, overrides);
  json report_json;
  report_json["command"] = "check-compat";
  report_json["problem"] = problem;
  RunManifest manifest("check-compat", config_echo(cfg));
  CompatibilityVerdict verdict = CompatibilityVerdict::Borderline;

  if (problem == 1) {
    const double R = cfg.get_double("R", 3.0);
    const Problem1Data data = resolve_data1(cfg, R, &manifest);
    const ModalCoefficients h = data.generate(data.natural_order);
    const CompatibilityReport report = classify_compatibility(h, R, data.tail);
    verdict = report.verdict;
    report_json["R"] = R;
    report_json["data"] = data.name;
    report_json["verdict"] = to_string(report.verdict);
    report_json["estimated_ratio"] = report.estimated_ratio;
    report_json["threshold_ratio"] = 1.0 / R;
    report_json["detail"] = report.detail;
    std::printf("verdict: %s\n", to_string(report.verdict));
    std::printf("detail:  %s\n", report.detail.c_str());
    // Evidence: trailing mode magnitudes and their consecutive ratios.
    json evidence = json::array();
    std::printf("%6s %14s %10s\n", "n", "|h_n|", "ratio");
    const int first = std::max(1, h.order() - 9);
    for (int n = first; n <= h.order(); ++n) {
      const double mag = std::max(std::abs(h.plus[n - 1]), std::abs(h.minus[n - 1]));
      const double prev = n > 1 ? std::max(std::abs(h.plus[n - 2]), std::abs(h.minus[n - 2])) : 0.0;
      const double ratio = prev > 0.0 ? mag / prev : 0.0;
      evidence.push_back({{"n", n}, {"magnitude", mag}, {"ratio", ratio}});
      std::printf("%6d %14.6e %10.6f\n", n, mag, ratio);
    }
    report_json["evidence"] = evidence;
  } else if (problem == 2) {
    const Problem2Data data = resolve_data2(cfg);
    const TraceReport report = classify_trace(*data.profiles);
    verdict = report.verdict;
    report_json["data"] = data.name;
    report_json["verdict"] = to_string(report.verdict);
    report_json["dominant_mode"] = report.dominant_mode;
    report_json["dominant_magnitude"] = report.dominant_magnitude;
    report_json["tolerance"] = report.tol;
    std::printf("verdict: %s\n", to_string(report.verdict));
    if (report.verdict != CompatibilityVerdict::Compatible) {
      std::printf("dominant surviving mode: %d (|trace| = %s)\n", report.dominant_mode,
                  format_double(report.dominant_magnitude).c_str());
    }
    // Evidence: largest trace magnitudes by mode.
    const ModalCoefficients& trace = data.profiles->trace();
    std::vector<std::pair<double, int>> ranked;
    for (int n = 1; n <= trace.order(); ++n) {
      ranked.push_back({std::abs(trace.plus[n - 1]), n});
      ranked.push_back({std::abs(trace.minus[n - 1]), -n});
    }
    std::sort(ranked.rbegin(), ranked.rend());
    json evidence = json::array();
    std::printf("%6s %14s\n", "mode", "|trace|");
    for (std::size_t k = 0; k < std::min<std::size_t>(10, ranked.size()); ++k) {
      evidence.push_back({{"mode", ranked[k].second}, {"magnitude", ranked[k].first}});
      std::printf("%6d %14.6e\n", ranked[k].second, ranked[k].first);
    }
    report_json["evidence"] = evidence;
  } else {
    throw std::invalid_argument("problem must be 1 or 2");
  }

  report_json["manifest"] = "manifest.json";
  const std::string report_text = report_json.dump(2) + "\n";
  const std::filesystem::path dir = opt.out / "check_compat";
  write_text_file(dir / "report.json", report_text);
  manifest.add_output("report.json", report_text);
  manifest.write(dir);

  switch (verdict) {
    case CompatibilityVerdict::Compatible:
      return kExitOk;
    case CompatibilityVerdict::Incompatible:
      return kExitIncompatible;
    case CompatibilityVerdict::Borderline:
      return kExitBorderline;
  }
  return kExitRuntime;
}

}  // namespace alr::cli
