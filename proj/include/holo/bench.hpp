#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "holo/mraf.hpp"
#include "holo/metrics.hpp"

namespace holo {

enum class Algorithm { Rounding, Dithering, Mraf };

struct GridSize {
  int rows = 1;
  int cols = 1;
  friend bool operator==(GridSize a, GridSize b) { return a.rows == b.rows && a.cols == b.cols; }
};

/// One sweep of the simulation: a device, an algorithm, and a list of trap
/// grids, each evaluated over `runs` seeded repetitions.
struct ExperimentConfig {
  DeviceModel device;
  Algorithm algorithm = Algorithm::Rounding;
  std::vector<GridSize> grids{{4, 4}};
  int runs = 50;
  RngSeed base_seed;
  int width = 512;
  int height = 512;
  int spacing = 5;
  double mixing = 0.7;
  int iterations = 20;
  int signal_width = 200;
  int signal_height = 200;
  DitherKernel kernel = kernels::symmetric();
  ScanOrder scan = ScanOrder::Raster;
  int threads = 0; // 0: HOLO_THREADS env var, else hardware concurrency

  void validate() const {
    device.validate();
    if (runs < 1) throw config_error("need at least one run per data point");
    if (grids.empty()) throw config_error("need at least one grid size");
    for (std::size_t i = 0; i < grids.size(); ++i) {
      const GridSize g = grids[i];
      if (g.rows < 1 || g.cols < 1 || g.rows > 0xffff || g.cols > 0xffff)
        throw config_error("grid rows/cols must be in [1, 65535]");
      for (std::size_t j = i + 1; j < grids.size(); ++j)
        if (grids[j] == g) throw config_error("duplicate grid size in sweep");
    }
    if (width <= 0 || height <= 0) throw config_error("array dimensions must be positive");
    if (spacing < 1) throw config_error("trap spacing must be >= 1 pixel");
    if (!(mixing >= 0.0 && mixing <= 1.0)) throw config_error("mixing parameter must be in [0, 1]");
    if (iterations < 1) throw config_error("need at least one iteration");
    if (signal_width < 1 || signal_height < 1) throw config_error("signal region must be positive");
  }
};

/// Per-run seed: splitmix64(base ^ (rows << 48 | cols << 32 | run_index)).
/// splitmix64 is bijective, so distinct (rows, cols, run_index) triples give
/// pairwise distinct seeds, and a run's seed does not depend on where its
/// grid sits in the sweep's grid list.
inline RngSeed derive_run_seed(RngSeed base, int rows, int cols, int run_index) {
  const std::uint64_t packed = (static_cast<std::uint64_t>(rows) << 48) |
                               (static_cast<std::uint64_t>(cols) << 32) |
                               static_cast<std::uint64_t>(static_cast<std::uint32_t>(run_index));
  return RngSeed{splitmix64(base.value ^ packed)};
}

/// Trap layout the comparison uses for a device: centred for a PSLM, offset
/// by a quarter of the field for a DMD so the diffraction orders separate.
inline TrapLayout default_layout(DeviceKind kind, int rows, int cols, int spacing, int width,
                                 int height) {
  return kind == DeviceKind::DMD ? dmd_grid(rows, cols, spacing, width, height)
                                 : centered_grid(rows, cols, spacing, width, height);
}

/// Everything produced by one simulation run.
struct SingleRun {
  RngSeed seed;
  TrapLayout layout;
  DisplayedHologram displayed;
  ComplexField image{1, 1, Plane::Image};
  RunMetrics metrics;
  ConvergenceTrace trace; // filled only for the iterative algorithm
};

inline SingleRun single_run(const ExperimentConfig& cfg, GridSize grid, int run_index) {
  cfg.validate();
  if (run_index < 0) throw config_error("run index must be non-negative");
  SingleRun out;
  out.seed = derive_run_seed(cfg.base_seed, grid.rows, grid.cols, run_index);
  out.layout = default_layout(cfg.device.kind, grid.rows, grid.cols, cfg.spacing, cfg.width,
                              cfg.height);
  const ComplexField target = build_target(out.layout, cfg.width, cfg.height, out.seed);

  switch (cfg.algorithm) {
    case Algorithm::Rounding: {
      const ComplexField hologram = fft_inverse(target);
      out.displayed = cfg.device.kind == DeviceKind::DMD ? round_dmd(hologram)
                                                         : round_pslm(hologram, cfg.device);
      break;
    }
    case Algorithm::Dithering: {
      const ComplexField hologram = fft_inverse(target);
      out.displayed = cfg.device.kind == DeviceKind::DMD
                          ? dither_dmd(hologram, cfg.kernel, cfg.scan)
                          : dither_pslm(hologram, cfg.device, cfg.kernel, cfg.scan);
      break;
    }
    case Algorithm::Mraf: {
      MrafConfig mc{cfg.mixing, cfg.iterations,
                    make_mask(cfg.width, cfg.height, cfg.signal_width, cfg.signal_height,
                              out.layout.centroid()),
                    cfg.device, out.seed};
      auto [displayed, trace] = mraf_run(target, out.layout, mc);
      out.displayed = std::move(displayed);
      out.trace = std::move(trace);
      break;
    }
  }

  out.image = fft_forward(realize(out.displayed));
  const TrapIntensities ti = trap_intensities(out.image, out.layout);
  const double incident = static_cast<double>(cfg.width) * cfg.height;
  out.metrics.cv = coefficient_of_variation(ti);
  out.metrics.efficiency = efficiency(out.image, out.layout, incident);
  out.metrics.total_image_power = power(out.image);
  out.metrics.incident_power = incident;
  return out;
}

/// Metrics of a single deterministic run of (config, grid, run_index).
inline RunMetrics run_once(const ExperimentConfig& cfg, GridSize grid, int run_index) {
  return single_run(cfg, grid, run_index).metrics;
}

/// Nearest-rank quantile on ascending `sorted`: the value at 1-based rank
/// ceil(q * n), clamped to [1, n].
inline double nearest_rank_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw metric_error("quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank < 1) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

struct GridAggregate {
  int rows = 0;
  int cols = 0;
  int n_traps = 0;
  double median_cv = 0.0;
  double q25_cv = 0.0;
  double q75_cv = 0.0;
  double median_efficiency = 0.0;
};

struct RunRecord {
  int rows = 0;
  int cols = 0;
  int run_index = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct SweepResult {
  std::vector<GridAggregate> aggregates; // one entry per grid, in config order
  std::vector<RunRecord> runs;           // grid-major, run_index order
};

namespace detail {

// Runs body(0..count-1) on `threads` workers. Task order is irrelevant to
// the result: each task writes only its own slot.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<std::size_t>(threads, count));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOLO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs every (grid, run_index) pair and aggregates nearest-rank median and
/// quartiles per grid. Output is independent of thread count.
inline SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t runs_per_grid = static_cast<std::size_t>(cfg.runs);
  const std::size_t total = cfg.grids.size() * runs_per_grid;
  SweepResult result;
  result.runs.resize(total);

  detail::parallel_for(total, resolve_threads(cfg.threads), [&](std::size_t task) {
    const std::size_t g = task / runs_per_grid;
    const int run_index = static_cast<int>(task % runs_per_grid);
    const GridSize grid = cfg.grids[g];
    RunRecord& rec = result.runs[task];
    rec.rows = grid.rows;
    rec.cols = grid.cols;
    rec.run_index = run_index;
    rec.seed = derive_run_seed(cfg.base_seed, grid.rows, grid.cols, run_index).value;
    rec.metrics = run_once(cfg, grid, run_index);
  });

  result.aggregates.reserve(cfg.grids.size());
  for (std::size_t g = 0; g < cfg.grids.size(); ++g) {
    std::vector<double> cvs, effs;
    cvs.reserve(runs_per_grid);
    effs.reserve(runs_per_grid);
    for (std::size_t r = 0; r < runs_per_grid; ++r) {
      const RunMetrics& m = result.runs[g * runs_per_grid + r].metrics;
      cvs.push_back(m.cv);
      effs.push_back(m.efficiency);
    }
    std::sort(cvs.begin(), cvs.end());
    std::sort(effs.begin(), effs.end());
    GridAggregate agg;
    agg.rows = cfg.grids[g].rows;
    agg.cols = cfg.grids[g].cols;
    agg.n_traps = cfg.grids[g].rows * cfg.grids[g].cols;
    agg.median_cv = nearest_rank_quantile(cvs, 0.5);
    agg.q25_cv = nearest_rank_quantile(cvs, 0.25);
    agg.q75_cv = nearest_rank_quantile(cvs, 0.75);
    agg.median_efficiency = nearest_rank_quantile(effs, 0.5);
    result.aggregates.push_back(agg);
  }
  return result;
}

/// Median trap-intensity variation per iteration of the iterative loop,
/// taken across cfg.runs seeds of one grid.
inline std::vector<double> convergence_study(const ExperimentConfig& cfg, GridSize grid,
                                             int iterations_max) {
  if (cfg.algorithm != Algorithm::Mraf)
    throw config_error("convergence study requires the iterative algorithm");
  if (iterations_max < 1) throw config_error("need at least one iteration");
  ExperimentConfig local = cfg;
  local.iterations = iterations_max;
  local.grids = {grid};
  local.validate();

  std::vector<ConvergenceTrace> traces(static_cast<std::size_t>(local.runs));
  detail::parallel_for(traces.size(), resolve_threads(local.threads), [&](std::size_t r) {
    traces[r] = single_run(local, grid, static_cast<int>(r)).trace;
  });

  std::vector<double> medians(static_cast<std::size_t>(iterations_max));
  std::vector<double> column(traces.size());
  for (int it = 0; it < iterations_max; ++it) {
    for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r].cv[it];
    std::sort(column.begin(), column.end());
    medians[it] = nearest_rank_quantile(column, 0.5);
  }
  return medians;
}

} // namespace holo
