#include "rfsgd/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "rfsgd/csv.hpp"
#include "rfsgd/eval.hpp"
#include "rfsgd/parallel.hpp"
#include "rfsgd/rng.hpp"
#include "rfsgd/sgd.hpp"
#include "rfsgd/spectra.hpp"

namespace rfsgd {

namespace {

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.outdir) / name).string();
}

void ensure_outdir(const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.outdir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + cfg.outdir + ": " +
                             ec.message());
  }
}

void write_header_block(CsvFile& f, const ExperimentConfig& cfg) {
  for (const auto& [k, v] : provenance(cfg)) f.comment(k, v);
}

std::vector<long> effective_checkpoints(const ExperimentConfig& cfg, long horizon) {
  if (!cfg.checkpoints.empty()) {
    std::vector<long> kept;
    for (long c : cfg.checkpoints) {
      if (c <= horizon) kept.push_back(c);
    }
    if (kept.empty()) kept.push_back(horizon);
    return kept;
  }
  if (horizon == 0) return {0};
  return make_checkpoints(horizon, cfg.checkpoint_count);
}

void write_trace_csv(const std::string& path, const ExperimentConfig& cfg,
                     const std::vector<RunTrace>& traces) {
  CsvFile f(path);
  write_header_block(f, cfg);
  f.row({"run_id", "iteration", "cumulative_updates", "excess_error", "excess_loss"});
  for (const RunTrace& t : traces) {
    for (const MetricPoint& p : t.points) {
      f.row({std::to_string(t.run_id), std::to_string(p.iteration),
             std::to_string(p.cumulative_updates), format_double(p.excess_error),
             format_double(p.excess_loss)});
    }
  }
  f.close();
}

void write_aggregate_csv(const std::string& path, const ExperimentConfig& cfg,
                         const std::vector<AggregatePoint>& agg) {
  CsvFile f(path);
  write_header_block(f, cfg);
  f.row({"iteration", "cumulative_updates", "mean_excess_error", "std_excess_error",
         "mean_excess_loss", "std_excess_loss"});
  for (const AggregatePoint& a : agg) {
    f.row({std::to_string(a.iteration), std::to_string(a.cumulative_updates),
           format_double(a.mean_excess_error), format_double(a.std_excess_error),
           format_double(a.mean_excess_loss), format_double(a.std_excess_loss)});
  }
  f.close();
}

void write_error_csv(const std::string& path, const ExperimentConfig& cfg,
                     const std::vector<AggregatePoint>& agg) {
  CsvFile f(path);
  write_header_block(f, cfg);
  f.row({"iteration", "cumulative_updates", "mean_excess_error", "std_excess_error"});
  for (const AggregatePoint& a : agg) {
    f.row({std::to_string(a.iteration), std::to_string(a.cumulative_updates),
           format_double(a.mean_excess_error), format_double(a.std_excess_error)});
  }
  f.close();
}

void write_loss_csv(const std::string& path, const ExperimentConfig& cfg,
                    const std::vector<AggregatePoint>& agg) {
  CsvFile f(path);
  write_header_block(f, cfg);
  f.row({"iteration", "cumulative_updates", "mean_loss", "std_loss",
         "mean_excess_loss", "std_excess_loss"});
  for (const AggregatePoint& a : agg) {
    f.row({std::to_string(a.iteration), std::to_string(a.cumulative_updates),
           format_double(a.mean_loss), format_double(a.std_loss),
           format_double(a.mean_excess_loss), format_double(a.std_excess_loss)});
  }
  f.close();
}

struct ArmResult {
  std::vector<RunTrace> traces;
  std::vector<AggregatePoint> agg;
};

ArmResult run_rff_arm(const ExperimentConfig& cfg, const SyntheticDistribution& dist,
                      const GaussianKernel& kernel, const SurrogateLoss& loss,
                      const Schedule& schedule, const EvalContext& ev, int m,
                      const std::vector<long>& checkpoints) {
  ArmResult arm;
  arm.traces.resize(static_cast<std::size_t>(cfg.n_runs));
  parallel_for_dynamic(cfg.n_runs, [&](std::ptrdiff_t r) {
    const FeatureSet fs = FeatureSet::sample(
        kernel, m, derive_seed(cfg.base_seed, RngStream::kFeatures,
                               static_cast<std::uint64_t>(r)));
    SyntheticDistribution::Stream stream(
        dist, derive_seed(cfg.base_seed, RngStream::kData, static_cast<std::uint64_t>(r)));
    const SgdRunConfig rc{cfg.T, schedule, loss, static_cast<int>(r)};
    arm.traces[static_cast<std::size_t>(r)] =
        run_rff_sgd(rc, fs, stream, checkpoints, ev).trace;
  });
  arm.agg = aggregate_runs(arm.traces);
  return arm;
}

ArmResult run_kernel_arm(const ExperimentConfig& cfg, const SyntheticDistribution& dist,
                         const GaussianKernel& kernel, const SurrogateLoss& loss,
                         const Schedule& schedule, const EvalContext& ev,
                         const std::vector<long>& checkpoints) {
  ArmResult arm;
  arm.traces.resize(static_cast<std::size_t>(cfg.n_runs));
  parallel_for_dynamic(cfg.n_runs, [&](std::ptrdiff_t r) {
    SyntheticDistribution::Stream stream(
        dist, derive_seed(cfg.base_seed, RngStream::kData, static_cast<std::uint64_t>(r)));
    const SgdRunConfig rc{cfg.T_kernel, schedule, loss, static_cast<int>(r)};
    arm.traces[static_cast<std::size_t>(r)] =
        run_kernel_sgd(rc, kernel, stream, checkpoints, ev).trace;
  });
  arm.agg = aggregate_runs(arm.traces);
  return arm;
}

struct Crossover {
  bool reached = false;
  long iteration = -1;
  long long updates = -1;
};

Crossover find_crossover(const std::vector<AggregatePoint>& agg, double threshold) {
  for (const AggregatePoint& a : agg) {
    if (a.mean_excess_error <= threshold) {
      return {true, a.iteration, a.cumulative_updates};
    }
  }
  return {};
}

template <class... Args>
std::string note(const char* fmt, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::string note_final(const std::string& tag, const std::vector<AggregatePoint>& agg) {
  const AggregatePoint& last = agg.back();
  return note("%s: final mean excess error %.6g (std %.6g), mean excess loss %.6g",
              tag.c_str(), last.mean_excess_error, last.std_excess_error,
              last.mean_excess_loss);
}

ExperimentSummary run_fig1(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  const SyntheticDistribution dist(parse_pairing(cfg.pairing));
  const auto samples =
      dist.sample(cfg.fig1_n, derive_seed(cfg.base_seed, RngStream::kScatter));
  const std::string path = out_path(cfg, "fig1_data_samples.csv");
  CsvFile f(path);
  write_header_block(f, cfg);
  f.row({"x1", "x2", "y"});
  for (const Sample& s : samples) {
    f.row({format_double_exact(s.x[0]), format_double_exact(s.x[1]),
           std::to_string(static_cast<int>(s.y))});
  }
  f.close();
  summary.output_files.push_back(path);
  summary.notes.push_back(note("wrote %ld labeled samples", cfg.fig1_n));
  return summary;
}

ExperimentSummary run_fig2(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  const SyntheticDistribution dist(parse_pairing(cfg.pairing));
  const GaussianKernel kernel(cfg.sigma, SyntheticDistribution::kDim);
  const SurrogateLoss loss = parse_loss(cfg.loss);
  const Schedule schedule(cfg.lambda, cfg.gamma);
  summary.warnings = check_schedule_preconditions(schedule);
  const EvalContext ev = make_eval_context(
      dist, loss, cfg.n_test, derive_seed(cfg.base_seed, RngStream::kTestSet));
  const std::vector<long> checkpoints = effective_checkpoints(cfg, cfg.T);
  const ArmResult arm =
      run_rff_arm(cfg, dist, kernel, loss, schedule, ev, cfg.M, checkpoints);
  const std::string error_path = out_path(cfg, "fig2_error.csv");
  write_error_csv(error_path, cfg, arm.agg);
  summary.output_files.push_back(error_path);
  const std::string loss_path = out_path(cfg, "fig2_loss.csv");
  write_loss_csv(loss_path, cfg, arm.agg);
  summary.output_files.push_back(loss_path);
  const std::string agg_path = out_path(cfg, "fig2_aggregate.csv");
  write_aggregate_csv(agg_path, cfg, arm.agg);
  summary.output_files.push_back(agg_path);
  const std::string trace_path = out_path(cfg, "fig2_trace.csv");
  write_trace_csv(trace_path, cfg, arm.traces);
  summary.output_files.push_back(trace_path);
  summary.notes.push_back(note_final("fig2", arm.agg));
  return summary;
}

ExperimentSummary run_fig4(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  const SyntheticDistribution dist(parse_pairing(cfg.pairing));
  const GaussianKernel kernel(cfg.sigma, SyntheticDistribution::kDim);
  const SurrogateLoss loss = parse_loss(cfg.loss);
  const Schedule schedule(cfg.lambda, cfg.gamma);
  summary.warnings = check_schedule_preconditions(schedule);
  const EvalContext ev = make_eval_context(
      dist, loss, cfg.n_test, derive_seed(cfg.base_seed, RngStream::kTestSet));
  const std::vector<long> checkpoints = effective_checkpoints(cfg, cfg.T);

  const std::string summary_path = out_path(cfg, "fig4_summary.csv");
  CsvFile sf(summary_path);
  write_header_block(sf, cfg);
  sf.row({"feature_count", "final_iteration", "mean_final_excess_error",
          "std_final_excess_error"});
  for (int m : cfg.M_list) {
    const ArmResult arm =
        run_rff_arm(cfg, dist, kernel, loss, schedule, ev, m, checkpoints);
    const std::string tag = "fig4_M" + std::to_string(m);
    const std::string agg_path = out_path(cfg, tag + "_aggregate.csv");
    write_aggregate_csv(agg_path, cfg, arm.agg);
    summary.output_files.push_back(agg_path);
    const std::string trace_path = out_path(cfg, tag + "_trace.csv");
    write_trace_csv(trace_path, cfg, arm.traces);
    summary.output_files.push_back(trace_path);
    const AggregatePoint& last = arm.agg.back();
    sf.row({std::to_string(m), std::to_string(last.iteration),
            format_double(last.mean_excess_error), format_double(last.std_excess_error)});
    summary.notes.push_back(note_final(tag, arm.agg));
  }
  sf.close();
  summary.output_files.push_back(summary_path);
  return summary;
}

ExperimentSummary run_fig5(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  const SyntheticDistribution dist(parse_pairing(cfg.pairing));
  const GaussianKernel kernel(cfg.sigma, SyntheticDistribution::kDim);
  const SurrogateLoss loss = parse_loss(cfg.loss);
  const Schedule schedule(cfg.lambda, cfg.gamma);
  summary.warnings = check_schedule_preconditions(schedule);
  const EvalContext ev = make_eval_context(
      dist, loss, cfg.n_test, derive_seed(cfg.base_seed, RngStream::kTestSet));

  const std::string crossover_path = out_path(cfg, "fig5_crossover.csv");
  CsvFile cf(crossover_path);
  write_header_block(cf, cfg);
  cf.row({"model", "threshold", "iteration", "cumulative_updates", "reached"});
  auto crossover_row = [&](const std::string& model, const Crossover& c) {
    cf.row({model, format_double(cfg.crossover_threshold), std::to_string(c.iteration),
            std::to_string(c.updates), c.reached ? "1" : "0"});
    if (c.reached) {
      summary.notes.push_back(
          note("%s: excess error reached %.4g after %lld updates (iteration %ld)",
               model.c_str(), cfg.crossover_threshold, static_cast<long long>(c.updates),
               c.iteration));
    } else {
      summary.notes.push_back(note("%s: excess error never reached %.4g", model.c_str(),
                                   cfg.crossover_threshold));
    }
  };

  const std::vector<long> rff_checkpoints = effective_checkpoints(cfg, cfg.T);
  for (int m : cfg.fig5_M_list) {
    const ArmResult arm =
        run_rff_arm(cfg, dist, kernel, loss, schedule, ev, m, rff_checkpoints);
    const std::string tag = "fig5_rff_M" + std::to_string(m);
    const std::string agg_path = out_path(cfg, tag + "_aggregate.csv");
    write_aggregate_csv(agg_path, cfg, arm.agg);
    summary.output_files.push_back(agg_path);
    const std::string trace_path = out_path(cfg, tag + "_trace.csv");
    write_trace_csv(trace_path, cfg, arm.traces);
    summary.output_files.push_back(trace_path);
    crossover_row("rff_M" + std::to_string(m), find_crossover(arm.agg, cfg.crossover_threshold));
  }

  const std::vector<long> kernel_checkpoints = effective_checkpoints(cfg, cfg.T_kernel);
  const ArmResult karm =
      run_kernel_arm(cfg, dist, kernel, loss, schedule, ev, kernel_checkpoints);
  const std::string kagg_path = out_path(cfg, "fig5_kernel_aggregate.csv");
  write_aggregate_csv(kagg_path, cfg, karm.agg);
  summary.output_files.push_back(kagg_path);
  const std::string ktrace_path = out_path(cfg, "fig5_kernel_trace.csv");
  write_trace_csv(ktrace_path, cfg, karm.traces);
  summary.output_files.push_back(ktrace_path);
  crossover_row("kernel", find_crossover(karm.agg, cfg.crossover_threshold));

  cf.close();
  summary.output_files.push_back(crossover_path);
  return summary;
}

ExperimentSummary run_norm_decay(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  const SyntheticDistribution dist(parse_pairing(cfg.pairing));
  const GaussianKernel kernel(cfg.sigma, SyntheticDistribution::kDim);
  const auto samples =
      dist.sample(cfg.norm_n, derive_seed(cfg.base_seed, RngStream::kNormDecayPoints));
  std::vector<double> xs;
  xs.reserve(samples.size() * 2);
  for (const Sample& s : samples) {
    xs.push_back(s.x[0]);
    xs.push_back(s.x[1]);
  }
  NormDecayConfig ndc;
  ndc.feature_counts = cfg.norm_M_list;
  ndc.replicates = cfg.norm_replicates;
  ndc.bound_delta = cfg.norm_delta;
  ndc.seed = cfg.base_seed;
  const NormDecayResult res = norm_decay_study(kernel, xs, cfg.norm_n, ndc);

  const std::string rep_path = out_path(cfg, "norm_decay_replicates.csv");
  CsvFile rf(rep_path);
  write_header_block(rf, cfg);
  rf.row({"feature_count", "replicate", "normalized_norm", "normalized_frobenius",
          "bound_value"});
  for (const NormDecayRow& row : res.rows) {
    rf.row({std::to_string(row.feature_count), std::to_string(row.replicate),
            format_double(row.normalized_norm), format_double(row.normalized_frobenius),
            format_double(row.bound_value)});
  }
  rf.close();
  summary.output_files.push_back(rep_path);

  const std::string sum_path = out_path(cfg, "norm_decay_summary.csv");
  CsvFile sf(sum_path);
  write_header_block(sf, cfg);
  sf.row({"feature_count", "mean_norm", "std_norm", "slope_overall"});
  for (const NormDecaySummary& s : res.summary) {
    sf.row({std::to_string(s.feature_count), format_double(s.mean),
            format_double(s.stddev), format_double(res.slope)});
  }
  sf.close();
  summary.output_files.push_back(sum_path);

  summary.notes.push_back(
      note("norm decay: log-log slope %.4f, plug-in operator norm %.4g, "
           "%d bound violation(s) over %zu replicates%s",
           res.slope, res.exact_norm, res.bound_violations, res.rows.size(),
           res.all_converged ? "" : "; power iteration hit its cap at least once"));
  return summary;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  ensure_outdir(cfg);
  if (cfg.experiment == "fig1-data") return run_fig1(cfg);
  if (cfg.experiment == "fig2") return run_fig2(cfg);
  if (cfg.experiment == "fig4") return run_fig4(cfg);
  if (cfg.experiment == "fig5") return run_fig5(cfg);
  if (cfg.experiment == "norm-decay") return run_norm_decay(cfg);
  throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

}  // namespace rfsgd
