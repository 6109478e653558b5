// distsketch: build, merge and compare sublinear distribution summaries.
//
// Exit codes: 0 success, 2 configuration error, 3 data or format error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distsketch/audit.hpp"
#include "distsketch/distances.hpp"
#include "distsketch/errors.hpp"
#include "distsketch/estimators.hpp"
#include "distsketch/experiment.hpp"
#include "distsketch/plan.hpp"
#include "distsketch/streams.hpp"
#include "distsketch/summary_io.hpp"

namespace ds = distsketch;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct ConfigArgs {
  double epsilon = 0.1;
  double delta = 0.05;
  std::string tail;
  double lipschitz = 1.0;
  double constant = 1.0;
  std::string bucket_rule = "quarter";
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--epsilon", args.epsilon, "target accuracy in (0,1)")->required();
  cmd->add_option("--delta", args.delta, "failure probability in (0,1)")->required();
  cmd->add_option("--tail", args.tail, "subgaussian:SIGMA or subweibull:ALPHA[,CALPHA]")
      ->required();
  cmd->add_option("--lipschitz", args.lipschitz, "Lipschitz constant")->required();
  cmd->add_option("--const", args.constant, "threshold constant c (default 1)");
}

ds::EstimatorConfig make_config(const ConfigArgs& args) {
  ds::EstimatorConfig cfg;
  cfg.epsilon = args.epsilon;
  cfg.delta = args.delta;
  cfg.tail = ds::parse_tail_model(args.tail);
  cfg.lipschitz = args.lipschitz;
  cfg.constant = args.constant;
  if (args.bucket_rule == "quarter") {
    cfg.bucket_rule = ds::WassersteinBucketRule::kQuarterEpsilon;
  } else if (args.bucket_rule == "half") {
    cfg.bucket_rule = ds::WassersteinBucketRule::kHalfEpsilon;
  } else {
    throw ds::ConfigError("bucket rule must be 'quarter' or 'half'");
  }
  cfg.validate();
  return cfg;
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      alphas.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ds::ConfigError("bad alpha value '" + item + "'");
    }
  }
  if (alphas.empty()) throw ds::ConfigError("empty alpha grid");
  return alphas;
}

void print_plan(const ds::EstimatePlan& plan) {
  std::cout << "bucket_width=" << plan.bucket_width << "\ncounters=" << plan.counters
            << "\nn_min=" << plan.n_min << '\n';
}

void print_audit(const ds::AuditReport& report) {
  print_plan(report.plan);
  for (const auto& [group, count] : report.group_counts) {
    std::cout << "group_count[" << group << "]=" << count << '\n';
  }
  for (const auto& pair : report.pairs) {
    std::cout << "distance[" << pair.first << "," << pair.second << "]=" << pair.value << '\n';
  }
  std::cout << "max=" << report.max_value << "\nsublinearity_ratio=" << report.sublinearity_ratio
            << "\nbelow_threshold=" << (report.below_threshold ? "true" : "false") << '\n';
  if (report.tv) std::cout << "tv=" << *report.tv << '\n';
  for (const auto& point : report.privacy) {
    std::cout << "alpha=" << point.alpha << " tau=" << point.tau
              << " hockey_stick=" << point.hockey_stick
              << " hockey_stick_reverse=" << point.hockey_stick_reverse
              << " band=" << point.correction_band << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sublinear mergeable distribution summaries and distance estimators"};
  app.require_subcommand(1);
  std::cout << std::setprecision(12);

  // summarize
  auto* summarize = app.add_subcommand("summarize", "summarise a sample file");
  std::string input, out_path, mode = "cdf", tail_text;
  double bucket_width = 0.0, origin = 0.0;
  std::size_t counters = 0, sources = 1;
  summarize->add_option("--input", input, "sample file, one number per line")->required();
  summarize->add_option("--mode", mode, "pdf or cdf table printed to stdout")
      ->check(CLI::IsMember({"pdf", "cdf"}));
  summarize->add_option("--bucket-width", bucket_width, "bucket width b")->required();
  summarize->add_option("--origin", origin, "bucket origin x0");
  summarize->add_option("--counters", counters, "number of counters k (even, >= 4)")->required();
  summarize->add_option("--out", out_path, "summary file (.json for JSON)")->required();
  summarize->add_option("--tail", tail_text, "optional tail-model annotation");
  summarize->add_option("--sources", sources, "split the input into this many sources");

  // merge
  auto* merge = app.add_subcommand("merge", "merge summary files");
  std::string merge_out;
  std::vector<std::string> merge_inputs;
  merge->add_option("--out", merge_out, "merged summary file")->required();
  merge->add_option("summaries", merge_inputs, "input summaries")->required()->expected(1, -1);

  // dist
  auto* dist = app.add_subcommand("dist", "distance between two summaries");
  std::string metric_text;
  double p = 1.0, tau = 1.0;
  std::string dist_a, dist_b;
  dist->add_option("--metric", metric_text, "wasserstein|tv|lp|hockeystick")->required();
  dist->add_option("--p", p, "order for wasserstein / lp");
  dist->add_option("--tau", tau, "tau for hockeystick");
  dist->add_option("summary_a", dist_a)->required();
  dist->add_option("summary_b", dist_b)->required();

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "bucket width and counter budget");
  std::string plan_metric;
  ConfigArgs plan_args;
  plan_cmd->add_option("--metric", plan_metric, "wasserstein|tv")
      ->required()
      ->check(CLI::IsMember({"wasserstein", "tv"}));
  add_config_options(plan_cmd, plan_args);
  plan_cmd->add_option("--bucket-rule", plan_args.bucket_rule, "quarter or half (wasserstein)");

  // experiment synthetic
  auto* experiment = app.add_subcommand("experiment", "synthetic experiments");
  experiment->require_subcommand(1);
  auto* synthetic = experiment->add_subcommand("synthetic", "sweep the counter budget");
  std::string exp_a = "gaussian:0,5", exp_b = "gaussian:1,5", exp_grid = "100:2000:100",
              exp_out, exp_metric = "wasserstein";
  ds::ExperimentConfig exp_cfg;
  synthetic->add_option("--dist-a", exp_a, "generator for side A");
  synthetic->add_option("--dist-b", exp_b, "generator for side B");
  synthetic->add_option("--n", exp_cfg.n, "samples per side");
  synthetic->add_option("--bucket-width", exp_cfg.bucket_width, "bucket width");
  synthetic->add_option("--counters-grid", exp_grid, "START:STOP:STEP or K1,K2,...");
  synthetic->add_option("--sources", exp_cfg.sources, "sources per side");
  synthetic->add_option("--seed", exp_cfg.seed, "random seed");
  synthetic->add_option("--metric", exp_metric, "wasserstein or tv")
      ->check(CLI::IsMember({"wasserstein", "tv"}));
  synthetic->add_option("--p", exp_cfg.p, "Wasserstein order");
  synthetic->add_option("--out", exp_out, "CSV output (stdout when omitted)");

  // audit
  auto* audit = app.add_subcommand("audit", "fairness and privacy audits");
  audit->require_subcommand(1);
  ds::AuditOptions audit_opts;
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--counters", audit_opts.counters, "override the planned counter budget");
    cmd->add_option("--bucket-width", audit_opts.bucket_width, "override the planned width");
    cmd->add_option("--sources", audit_opts.sources, "sources per stream");
  };
  auto* fairness = audit->add_subcommand("fairness", "demographic-parity audit (W1)");
  std::string scores;
  ConfigArgs fair_args;
  fairness->add_option("--scores", scores, "CSV group,value")->required();
  add_config_options(fairness, fair_args);
  add_overrides(fairness);
  auto* privacy = audit->add_subcommand("privacy", "TV / hockey-stick privacy audit");
  std::string losses_in, losses_out, alphas_text = "0";
  ConfigArgs priv_args;
  privacy->add_option("--in", losses_in, "IN loss samples")->required();
  privacy->add_option("--out-losses", losses_out, "OUT loss samples")->required();
  privacy->add_option("--alphas", alphas_text, "comma-separated alpha grid");
  add_config_options(privacy, priv_args);
  add_overrides(privacy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*summarize) {
      std::optional<ds::TailModel> tail;
      if (!tail_text.empty()) tail = ds::parse_tail_model(tail_text);
      const ds::BucketSpec spec(bucket_width, origin);
      ds::DistributionSummary probe(spec, counters, tail);  // validates k early
      const auto samples = ds::read_samples(input);
      if (samples.empty()) throw ds::DataError("input file holds no samples");
      const auto parts = ds::split_sources(samples, std::min(sources, samples.size()));
      auto summary = ds::summarize_sources(parts, spec, counters);
      summary.set_tail(tail);
      ds::save_summary(summary, out_path);
      std::cout << "bucket,midpoint," << mode << '\n';
      for (const auto& [index, count] : summary.sketch().counters()) {
        const double value = mode == "pdf" ? summary.pdf(index) : summary.cdf(index);
        std::cout << index << ',' << spec.midpoint(index) << ',' << value << '\n';
      }
      std::cerr << "n=" << summary.n() << " assigned=" << summary.assigned_buckets()
                << " capacity=" << summary.capacity() << '\n';
    } else if (*merge) {
      auto merged = ds::load_summary(merge_inputs.front());
      for (std::size_t i = 1; i < merge_inputs.size(); ++i) {
        merged.merge(ds::load_summary(merge_inputs[i]));
      }
      ds::save_summary(merged, merge_out);
      std::cout << "n=" << merged.n() << " assigned=" << merged.assigned_buckets() << '\n';
    } else if (*dist) {
      const auto metric = ds::parse_metric(metric_text);
      const auto a = ds::load_summary(dist_a);
      const auto b = ds::load_summary(dist_b);
      ds::DistanceReport report;
      switch (metric) {
        case ds::Metric::kWasserstein: report = ds::wasserstein_p(a, b, p); break;
        case ds::Metric::kTotalVariation: report = ds::tv(a, b); break;
        case ds::Metric::kLp: report = ds::lp_distance(a, b, p); break;
        case ds::Metric::kHockeyStick: report = ds::hockey_stick(a, b, tau); break;
      }
      std::cout << ds::to_string(report.metric);
      if (report.parameter) std::cout << ' ' << (metric == ds::Metric::kHockeyStick ? "tau=" : "p=")
                                      << *report.parameter;
      std::cout << " value=" << report.value << " breakpoints=" << report.breakpoints << '\n';
    } else if (*plan_cmd) {
      const auto cfg = make_config(plan_args);
      print_plan(plan_metric == "wasserstein" ? ds::plan_wasserstein(cfg) : ds::plan_tv(cfg));
    } else if (*synthetic) {
      exp_cfg.dist_a = ds::parse_generator(exp_a);
      exp_cfg.dist_b = ds::parse_generator(exp_b);
      exp_cfg.counters_grid = ds::parse_counters_grid(exp_grid);
      exp_cfg.metric = ds::parse_metric(exp_metric);
      const auto rows = ds::run_synthetic_experiment(exp_cfg);
      if (exp_out.empty()) {
        ds::write_experiment_csv(std::cout, rows);
      } else {
        std::ofstream out(exp_out);
        if (!out) throw ds::DataError("cannot open '" + exp_out + "' for writing");
        ds::write_experiment_csv(out, rows);
      }
    } else if (*fairness) {
      const auto cfg = make_config(fair_args);
      print_audit(ds::audit_fairness(ds::read_grouped_samples(scores), cfg, audit_opts));
    } else if (*privacy) {
      const auto cfg = make_config(priv_args);
      const auto in = ds::read_samples(losses_in);
      const auto out = ds::read_samples(losses_out);
      print_audit(ds::audit_privacy(in, out, cfg, parse_alphas(alphas_text), audit_opts));
    }
  } catch (const ds::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ds::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::overflow_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
