#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "spartan/csv.hpp"
#include "spartan/discrepancy.hpp"
#include "spartan/distributions.hpp"
#include "spartan/kde.hpp"
#include "spartan/parallel.hpp"
#include "spartan/select.hpp"

namespace spartan::cli {

using nlohmann::json;

// Exit-code contract: 0 success, 2 usage error, 3 data error, 4 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

namespace detail_cli {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string config_hash(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

// The sidecar carries the config (and its hash) needed to reproduce the
// artifact byte-for-byte; wall-clock fields live under "timing" and are the
// only non-reproducible entries.
inline void write_sidecar(const std::filesystem::path& artifact, json meta) {
  meta["config_hash"] = config_hash(meta.contains("config") ? meta["config"] : meta);
  write_json(artifact.string() + ".meta.json", meta);
}

inline DistributionSpec make_distribution(const std::string& tag, std::size_t d) {
  if (tag == "d1") return make_d1(d);
  if (tag == "d2") return make_d2(d);
  if (tag == "d3") return make_d3(d);
  throw UsageError("unknown distribution tag: " + tag);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::uint64_t key_hash(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (std::uint64_t p : parts) h = spartan::detail::mix_pair(h, p);
  return h;
}

struct TransportFlags {
  std::string method = "auto";
  int max_iter = TransportConfig{}.max_iterations;
  double tol = TransportConfig{}.tolerance;
  double damping = TransportConfig{}.step_damping;
  std::string target = "sobol";

  void attach(CLI::App* app) {
    app->add_option("--transport", method, "transport method: auto|exact|projection")
        ->check(CLI::IsMember({"auto", "exact", "projection"}));
    app->add_option("--max-iter", max_iter, "projection transport iteration cap");
    app->add_option("--tol", tol, "relative sliced-cost improvement tolerance");
    app->add_option("--damping", damping, "projection step damping in (0,1]");
    app->add_option("--target", target, "synthetic uniform transport target")
        ->check(CLI::IsMember({"sobol", "random"}));
  }

  TransportConfig to_config() const {
    TransportConfig cfg;
    if (method == "exact") cfg.method = TransportMethod::exact;
    else if (method == "projection") cfg.method = TransportMethod::projection;
    else cfg.method = TransportMethod::automatic;
    cfg.max_iterations = max_iter;
    cfg.tolerance = tol;
    cfg.step_damping = damping;
    return cfg;
  }

  SpartanConfig to_spartan_config() const {
    SpartanConfig cfg;
    cfg.transport = to_config();
    cfg.design.sobol_target = target == "sobol";
    return cfg;
  }

  json to_json() const {
    return {{"method", method}, {"max_iter", max_iter}, {"tol", tol},
            {"damping", damping},  {"target", target}};
  }
};

struct MethodSpec {
  std::string token;    // as given on the command line
  std::string selector; // spartan | uniform | kmedoids
  std::string rule;     // scott | theorem1
};

inline MethodSpec parse_method(const std::string& token) {
  MethodSpec m;
  m.token = token;
  const auto colon = token.find(':');
  m.selector = colon == std::string::npos ? token : token.substr(0, colon);
  m.rule = colon == std::string::npos ? "scott" : token.substr(colon + 1);
  if (m.selector != "spartan" && m.selector != "uniform" && m.selector != "kmedoids")
    throw UsageError("unknown method: " + token);
  if (m.rule != "scott" && m.rule != "theorem1")
    throw UsageError("unknown bandwidth rule in method token: " + token);
  return m;
}

inline BandwidthRule rule_from_name(const std::string& name) {
  if (name == "scott") return BandwidthRule::scott();
  if (name == "theorem1") return BandwidthRule::theorem1();
  throw UsageError("unknown bandwidth rule: " + name);
}

}  // namespace detail_cli

// ---------------------------------------------------------------------------
// generate

inline void cmd_generate(const std::string& dist, std::size_t n, std::size_t d,
                         std::uint64_t seed, const std::filesystem::path& output) {
  const DistributionSpec spec = detail_cli::make_distribution(dist, d);
  RngStream rng(seed, detail_cli::key_hash({0x6765ULL}));  // generate task stream
  std::vector<int> components;
  const Matrix data = sample(spec, n, rng, &components);
  write_csv(output, data);

  std::vector<std::size_t> counts(spec.components.size(), 0);
  for (int c : components) ++counts[static_cast<std::size_t>(c)];
  json meta;
  meta["command"] = "generate";
  meta["config"] = {{"dist", dist}, {"n", n}, {"d", d}, {"seed", seed}};
  meta["seed"] = seed;
  meta["component_counts"] = counts;
  detail_cli::write_sidecar(output, meta);
}

// ---------------------------------------------------------------------------
// subsample

struct SubsampleOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::size_t r = 0;
  std::string method = "spartan";
  std::uint64_t seed = 0;
  detail_cli::TransportFlags transport;
  std::string replacement = "without";
  int kmedoids_max_iter = 50;
};

inline void cmd_subsample(const SubsampleOptions& opt) {
  const Matrix data = read_csv(opt.input);
  data.validate("training sample");
  if (opt.r < 1 || opt.r > data.rows())
    throw UsageError("subsample: need 1 <= r <= n");

  RngStream rng(opt.seed, detail_cli::key_hash({0x5353ULL}));
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> indices;
  json diag;
  std::string method_tag = opt.method;
  if (opt.method == "spartan") {
    SpartanConfig cfg = opt.transport.to_spartan_config();
    cfg.policy = opt.replacement == "with" ? MatchPolicy::with_replacement
                                           : MatchPolicy::without_replacement;
    const SelectionResult sel = spartan(data, opt.r, cfg, rng);
    indices = sel.indices;
    method_tag = sel.method;
    if (sel.transport_diag) {
      diag = {{"initial_cost", sel.transport_diag->initial_cost},
              {"final_cost", sel.transport_diag->final_cost},
              {"iterations", sel.transport_diag->iterations}};
    }
  } else if (opt.method == "uniform") {
    indices = uniform_select(data.rows(), opt.r, rng);
  } else if (opt.method == "kmedoids") {
    indices = kmedoids_select(data, opt.r, opt.kmedoids_max_iter, rng);
  } else {
    throw UsageError("unknown method: " + opt.method);
  }
  const auto t1 = std::chrono::steady_clock::now();

  write_index_csv(opt.output, indices);
  json meta;
  meta["command"] = "subsample";
  meta["config"] = {{"input", opt.input.string()},
                    {"r", opt.r},
                    {"method", opt.method},
                    {"seed", opt.seed},
                    {"replacement", opt.replacement},
                    {"transport", opt.transport.to_json()}};
  meta["seed"] = opt.seed;
  meta["method"] = method_tag;
  meta["n"] = data.rows();
  meta["d"] = data.cols();
  if (!diag.is_null()) meta["transport"] = diag;
  meta["timing"] = {{"wall_time_ms",
                     std::chrono::duration<double, std::milli>(t1 - t0).count()}};
  detail_cli::write_sidecar(opt.output, meta);
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::filesystem::path input;    // training CSV
  std::filesystem::path indices;  // subsample index CSV
  std::filesystem::path test;     // test CSV
  std::filesystem::path output;   // JSON score
  std::string reference = "full-kde";  // d1|d2|d3|full-kde
  std::string rule = "scott";          // scott|theorem1|fixed
  std::filesystem::path h_matrix;      // fixed rule only
  std::uint64_t seed = 0;
};

inline void cmd_evaluate(const EvaluateOptions& opt) {
  const Matrix train = read_csv(opt.input);
  const Matrix test = read_csv(opt.test);
  if (test.cols() != train.cols())
    throw DataError("evaluate: train/test dimension mismatch");
  const auto indices = read_index_csv(opt.indices);
  for (int idx : indices)
    if (static_cast<std::size_t>(idx) >= train.rows())
      throw DataError("evaluate: index out of range: " + std::to_string(idx));

  const std::size_t d = train.cols();
  BandwidthRule rule;
  if (opt.rule == "fixed") {
    if (opt.h_matrix.empty()) throw UsageError("evaluate: --h-matrix required for fixed rule");
    rule = BandwidthRule::fixed(SymMatrix::from_matrix(read_csv(opt.h_matrix), 1e-12));
  } else {
    rule = detail_cli::rule_from_name(opt.rule);
  }

  Matrix subsample(indices.size(), d);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) subsample(i, j) = train(indices[i], j);

  const SymMatrix sigma_hat = empirical_covariance(train);
  const KdeModel model(subsample, bandwidth(rule, indices.size(), d, sigma_hat));
  const std::vector<double> p_hat = model.eval(test);

  std::vector<double> p_ref;
  if (opt.reference == "full-kde") {
    const KdeModel full(train, bandwidth(rule, train.rows(), d, sigma_hat));
    p_ref = full.eval(test);
  } else {
    const DistributionSpec spec = detail_cli::make_distribution(opt.reference, d);
    p_ref = density(spec, test);
  }
  const double score = hellinger_score(p_hat, p_ref);

  json out;
  out["hellinger"] = score;
  out["r"] = indices.size();
  out["rule"] = opt.rule;
  out["reference_kind"] = opt.reference;
  out["seed"] = opt.seed;
  out["config"] = {{"input", opt.input.string()}, {"indices", opt.indices.string()},
                   {"test", opt.test.string()},   {"reference", opt.reference},
                   {"rule", opt.rule},            {"seed", opt.seed}};
  out["config_hash"] = detail_cli::config_hash(out["config"]);
  detail_cli::write_json(opt.output, out);
}

// ---------------------------------------------------------------------------
// discrepancy

struct DiscrepancyOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  bool estimate = false;
  std::size_t n_corners = 100000;
  std::uint64_t seed = 0;
};

inline void cmd_discrepancy(const DiscrepancyOptions& opt) {
  const Matrix pts = read_csv(opt.input);
  double d_star;
  std::string mode;
  if (opt.estimate) {
    RngStream rng(opt.seed, detail_cli::key_hash({0xD15CULL}));
    d_star = star_discrepancy_estimate(pts, opt.n_corners, rng);
    mode = "estimate";
  } else {
    d_star = star_discrepancy_exact(pts);
    mode = "exact";
  }
  json out;
  out["d_star"] = d_star;
  out["mode"] = mode;
  out["r"] = pts.rows();
  out["d"] = pts.cols();
  out["seed"] = opt.seed;
  out["config"] = {{"input", opt.input.string()}, {"estimate", opt.estimate},
                   {"n_corners", opt.n_corners},  {"seed", opt.seed}};
  out["config_hash"] = detail_cli::config_hash(out["config"]);
  detail_cli::write_json(opt.output, out);
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::vector<std::string> dists{"d1"};
  std::vector<std::size_t> dims{2};
  std::size_t n = 10000;
  std::size_t test_n = 0;  // 0 -> same as n
  std::vector<std::size_t> r_list{32, 64, 128, 256, 512};
  std::vector<std::string> methods{"spartan:scott", "spartan:theorem1", "uniform"};
  std::size_t replicates = 30;
  std::uint64_t seed = 0;
  detail_cli::TransportFlags transport;
  // Randomized QMC: each replicate gets an independently digit-shifted design
  // so the replicate mean reflects the method's average-case behavior rather
  // than the quirks of one fixed Sobol prefix.
  std::string scramble = "shift";  // shift | none
  int kmedoids_max_iter = 20;
  std::filesystem::path output;
  std::filesystem::path timing_output;  // optional; wall times are not reproducible
};

struct BenchRow {
  std::string dist;
  std::size_t d, n, r;
  std::string method, rule;
  std::size_t replicate;
  std::uint64_t row_seed;
  double hellinger;
  double wall_time_ms;
};

inline std::vector<BenchRow> run_bench_jobs(const BenchOptions& opt) {
  for (std::size_t i = 1; i < opt.r_list.size(); ++i)
    if (opt.r_list[i] <= opt.r_list[i - 1])
      throw UsageError("bench: r-list must be strictly increasing");
  if (opt.replicates < 2) throw UsageError("bench: replicates >= 2");
  const std::size_t test_n = opt.test_n ? opt.test_n : opt.n;

  struct Job {
    std::size_t dist_i, dim_i, r_i, method_i, rep;
  };
  std::vector<detail_cli::MethodSpec> methods;
  for (const auto& tok : opt.methods) methods.push_back(detail_cli::parse_method(tok));

  std::vector<Job> jobs;
  for (std::size_t di = 0; di < opt.dists.size(); ++di)
    for (std::size_t mi = 0; mi < opt.dims.size(); ++mi)
      for (std::size_t ri = 0; ri < opt.r_list.size(); ++ri)
        for (std::size_t me = 0; me < methods.size(); ++me)
          for (std::size_t rep = 0; rep < opt.replicates; ++rep)
            jobs.push_back({di, mi, ri, me, rep});

  const RngStream base(opt.seed, detail_cli::key_hash({0xBE9CULL}));
  std::vector<BenchRow> rows(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t k) {
    const Job& job = jobs[k];
    const std::string& dist = opt.dists[job.dist_i];
    const std::size_t d = opt.dims[job.dim_i];
    const std::size_t r = opt.r_list[job.r_i];
    const auto& method = methods[job.method_i];
    const DistributionSpec spec = detail_cli::make_distribution(dist, d);

    // The data stream depends only on (dist, d, replicate): methods and r
    // values are compared on the same train/test draw.
    const std::uint64_t data_key =
        detail_cli::key_hash({0xDA7AULL, job.dist_i, d, job.rep});
    RngStream data_rng = base.substream(data_key);
    const Matrix train = sample(spec, opt.n, data_rng);
    const Matrix test = sample(spec, test_n, data_rng);

    const std::uint64_t select_key = detail_cli::key_hash(
        {0x5E1EULL, job.dist_i, d, r, job.method_i, job.rep});
    RngStream select_rng = base.substream(select_key);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> indices;
    if (method.selector == "spartan") {
      SpartanConfig cfg = opt.transport.to_spartan_config();
      if (opt.scramble == "shift") {
        cfg.design.scramble = Scramble::digital_shift;
        cfg.design.scramble_seed = select_key;
      }
      indices = spartan(train, r, cfg, select_rng).indices;
    } else if (method.selector == "uniform") {
      indices = uniform_select(opt.n, r, select_rng);
    } else {
      indices = kmedoids_select(train, r, opt.kmedoids_max_iter, select_rng);
    }
    const auto t1 = std::chrono::steady_clock::now();

    Matrix subsample(indices.size(), d);
    for (std::size_t i = 0; i < indices.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) subsample(i, j) = train(indices[i], j);
    const SymMatrix sigma_hat = empirical_covariance(train);
    const KdeModel model(
        subsample, bandwidth(detail_cli::rule_from_name(method.rule), indices.size(),
                             d, sigma_hat));
    const double score = hellinger_score(model.eval(test), density(spec, test));

    rows[k] = {dist,
               d,
               opt.n,
               r,
               method.selector,
               method.rule,
               job.rep,
               data_key,
               score,
               std::chrono::duration<double, std::milli>(t1 - t0).count()};
  });

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.dist, a.d, a.r, a.method, a.rule, a.replicate) <
           std::tie(b.dist, b.d, b.r, b.method, b.rule, b.replicate);
  });
  return rows;
}

inline void cmd_bench(const BenchOptions& opt) {
  const auto rows = run_bench_jobs(opt);

  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw DataError("cannot write " + opt.output.string());
  out << "kind,dist,d,n,r,method,rule,replicate,seed,hellinger,mean,stderr\n";
  for (const auto& row : rows) {
    out << "replicate," << row.dist << ',' << row.d << ',' << row.n << ',' << row.r
        << ',' << row.method << ',' << row.rule << ',' << row.replicate << ','
        << row.row_seed << ',' << format_double(row.hellinger) << ",,\n";
  }
  // Summary rows: per-(dist, d, r, method, rule) mean and standard error.
  std::map<std::tuple<std::string, std::size_t, std::size_t, std::string, std::string>,
           std::vector<double>>
      cells;
  for (const auto& row : rows)
    cells[{row.dist, row.d, row.r, row.method, row.rule}].push_back(row.hellinger);
  for (const auto& [key, values] : cells) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(values.size()));
    out << "summary," << std::get<0>(key) << ',' << std::get<1>(key) << ',' << opt.n
        << ',' << std::get<2>(key) << ',' << std::get<3>(key) << ','
        << std::get<4>(key) << ",,," << ',' << format_double(mean) << ','
        << format_double(se) << '\n';
  }
  out.close();

  if (!opt.timing_output.empty()) {
    std::ofstream tout(opt.timing_output, std::ios::binary);
    if (!tout) throw DataError("cannot write " + opt.timing_output.string());
    tout << "dist,d,n,r,method,rule,replicate,wall_time_ms\n";
    for (const auto& row : rows)
      tout << row.dist << ',' << row.d << ',' << row.n << ',' << row.r << ','
           << row.method << ',' << row.rule << ',' << row.replicate << ','
           << format_double(row.wall_time_ms) << '\n';
  }

  json meta;
  meta["command"] = "bench";
  meta["config"] = {{"dists", opt.dists},
                    {"dims", opt.dims},
                    {"n", opt.n},
                    {"test_n", opt.test_n},
                    {"r_list", opt.r_list},
                    {"methods", opt.methods},
                    {"replicates", opt.replicates},
                    {"seed", opt.seed},
                    {"scramble", opt.scramble},
                    {"transport", opt.transport.to_json()}};
  meta["seed"] = opt.seed;
  detail_cli::write_sidecar(opt.output, meta);
}

// ---------------------------------------------------------------------------
// driver

inline int run(std::vector<std::string> args) {
  CLI::App app{"spartan: representative subsampling via optimal transport and "
               "space-filling designs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "draw a synthetic sample to CSV");
  std::string gen_dist = "d1";
  std::size_t gen_n = 1000, gen_d = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dist", gen_dist, "distribution tag: d1|d2|d3")->required();
  gen->add_option("--n", gen_n, "sample size")->required();
  gen->add_option("--d", gen_d, "dimension")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--output", gen_out, "output CSV path")->required();

  // subsample
  auto* sub = app.add_subcommand("subsample", "select a representative subsample");
  SubsampleOptions sub_opt;
  std::string sub_in, sub_out;
  sub->add_option("--input", sub_in, "training CSV")->required();
  sub->add_option("--output", sub_out, "indices CSV output")->required();
  sub->add_option("--r", sub_opt.r, "subsample size")->required();
  sub->add_option("--method", sub_opt.method, "spartan|uniform|kmedoids")
      ->check(CLI::IsMember({"spartan", "uniform", "kmedoids"}));
  sub->add_option("--seed", sub_opt.seed, "RNG seed")->required();
  sub->add_option("--replacement", sub_opt.replacement, "with|without")
      ->check(CLI::IsMember({"with", "without"}));
  sub->add_option("--max-swaps", sub_opt.kmedoids_max_iter, "kmedoids swap cap");
  sub_opt.transport.attach(sub);

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "score a subsample density estimate");
  EvaluateOptions eva_opt;
  std::string eva_in, eva_idx, eva_test, eva_out, eva_h;
  eva->add_option("--input", eva_in, "training CSV")->required();
  eva->add_option("--indices", eva_idx, "subsample indices CSV")->required();
  eva->add_option("--test", eva_test, "test CSV")->required();
  eva->add_option("--output", eva_out, "output JSON")->required();
  eva->add_option("--reference", eva_opt.reference, "d1|d2|d3|full-kde")
      ->check(CLI::IsMember({"d1", "d2", "d3", "full-kde"}));
  eva->add_option("--rule", eva_opt.rule, "scott|theorem1|fixed")
      ->check(CLI::IsMember({"scott", "theorem1", "fixed"}));
  eva->add_option("--h-matrix", eva_h, "fixed bandwidth matrix CSV");
  eva->add_option("--seed", eva_opt.seed, "seed recorded in the output");

  // discrepancy
  auto* dis = app.add_subcommand("discrepancy", "star discrepancy of a point set");
  DiscrepancyOptions dis_opt;
  std::string dis_in, dis_out;
  dis->add_option("--input", dis_in, "points CSV in [0,1]^d")->required();
  dis->add_option("--output", dis_out, "output JSON")->required();
  dis->add_flag("--estimate", dis_opt.estimate, "corner-sampling lower bound");
  dis->add_option("--n-corners", dis_opt.n_corners, "corners for --estimate");
  dis->add_option("--seed", dis_opt.seed, "RNG seed for --estimate");

  // bench
  auto* ben = app.add_subcommand("bench", "factorial Hellinger/timing sweep");
  BenchOptions ben_opt;
  std::string ben_dists = "d1", ben_dims = "2", ben_rs = "32,64,128,256,512";
  std::string ben_methods = "spartan:scott,spartan:theorem1,uniform";
  std::string ben_out, ben_timing;
  ben->add_option("--dists", ben_dists, "comma list of d1|d2|d3");
  ben->add_option("--dims", ben_dims, "comma list of dimensions");
  ben->add_option("--n", ben_opt.n, "training sample size");
  ben->add_option("--test-n", ben_opt.test_n, "test sample size (default n)");
  ben->add_option("--r-list", ben_rs, "strictly increasing subsample sizes");
  ben->add_option("--methods", ben_methods,
                  "comma list: uniform|kmedoids|spartan:scott|spartan:theorem1");
  ben->add_option("--replicates", ben_opt.replicates, "replicates per cell");
  ben->add_option("--seed", ben_opt.seed, "base RNG seed")->required();
  ben->add_option("--output", ben_out, "report CSV output")->required();
  ben->add_option("--timing-output", ben_timing, "per-cell wall-time CSV");
  ben->add_option("--scramble", ben_opt.scramble,
                  "per-replicate design randomization: shift|none")
      ->check(CLI::IsMember({"shift", "none"}));
  ben_opt.transport.attach(ben);

  std::vector<const char*> argv;
  argv.push_back("spartan");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      cmd_generate(gen_dist, gen_n, gen_d, gen_seed, gen_out);
    } else if (sub->parsed()) {
      sub_opt.input = sub_in;
      sub_opt.output = sub_out;
      cmd_subsample(sub_opt);
    } else if (eva->parsed()) {
      eva_opt.input = eva_in;
      eva_opt.indices = eva_idx;
      eva_opt.test = eva_test;
      eva_opt.output = eva_out;
      eva_opt.h_matrix = eva_h;
      cmd_evaluate(eva_opt);
    } else if (dis->parsed()) {
      dis_opt.input = dis_in;
      dis_opt.output = dis_out;
      cmd_discrepancy(dis_opt);
    } else if (ben->parsed()) {
      ben_opt.dists = detail_cli::split_list(ben_dists);
      ben_opt.dims.clear();
      for (const auto& tok : detail_cli::split_list(ben_dims))
        ben_opt.dims.push_back(std::stoul(tok));
      ben_opt.r_list.clear();
      for (const auto& tok : detail_cli::split_list(ben_rs))
        ben_opt.r_list.push_back(std::stoul(tok));
      ben_opt.methods = detail_cli::split_list(ben_methods);
      ben_opt.output = ben_out;
      ben_opt.timing_output = ben_timing;
      cmd_bench(ben_opt);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace spartan::cli
