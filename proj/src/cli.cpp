#include "ratiocut/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ratiocut/error.hpp"
#include "ratiocut/functional.hpp"
#include "ratiocut/ratio_cut.hpp"
#include "ratiocut/verify.hpp"
#include "text_scan.hpp"

namespace ratiocut::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const RunManifest& m) {
  const auto& d = m.descent;
  ordered_json j;
  j["input"] = m.input;
  j["graph"] = m.graph;
  j["truth"] = m.truth;
  j["out_prefix"] = m.out_prefix;
  j["k"] = m.knn.k;
  j["self_tune"] = m.knn.self_tune_m;
  j["universal_scale"] = m.knn.universal_scale;
  j["allow_disconnected"] = m.allow_disconnected;
  j["init"] = m.init;
  j["seed"] = d.seed;
  j["c"] = d.c;
  j["outer_tol"] = d.outer_tol;
  j["max_outer_iter"] = d.max_outer_iter;
  j["inner_tol"] = d.inner_tol;
  j["inner_max_iter"] = d.inner_max_iter;
  j["accelerate_inner"] = d.accelerate_inner;
  j["check_lemmas"] = d.check_lemmas;
  j["threshold"] = m.threshold;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  take("input", m.input);
  take("graph", m.graph);
  take("truth", m.truth);
  take("out_prefix", m.out_prefix);
  take("k", m.knn.k);
  take("self_tune", m.knn.self_tune_m);
  take("universal_scale", m.knn.universal_scale);
  take("allow_disconnected", m.allow_disconnected);
  take("init", m.init);
  take("seed", m.descent.seed);
  take("c", m.descent.c);
  take("outer_tol", m.descent.outer_tol);
  take("max_outer_iter", m.descent.max_outer_iter);
  take("inner_tol", m.descent.inner_tol);
  take("inner_max_iter", m.descent.inner_max_iter);
  take("accelerate_inner", m.descent.accelerate_inner);
  take("check_lemmas", m.descent.check_lemmas);
  take("threshold", m.threshold);
  return m;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::numerical_failure:
    case ErrorCode::undefined_energy:
      return exit_numerical;
    default:
      return exit_usage_or_io;
  }
}

// Runs body and maps library errors onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad manifest: " << e.what() << '\n';
    return exit_usage_or_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage_or_io;
  }
}

std::vector<std::uint8_t> load_truth(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (buffer.str().find(',') != std::string::npos)
    return load_cloud(buffer, LabelColumn::present).truth;
  return read_labels(buffer);
}

}  // namespace

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto data = two_moons(opts.moons);
    auto file = open_output(opts.out);
    save_cloud(file, data);
    if (!file) throw Error(ErrorCode::io_error, "write to '" + opts.out + "' failed");
    const auto& p = opts.moons;
    ordered_json echo;
    echo["n_per_moon"] = p.n_per_moon;
    echo["dim"] = p.ambient_dim;
    echo["sigma"] = p.sigma;
    echo["seed"] = p.seed;
    echo["sampling"] = p.sampling == AngleSampling::uniform ? "uniform" : "equispaced";
    echo["noise"] = p.noise == NoiseMode::ambient ? "ambient" : "planar";
    echo["out"] = opts.out;
    echo["rows"] = data.cloud.size();
    out << echo.dump(2) << '\n';
    return int{exit_ok};
  });
}

int cmd_cluster(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (m.init != "random" && m.init != "spectral")
      throw Error(ErrorCode::invalid_parameter, "init must be 'random' or 'spectral'");
    if (m.threshold != "sign" && m.threshold != "sweep")
      throw Error(ErrorCode::invalid_parameter, "threshold must be 'sign' or 'sweep'");
    validate(m.descent);

    WeightedGraph g;
    std::vector<std::uint8_t> truth;
    if (!m.graph.empty()) {
      auto in = open_input(m.graph);
      g = load_edge_list(in);
    } else if (!m.input.empty()) {
      auto in = open_input(m.input);
      auto data = load_cloud(in, LabelColumn::detect);
      g = knn_graph(data.cloud, m.knn);
      truth = std::move(data.truth);
    } else {
      throw Error(ErrorCode::invalid_parameter, "one of --in or --graph is required");
    }
    if (!m.truth.empty()) truth = load_truth(m.truth);
    if (!truth.empty() && truth.size() != g.num_vertices())
      throw Error(ErrorCode::length_mismatch, "truth labels do not match the number of vertices");

    const std::size_t components = count_components(g);
    if (components > 1 && !m.allow_disconnected)
      throw Error(ErrorCode::disconnected_graph,
                  "graph is disconnected (" + std::to_string(components) +
                      " components); pass --allow-disconnected to run anyway");

    const Signal f0 = m.init == "spectral" ? init_spectral(g)
                                           : init_random(g.num_vertices(), m.descent.seed);
    const DescentResult result = ratiocut::run(g, f0, m.descent);
    const Partition part = threshold_cluster(
        g, result.f_star, m.threshold == "sweep" ? ThresholdMode::sweep : ThresholdMode::sign);

    ordered_json summary;
    summary["final_energy"] = energy(g, result.f_star);
    summary["iterations"] = result.trace.size();
    summary["converged"] = result.converged;
    summary["critical_residual"] = result.critical_residual;
    summary["ratio_cut"] = ratio_cut_value(g, part);
    if (!truth.empty()) summary["purity"] = purity(part.labels(), truth);
    summary["cluster_size"] = part.size_s();
    summary["components"] = components;
    summary["inner_converged"] = result.inner_converged;
    summary["lemma_violations"] = result.violations.size();
    summary["manifest"] = to_json(m);

    {
      auto f = open_output(m.out_prefix + ".labels");
      write_labels(f, part.labels());
    }
    {
      auto f = open_output(m.out_prefix + ".signal");
      for (double x : result.f_star) f << detail::format_real(x) << '\n';
    }
    {
      auto f = open_output(m.out_prefix + ".trace.csv");
      write_trace_csv(f, result.trace);
    }
    {
      auto f = open_output(m.out_prefix + ".summary.json");
      f << summary.dump(2) << '\n';
    }
    out << summary.dump(2) << '\n';
    if (!result.converged) {
      err << "warning: descent stopped after " << result.trace.size()
          << " iterations without meeting outer_tol\n";
      return int{exit_not_converged};
    }
    return int{exit_ok};
  });
}

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_input(opts.labels);
    const auto labels = read_labels(in);
    const auto truth = load_truth(opts.truth);
    out << "purity " << detail::format_real(purity(labels, truth)) << '\n';
    if (!opts.graph.empty()) {
      auto gin = open_input(opts.graph);
      const auto g = load_edge_list(gin);
      out << "ratio_cut " << detail::format_real(ratio_cut_value(g, Partition(labels))) << '\n';
    }
    return int{exit_ok};
  });
}

namespace {

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto outcomes = run_verification(opts);
    std::size_t failed = 0;
    for (const auto& o : outcomes) {
      out << (o.passed ? "PASS " : "FAIL ") << o.name << " (" << o.detail << ")\n";
      failed += o.passed ? 0 : 1;
    }
    if (failed) {
      out << failed << " of " << outcomes.size() << " checks failed\n";
      return int{exit_numerical};
    }
    out << "all " << outcomes.size() << " checks passed\n";
    return int{exit_ok};
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ratio cut clustering by explicit-implicit steepest descent", "ratiocut"};
  app.require_subcommand(1);

  GenerateOptions gen;
  bool equispaced = false, planar = false;
  auto* generate = app.add_subcommand("generate", "Write a two-moons point cloud as CSV");
  generate->add_option("--n-per-moon", gen.moons.n_per_moon, "Points per moon")
      ->check(CLI::PositiveNumber);
  generate->add_option("--dim", gen.moons.ambient_dim, "Ambient dimension")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  generate->add_option("--sigma", gen.moons.sigma, "Noise standard deviation")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.moons.seed, "Random seed");
  generate->add_option("--out", gen.out, "Output CSV")->required();
  generate->add_flag("--equispaced", equispaced, "Equispaced angles instead of uniform draws");
  generate->add_flag("--planar-noise", planar, "Add noise to the first two coordinates only");

  // Cluster flags override values loaded from --config.
  RunManifest flags;
  std::string config;
  std::vector<std::pair<CLI::Option*, std::function<void(RunManifest&)>>> overrides;
  auto* cluster = app.add_subcommand("cluster", "Cluster a point cloud or edge list");
  auto bind = [&](const std::string& name, auto& field, auto member, const std::string& help) {
    auto* opt = cluster->add_option(name, field, help);
    overrides.emplace_back(opt, [&field, member](RunManifest& m) { std::invoke(member, m) = field; });
    return opt;
  };
  auto bind_flag = [&](const std::string& name, bool& field, auto member, const std::string& help) {
    auto* opt = cluster->add_flag(name, field, help);
    overrides.emplace_back(opt, [&field, member](RunManifest& m) { std::invoke(member, m) = field; });
    return opt;
  };
  cluster->add_option("--config", config, "Run manifest (JSON); flags override it");
  bind("--in", flags.input, &RunManifest::input, "Point cloud CSV");
  bind("--graph", flags.graph, &RunManifest::graph, "Edge list (instead of --in)");
  bind("--truth", flags.truth, &RunManifest::truth, "Ground-truth labels file");
  bind("--out-prefix", flags.out_prefix, &RunManifest::out_prefix, "Prefix for output files");
  bind("--k", flags.knn.k, [](RunManifest& m) -> auto& { return m.knn.k; }, "Nearest neighbors")
      ->check(CLI::PositiveNumber);
  bind("--self-tune", flags.knn.self_tune_m,
       [](RunManifest& m) -> auto& { return m.knn.self_tune_m; }, "Self-tuning neighbor index")
      ->check(CLI::PositiveNumber);
  bind("--scale", flags.knn.universal_scale,
       [](RunManifest& m) -> auto& { return m.knn.universal_scale; }, "Universal scaling")
      ->check(CLI::PositiveNumber);
  bind("--c", flags.descent.c, [](RunManifest& m) -> auto& { return m.descent.c; },
       "Step constant c")
      ->check(CLI::PositiveNumber);
  bind("--init", flags.init, &RunManifest::init, "random | spectral")
      ->check(CLI::IsMember({"random", "spectral"}));
  bind("--seed", flags.descent.seed, [](RunManifest& m) -> auto& { return m.descent.seed; },
       "Seed for random init");
  bind("--outer-tol", flags.descent.outer_tol,
       [](RunManifest& m) -> auto& { return m.descent.outer_tol; }, "Stop when |f^{k+1}-f^k| < tol")
      ->check(CLI::PositiveNumber);
  bind("--max-iter", flags.descent.max_outer_iter,
       [](RunManifest& m) -> auto& { return m.descent.max_outer_iter; }, "Outer iteration limit")
      ->check(CLI::PositiveNumber);
  bind("--inner-tol", flags.descent.inner_tol,
       [](RunManifest& m) -> auto& { return m.descent.inner_tol; }, "Prox duality-gap tolerance")
      ->check(CLI::PositiveNumber);
  bind("--inner-max-iter", flags.descent.inner_max_iter,
       [](RunManifest& m) -> auto& { return m.descent.inner_max_iter; }, "Prox iteration limit")
      ->check(CLI::PositiveNumber);
  bind("--threshold", flags.threshold, &RunManifest::threshold, "sign | sweep")
      ->check(CLI::IsMember({"sign", "sweep"}));
  bind_flag("--accelerate", flags.descent.accelerate_inner,
            [](RunManifest& m) -> auto& { return m.descent.accelerate_inner; },
            "Accelerated prox iteration");
  bind_flag("--check-lemmas,!--no-check-lemmas", flags.descent.check_lemmas,
            [](RunManifest& m) -> auto& { return m.descent.check_lemmas; },
            "Per-step runtime checks");
  bind_flag("--allow-disconnected", flags.allow_disconnected, &RunManifest::allow_disconnected,
            "Run even when the graph has several components");

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Compare labels against ground truth");
  evaluate->add_option("--labels", eval.labels, "Predicted labels")->required();
  evaluate->add_option("--truth", eval.truth, "Truth labels or labeled CSV")->required();
  evaluate->add_option("--graph", eval.graph, "Edge list for the RatioCut value");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run the small-graph verification battery");
  verify->add_option("--seeds", ver.seeds, "Number of seeds")->check(CLI::PositiveNumber);
  verify->add_option("--n-max", ver.n_max, "Largest enumerated graph")
      ->check(CLI::Range(std::size_t{3}, tightness_max_n));
  verify->add_option("--inner-tol", ver.inner_tol, "Prox tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--c", ver.c, "Step constant")->check(CLI::PositiveNumber);
  verify->add_option("--descent-slack", ver.descent_slack, "Allowed energy-inequality deficit")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{exit_ok} : int{exit_usage_or_io};
  }

  if (generate->parsed()) {
    if (equispaced) gen.moons.sampling = AngleSampling::equispaced;
    if (planar) gen.moons.noise = NoiseMode::planar;
    return cmd_generate(gen, out, err);
  }
  if (cluster->parsed()) {
    RunManifest m;
    if (!config.empty()) {
      const int rc = guarded(err, [&] {
        auto in = open_input(config);
        const json j = json::parse(in);
        m = manifest_from_json(j.contains("manifest") ? j.at("manifest") : j);
        return int{exit_ok};
      });
      if (rc != exit_ok) return rc;
    }
    for (const auto& [opt, apply] : overrides)
      if (opt->count() > 0) apply(m);
    return cmd_cluster(m, out, err);
  }
  if (evaluate->parsed()) return cmd_evaluate(eval, out, err);
  return cmd_verify(ver, out, err);
}

}  // namespace ratiocut::cli
