#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <typeinfo>
#include <vector>

#include <CLI11.hpp>
#include <cxxabi.h>
#include <nlohmann/json.hpp>

#include "tss/tss.hpp"

namespace {

using nlohmann::json;

std::string error_name(const std::exception& e) {
  int status = 0;
  char* demangled =
      abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
  std::string name = (status == 0 && demangled) ? demangled : typeid(e).name();
  std::free(demangled);
  if (name.rfind("tss::", 0) == 0) name = name.substr(5);
  return name;
}

// --tree accepts a tree JSON path or an inline descriptor: "line:K" is the
// path graph on K nodes, "hss:L" the binary partition tree on L leaves with
// empty internal blocks. Descriptors use --block for the block size.
tss::TreeDescription resolve_tree(const std::string& arg, int block) {
  try {
    if (arg.rfind("line:", 0) == 0) {
      const int k = std::stoi(arg.substr(5));
      return {tss::line_tree(k), tss::BlockLayout::uniform(k, block, block)};
    }
    if (arg.rfind("hss:", 0) == 0) {
      const int leaves = std::stoi(arg.substr(4));
      tss::HssTree h = tss::hss_binary_tree(leaves);
      std::vector<int> sizes(h.tree.node_count(), block);
      for (tss::NodeId e : h.empty_nodes) sizes[e - 1] = 0;
      tss::BlockLayout layout(sizes, sizes);
      return {std::move(h.tree), std::move(layout)};
    }
  } catch (const std::invalid_argument&) {
    throw tss::ParseError("bad tree descriptor: " + arg);
  } catch (const std::out_of_range&) {
    throw tss::ParseError("bad tree descriptor: " + arg);
  }
  return tss::load_tree_json(arg);
}

json profile_to_json(const tss::RankProfile& profile) {
  json out = json::array();
  for (const auto& [e, rho] : profile.entries())
    out.push_back({{"from", e.from}, {"to", e.to}, {"rho", rho}});
  return out;
}

template <class F>
double best_seconds(int reps, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

struct Options {
  std::string tree_arg, matrix_path, tss_path, out_path, x_path, b_path;
  std::string format = "text", kind = "dense", family = "line";
  std::string sizes_arg = "8,16,32,64";
  double tol = tss::kDefaultTolerance;
  double girs_c = -1.0;
  long long samples = 200;
  std::uint64_t seed = 1;
  int block = 2;
  int rank = 1;
  bool fallback_dense = false;
};

void run_construct(const Options& opt) {
  tss::TreeDescription td = resolve_tree(opt.tree_arg, opt.block);
  tss::GraphPartitionedMatrix g(td.tree, td.layout,
                                tss::load_csv_matrix(opt.matrix_path));
  tss::TssMatrix t = tss::construct_tss(g, opt.tol);
  tss::save_tss_json(opt.out_path, t);
  if (opt.format == "json") {
    std::cout << json{{"node_count", t.tree().node_count()},
                      {"max_rank", t.profile().max_rank()},
                      {"total_rank", t.profile().total()},
                      {"out", opt.out_path}}
                     .dump()
              << "\n";
  } else {
    std::cout << "constructed TSS on " << t.tree().node_count()
              << " nodes, max edge rank " << t.profile().max_rank()
              << ", written to " << opt.out_path << "\n";
  }
}

void run_reconstruct(const Options& opt) {
  tss::TssMatrix t = tss::load_tss_json(opt.tss_path);
  tss::GraphPartitionedMatrix dense = t.to_dense();
  tss::save_csv_matrix(opt.out_path, dense.values());
  if (opt.format == "text")
    std::cout << "wrote " << dense.values().rows() << "x"
              << dense.values().cols() << " matrix to " << opt.out_path << "\n";
}

void run_matvec(const Options& opt) {
  tss::TssMatrix t = tss::load_tss_json(opt.tss_path);
  Eigen::VectorXd x = tss::load_csv_vector(opt.x_path);
  tss::save_csv_vector(opt.out_path, tss::matvec(t, x));
}

void run_solve(const Options& opt) {
  tss::TssMatrix t = tss::load_tss_json(opt.tss_path);
  Eigen::VectorXd b = tss::load_csv_vector(opt.b_path);
  Eigen::VectorXd x;
  if (opt.fallback_dense) {
    x = tss::solve(t, b);
  } else {
    x = tss::solve_lifted(tss::assemble_lifted(t, b)).x;
  }
  tss::save_csv_vector(opt.out_path, x);
}

void run_analyze(const Options& opt) {
  tss::TreeDescription td = resolve_tree(opt.tree_arg, opt.block);
  tss::GraphPartitionedMatrix g(td.tree, td.layout,
                                tss::load_csv_matrix(opt.matrix_path));
  tss::RankProfile profile = tss::hankel_rank_profile(g, opt.tol);
  const double c = opt.girs_c < 0 ? profile.max_rank() : opt.girs_c;
  tss::GirsReport report =
      tss::verify_girs(g, c, opt.samples, opt.seed, opt.tol);

  if (opt.format == "json") {
    std::cout << json{{"node_count", td.tree.node_count()},
                      {"profile", profile_to_json(profile)},
                      {"max_rank", profile.max_rank()},
                      {"total_rank", profile.total()},
                      {"girs",
                       {{"constant", report.constant},
                        {"max_ratio", report.max_ratio},
                        {"subsets_checked", report.subsets_checked},
                        {"violations", report.violations},
                        {"exhaustive", report.exhaustive}}}}
                     .dump()
              << "\n";
    return;
  }
  std::cout << "nodes: " << td.tree.node_count()
            << "  edges: " << td.tree.edge_count() << "\n";
  for (const auto& [e, rho] : profile.entries())
    std::cout << "  rho(" << e.from << "->" << e.to << ") = " << rho << "\n";
  std::cout << "max rank: " << profile.max_rank()
            << "  total: " << profile.total() << "\n";
  std::cout << "girs: c=" << report.constant
            << " max_ratio=" << report.max_ratio
            << " subsets=" << report.subsets_checked
            << " violations=" << report.violations
            << (report.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
}

void run_generate(const Options& opt) {
  tss::TreeDescription td = resolve_tree(opt.tree_arg, opt.block);
  Eigen::MatrixXd values;
  if (opt.kind == "dense") {
    values = tss::random_dense_matrix(td.tree, td.layout, opt.seed).values();
  } else if (opt.kind == "tree-sparse") {
    values = tss::tree_sparse_matrix(td.tree, td.layout, opt.seed).values();
  } else if (opt.kind == "tree-sparse-inverse") {
    values =
        tss::tree_sparse_inverse_matrix(td.tree, td.layout, opt.seed).values();
  } else if (opt.kind == "tss-dense") {
    values = tss::random_tss_dense_matrix(td.tree, td.layout, opt.rank,
                                          opt.seed)
                 .values();
  } else {
    throw tss::Error("unknown generate kind: " + opt.kind);
  }
  tss::save_csv_matrix(opt.out_path, values);
  if (opt.format == "text")
    std::cout << "wrote " << values.rows() << "x" << values.cols() << " "
              << opt.kind << " matrix to " << opt.out_path << "\n";
}

void run_bench(const Options& opt) {
  std::vector<int> sizes;
  std::size_t pos = 0;
  try {
    while (pos < opt.sizes_arg.size()) {
      std::size_t comma = opt.sizes_arg.find(',', pos);
      sizes.push_back(std::stoi(opt.sizes_arg.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::exception&) {
    throw tss::ParseError("bad --sizes list: " + opt.sizes_arg);
  }

  std::string csv =
      "nodes,total_dim,construct_seconds,matvec_seconds,solve_seconds,"
      "matvec_opcount,solve_multiply_adds\n";
  for (int size : sizes) {
    tss::TreeDescription td = resolve_tree(
        (opt.family == "hss" ? "hss:" : "line:") + std::to_string(size),
        opt.block);
    tss::GraphPartitionedMatrix g =
        tss::tree_sparse_matrix(td.tree, td.layout, opt.seed + size);
    const Eigen::MatrixXd& a = g.values();

    tss::TssMatrix t = tss::construct_tss(g, opt.tol);
    const double construct_s =
        best_seconds(3, [&] { tss::construct_tss(g, opt.tol); });

    tss::GaussianSource rng(opt.seed);
    const Eigen::VectorXd x = rng.vector(a.cols());
    const double matvec_s = best_seconds(5, [&] { tss::matvec(t, x); });

    const Eigen::VectorXd b = rng.vector(a.rows());
    tss::LiftedSolveStats stats;
    const double solve_s = best_seconds(3, [&] {
      tss::solve_lifted(tss::assemble_lifted(t, b), &stats);
    });

    char line[256];
    std::snprintf(line, sizeof(line), "%d,%d,%.6e,%.6e,%.6e,%lld,%lld\n",
                  td.tree.node_count(), static_cast<int>(a.rows()),
                  construct_s, matvec_s, solve_s,
                  static_cast<long long>(tss::matvec_opcount(t)),
                  static_cast<long long>(stats.multiply_adds));
    csv += line;
    if (opt.format == "text") std::cout << line;
  }
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) throw tss::Error("cannot open " + opt.out_path + " for writing");
    out << csv;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree semi-separable matrices: construct, apply, solve, analyze"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* construct =
      app.add_subcommand("construct", "build a TSS file from a dense CSV matrix");
  construct->add_option("--tree", opt.tree_arg, "tree JSON, line:K or hss:L")
      ->required();
  construct->add_option("--matrix", opt.matrix_path, "dense CSV input")
      ->required();
  construct->add_option("--out", opt.out_path, "TSS JSON output")->required();
  construct->add_option("--tol", opt.tol, "rank truncation tolerance");
  construct->add_option("--block", opt.block, "block size for tree descriptors");
  add_format(construct);
  construct->callback([&] { run_construct(opt); });

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "materialize a TSS file as dense CSV");
  reconstruct->add_option("--tss", opt.tss_path, "TSS JSON input")->required();
  reconstruct->add_option("--out", opt.out_path, "dense CSV output")->required();
  add_format(reconstruct);
  reconstruct->callback([&] { run_reconstruct(opt); });

  CLI::App* matvec = app.add_subcommand("matvec", "multiply a TSS matrix by a vector");
  matvec->add_option("--tss", opt.tss_path)->required();
  matvec->add_option("--x", opt.x_path, "input vector CSV")->required();
  matvec->add_option("--out", opt.out_path, "output vector CSV")->required();
  matvec->callback([&] { run_matvec(opt); });

  CLI::App* solve = app.add_subcommand("solve", "solve T x = b");
  solve->add_option("--tss", opt.tss_path)->required();
  solve->add_option("--b", opt.b_path, "right hand side CSV")->required();
  solve->add_option("--out", opt.out_path, "solution CSV")->required();
  solve->add_flag("--fallback-dense", opt.fallback_dense,
                  "fall back to a dense solve if block pivoting fails");
  solve->callback([&] { run_solve(opt); });

  CLI::App* analyze =
      app.add_subcommand("analyze", "rank profile and low-rank structure report");
  analyze->add_option("--tree", opt.tree_arg)->required();
  analyze->add_option("--matrix", opt.matrix_path)->required();
  analyze->add_option("--tol", opt.tol);
  analyze->add_option("--block", opt.block);
  analyze->add_option("--girs-c", opt.girs_c,
                      "rank bound constant (default: profile max rank)");
  analyze->add_option("--samples", opt.samples, "random subsets when not exhaustive");
  analyze->add_option("--seed", opt.seed);
  add_format(analyze);
  analyze->callback([&] { run_analyze(opt); });

  CLI::App* generate = app.add_subcommand("generate", "write a test matrix as CSV");
  generate->add_option("--kind", opt.kind,
                       "dense | tree-sparse | tree-sparse-inverse | tss-dense");
  generate->add_option("--tree", opt.tree_arg)->required();
  generate->add_option("--block", opt.block);
  generate->add_option("--rank", opt.rank, "edge rank for tss-dense");
  generate->add_option("--seed", opt.seed);
  generate->add_option("--out", opt.out_path)->required();
  add_format(generate);
  generate->callback([&] { run_generate(opt); });

  CLI::App* bench = app.add_subcommand("bench", "time construct/matvec/solve");
  bench->add_option("--family", opt.family, "line or hss")
      ->check(CLI::IsMember({"line", "hss"}));
  bench->add_option("--sizes", opt.sizes_arg, "comma separated node/leaf counts");
  bench->add_option("--block", opt.block);
  bench->add_option("--seed", opt.seed);
  bench->add_option("--tol", opt.tol);
  bench->add_option("--out", opt.out_path, "CSV report path");
  add_format(bench);
  bench->callback([&] { run_bench(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const tss::Error& e) {
    std::cerr << json{{"error", error_name(e)}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", error_name(e)}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
